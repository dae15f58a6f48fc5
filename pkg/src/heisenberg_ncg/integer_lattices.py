"""Exact integer linear algebra: Smith-style diagonalization over Z.

Provides kernel bases, integer image membership and lattice comparison for
integer matrices, which is what exactness checking of six-term sequences
needs.  All matrices use numpy object dtype so arithmetic stays exact for
arbitrarily large intermediate entries.
"""

from __future__ import annotations

import numpy as np


def as_int_matrix(rows) -> np.ndarray:
    a = np.array(rows, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a 2-D integer matrix")
    return a


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x*a + y*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_x, x = x, old_x - qq * x
        old_y, y = y, old_y - qq * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def smith_diagonalize(A: np.ndarray):
    """Diagonalize A over Z with unimodular transforms.

    Returns (L, D, R) with D = L @ A @ R diagonal (not necessarily with
    divisibility along the diagonal, which the lattice computations here do
    not need), and L, R unimodular.
    """
    A = as_int_matrix(A)
    m, n = A.shape
    D = A.copy()
    L = np.eye(m, dtype=object)
    R = np.eye(n, dtype=object)

    def clear_col(i) -> bool:
        changed = False
        for j in range(i + 1, m):
            if D[j, i] == 0:
                continue
            if D[i, i] != 0 and D[j, i] % D[i, i] == 0:
                f = D[j, i] // D[i, i]
                D[j] = D[j] - f * D[i]
                L[j] = L[j] - f * L[i]
                changed = True
                continue
            g, x, y = _exgcd(int(D[i, i]), int(D[j, i]))
            u, v = int(D[i, i]) // g, int(D[j, i]) // g
            ri, rj = D[i].copy(), D[j].copy()
            D[i] = x * ri + y * rj
            D[j] = -v * ri + u * rj
            li, lj = L[i].copy(), L[j].copy()
            L[i] = x * li + y * lj
            L[j] = -v * li + u * lj
            changed = True
        return changed

    def clear_row(i) -> bool:
        changed = False
        for j in range(i + 1, n):
            if D[i, j] == 0:
                continue
            if D[i, i] != 0 and D[i, j] % D[i, i] == 0:
                f = D[i, j] // D[i, i]
                D[:, j] = D[:, j] - f * D[:, i]
                R[:, j] = R[:, j] - f * R[:, i]
                changed = True
                continue
            g, x, y = _exgcd(int(D[i, i]), int(D[i, j]))
            u, v = int(D[i, i]) // g, int(D[i, j]) // g
            ci, cj = D[:, i].copy(), D[:, j].copy()
            D[:, i] = x * ci + y * cj
            D[:, j] = -v * ci + u * cj
            ri, rj = R[:, i].copy(), R[:, j].copy()
            R[:, i] = x * ri + y * rj
            R[:, j] = -v * ri + u * rj
            changed = True
        return changed

    for i in range(min(m, n)):
        while True:
            c1 = clear_col(i)
            c2 = clear_row(i)
            if not (c1 or c2):
                break
    return L, D, R


def kernel_basis(A: np.ndarray) -> np.ndarray:
    """Columns form a Z-basis of the integer kernel of A."""
    A = as_int_matrix(A)
    _, D, R = smith_diagonalize(A)
    m, n = A.shape
    cols = [j for j in range(n) if j >= m or D[j, j] == 0]
    if not cols:
        return np.zeros((n, 0), dtype=object)
    return R[:, cols]


def solve_in_image(A: np.ndarray, x) -> bool:
    """Whether x is in the integer column span of A."""
    A = as_int_matrix(A)
    x = np.array(x, dtype=object).reshape(-1)
    L, D, _ = smith_diagonalize(A)
    y = L @ x
    m, n = A.shape
    for i in range(m):
        d = D[i, i] if i < n else 0
        if d == 0:
            if y[i] != 0:
                return False
        elif y[i] % d != 0:
            return False
    return True


def lattice_contained(B1: np.ndarray, B2: np.ndarray) -> bool:
    """Whether the column lattice of B1 is contained in that of B2."""
    B1 = as_int_matrix(B1)
    return all(solve_in_image(B2, B1[:, j]) for j in range(B1.shape[1]))


def lattices_equal(B1: np.ndarray, B2: np.ndarray) -> bool:
    return lattice_contained(B1, B2) and lattice_contained(B2, B1)


def image_equals_kernel(A_in: np.ndarray, A_out: np.ndarray) -> dict:
    """Exactness at the middle node of A_in followed by A_out.

    Checks that the composition vanishes (image inside kernel) and that
    every kernel basis vector lies in the integer image of A_in.
    """
    A_in = as_int_matrix(A_in)
    A_out = as_int_matrix(A_out)
    comp = A_out @ A_in
    comp_zero = bool((comp == 0).all())
    ker = kernel_basis(A_out)
    ker_in_im = lattice_contained(ker, A_in)
    return {
        "composition_zero": comp_zero,
        "kernel_in_image": ker_in_im,
        "exact": comp_zero and ker_in_im,
    }
