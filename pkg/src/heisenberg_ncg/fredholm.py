"""Fredholm modules as finite matrix truncations, indices and trace pairings.

Odd modules live on l2(Z) with the symmetry F = sign(n).  Index pairings
compress the represented unitary to the nonnegative half line and count
kernel dimensions.  A square truncation of a Toeplitz operator always has
matrix index zero, so the compressions used here are rectangular: the
domain window is [0, N] and the range window [0, N + margin], with the
margin exceeding the band width of the operator.  The adjoint side is the
compression of the represented star of the unitary on the same shape.

Shift convention: "the shift" S is the operator (S xi)(n) = xi(n+1), whose
matrix moves e_n to e_{n-1}.  With this convention the compression of S to
the half line has a one-dimensional kernel (e_0) while its star is
injective, so Index(ESE) = +1, matching the index values all the module
pairings below are normalized to.

Even modules over the scalar representation live on C^2 (doubled per
matrix ampliation) and their pairings are evaluated by the finite trace
formula (-1)^n Tr(gamma pi(p) [F, pi(p)]^{2n}), which is exact there.
The two-dimensional graded modules (the torus Dirac phase operator and the
boundary image of the first odd torus module share one representation) are
handled in the companion module that evaluates Dirac pairings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence, Union

import numpy as np

from .algebra import AlgebraElement, apply_automorphism

SpecName = Literal[
    "z0", "z1", "z1prime", "w0", "w1", "w1prime", "dirac_T2", "del1_w1", "del0_w0"
]

# Generator actions for the odd l2(Z) modules: which generators act by the
# shift; all others act by the identity.
_ODD_SHIFT_GEN: dict[str, str] = {
    "z1": "U",
    "z1prime": "V",
    "w1": "U",
    "w1prime": "W",
    "del0_w0": "V",
}

_EVEN_SCALAR = {"z0", "w0"}
_EVEN_GRADED = {"dirac_T2", "del1_w1"}


@dataclass(frozen=True)
class FredholmModuleSpec:
    name: str
    parity: Literal["even", "odd"]
    base_space: Literal["C2", "l2Z", "l2Z2_pair"]
    truncation: int


def module_spec(name: str, truncation: int = 64) -> FredholmModuleSpec:
    if name in _ODD_SHIFT_GEN:
        return FredholmModuleSpec(name, "odd", "l2Z", truncation)
    if name in _EVEN_SCALAR:
        return FredholmModuleSpec(name, "even", "C2", truncation)
    if name in _EVEN_GRADED:
        return FredholmModuleSpec(name, "even", "l2Z2_pair", truncation)
    raise ValueError(f"unknown module name: {name!r}")


@dataclass(frozen=True)
class TruncatedOperator:
    """A finite compression of a represented element.

    ``window`` records (domain_size, range_size) of the rectangular
    compression; ``entries`` is the matrix of the operator and
    ``star_entries`` the compression of the represented star on the same
    shape (not the matrix adjoint: compressions do not commute with
    adjoints on the nose).
    """

    window: tuple[int, int]
    entries: np.ndarray
    star_entries: np.ndarray | None = None


MatrixElement = Union[AlgebraElement, Sequence[Sequence[AlgebraElement]]]


def _as_blocks(x: MatrixElement) -> list[list[AlgebraElement]]:
    if isinstance(x, AlgebraElement):
        return [[x]]
    return [list(row) for row in x]


def _odd_symbol(spec: FredholmModuleSpec, x: AlgebraElement) -> dict[int, complex]:
    """Laurent symbol of pi(x) on l2(Z): mapping shift power -> coefficient.

    The distinguished generator acts by the shift, the others by the
    identity, so a monomial U^p V^q W^r acts as the shift to the power of
    the distinguished exponent.
    """
    gen = _ODD_SHIFT_GEN[spec.name]
    out: dict[int, complex] = {}
    for (p, q, r), c in x.terms.items():
        k = {"U": p, "V": q, "W": r}[gen]
        out[k] = out.get(k, 0j) + c.to_complex()
    return out


def _laurent_matrix(symbol: dict[int, complex], rows: int, cols: int) -> np.ndarray:
    """Matrix of sum_k c_k S^k compressed to range [0, rows), domain [0, cols).

    S is the co-shift matrix e_n -> e_{n-1}, so S^k has ones on the k-th
    superdiagonal: (S^k)[i, j] = 1 iff i = j - k.
    """
    m = np.zeros((rows, cols), dtype=complex)
    for k, c in symbol.items():
        for j in range(max(0, k), min(cols, rows + k)):
            m[j - k, j] += c
    return m


def build_representation(
    spec: FredholmModuleSpec, x: MatrixElement, margin: int | None = None
) -> TruncatedOperator:
    """Rectangular half-line compression of pi(x) (odd specs).

    For block-matrix arguments the blocks are assembled diagonally per
    entry.  The margin defaults to the band width of the symbol plus two.
    """
    if spec.parity != "odd":
        raise ValueError("build_representation compresses odd modules; use "
                         "even_pairing_trace for even modules")
    blocks = _as_blocks(x)
    star_blocks = [
        [blocks[j][i].star() for j in range(len(blocks))]
        for i in range(len(blocks[0]))
    ]
    symbols = [[_odd_symbol(spec, e) for e in row] for row in blocks]
    star_symbols = [[_odd_symbol(spec, e) for e in row] for row in star_blocks]

    band = 0
    for row in symbols + star_symbols:
        for s in row:
            if s:
                band = max(band, max(abs(k) for k in s))
    if margin is None:
        margin = band + 2
    n_dom = spec.truncation + 1
    n_rng = spec.truncation + 1 + margin
    if spec.truncation < band + 2:
        raise ValueError("truncation window too small for the support")

    def assemble(sym):
        brows = []
        for row in sym:
            brows.append([_laurent_matrix(s, n_rng, n_dom) for s in row])
        return np.block(brows)

    return TruncatedOperator(
        window=(n_dom, n_rng),
        entries=assemble(symbols),
        star_entries=assemble(star_symbols),
    )


def _kernel_dim(m: np.ndarray, tol: float) -> int:
    sv = np.linalg.svd(m, compute_uv=False)
    cols = m.shape[1]
    return int(cols - np.count_nonzero(sv > tol))


def fredholm_index(
    ops: Sequence[TruncatedOperator], tol: float = 1e-8
) -> int:
    """dim ker T - dim ker T* with a stabilization certificate.

    Every supplied truncation must report the same kernel dimensions;
    otherwise the computation is rejected as non-stabilized.
    """
    if len(ops) < 2:
        raise ValueError("need at least two truncation sizes for stabilization")
    values = []
    for op in ops:
        if op.star_entries is None:
            raise ValueError("operator carries no star compression")
        values.append(_kernel_dim(op.entries, tol) - _kernel_dim(op.star_entries, tol))
    if len(set(values)) != 1:
        raise ArithmeticError(f"index did not stabilize across truncations: {values}")
    return values[0]


def _check_unitary(x: MatrixElement) -> None:
    blocks = _as_blocks(x)
    k = len(blocks)
    prod_rows = [[AlgebraElement.zero() for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            acc = AlgebraElement.zero()
            for t in range(k):
                acc = acc + blocks[i][t] * blocks[j][t].star()
            prod_rows[i][j] = acc
    for i in range(k):
        for j in range(k):
            expected = AlgebraElement.one() if i == j else AlgebraElement.zero()
            if prod_rows[i][j] != expected:
                raise ValueError("input is not unitary in the group ring")


def odd_pairing(
    spec_name: str,
    u: MatrixElement,
    truncations: Sequence[int] = (32, 64, 128),
    tol: float = 1e-8,
) -> int:
    """Index pairing of an odd module with a unitary (or matrix unitary)."""
    _check_unitary(u)
    ops = [build_representation(module_spec(spec_name, n), u) for n in truncations]
    return fredholm_index(ops, tol)


def even_pairing_trace(
    spec_name: str,
    p: MatrixElement,
    n_commutators: int = 2,
) -> int:
    """Trace-formula pairing for the scalar even modules (z0, w0).

    The representation is psi + 0 on C^2 with psi killing all generator
    exponents (every generator maps to 1), amplified over matrix entries.
    The formula (-1)^n Tr(gamma pi(p) [F, pi(p)]^{2n}) is exact on this
    finite-dimensional space.  For the graded two-dimensional modules use
    the Dirac evaluation engine; the only projections this routine accepts
    there are those commuting with F, for which the pairing vanishes.
    """
    if n_commutators < 1 or n_commutators % 2 != 0:
        raise ValueError("n_commutators must be a positive even integer")
    spec = module_spec(spec_name)
    blocks = _as_blocks(p)
    k = len(blocks)

    # exact projection check (p = p* = p^2) in the group ring
    star = [[blocks[j][i].star() for j in range(k)] for i in range(k)]
    square = [
        [
            sum(
                (blocks[i][t] * blocks[t][j] for t in range(k)),
                AlgebraElement.zero(),
            )
            for j in range(k)
        ]
        for i in range(k)
    ]
    for i in range(k):
        for j in range(k):
            if blocks[i][j] != star[i][j] or blocks[i][j] != square[i][j]:
                raise ValueError("input is not a projection in the group ring")

    def scalar(e: AlgebraElement) -> complex:
        return sum(c.to_complex() for c in e.terms.values())

    psi = np.array([[scalar(blocks[i][j]) for j in range(k)] for i in range(k)])

    if spec.name in _EVEN_SCALAR:
        dim = 2 * k
        pi_p = np.zeros((dim, dim), dtype=complex)
        pi_p[:k, :k] = psi
        F = np.block([
            [np.zeros((k, k)), np.eye(k)],
            [np.eye(k), np.zeros((k, k))],
        ]).astype(complex)
        gamma = np.block([
            [np.eye(k), np.zeros((k, k))],
            [np.zeros((k, k)), -np.eye(k)],
        ]).astype(complex)
        comm = F @ pi_p - pi_p @ F
        # n_commutators = 2n counts the commutator factors in the formula
        # (-1)^n Tr(gamma pi(p) [F, pi(p)]^{2n}).
        n = n_commutators // 2
        val = ((-1) ** n) * np.trace(
            gamma @ pi_p @ np.linalg.matrix_power(comm, n_commutators)
        )
        out = float(np.real(val))
        if abs(out - round(out)) > 1e-9:
            raise ArithmeticError("trace pairing did not evaluate to an integer")
        return int(round(out))

    if spec.name in _EVEN_GRADED:
        # The graded torus modules: a projection whose represented matrix
        # is constant across the lattice commutes with the diagonal phase
        # operator, so the pairing vanishes identically.  Constant here
        # means every block is a scalar multiple of the identity of the
        # ring (Fourier support at the origin after the symbol map).
        for i in range(k):
            for j in range(k):
                supp = blocks[i][j].support()
                if supp and supp != [(0, 0, 0)]:
                    raise ValueError(
                        "graded-module trace route only covers projections "
                        "commuting with the symmetry; use the Dirac engine "
                        "for nonconstant projector fields"
                    )
        return 0

    raise ValueError(f"{spec_name} is not an even module")


def unitary_equivalence_check(truncation: int = 12, seed: int = 0) -> dict:
    """Interior verification that conjugation by T0 e_{m,n} = e_{m,n-m}
    intertwines the doubled-torus representation with its automorphism
    twist: T0* pi(a) T0 = pi(alpha(a)) for a in the algebra of U and W.

    Works entirely with exact index arithmetic on basis vectors: pi(U)
    shifts m, pi(W) shifts n, so both sides are permutation operators and
    equality is checked cell by cell away from the window boundary.
    """
    N = truncation
    rng = np.random.default_rng(seed)

    def pi_action(p: int, r: int, m: int, n: int) -> tuple[int, int]:
        # pi(U^p W^r) e_{m,n} = e_{m+p, n+r}
        return (m + p, n + r)

    def conjugated(p: int, r: int, m: int, n: int) -> tuple[int, int]:
        # T0 e_{m,n} = e_{m, n-m}; T0* e_{m,n} = e_{m, n+m}
        m1, n1 = m, n - m
        m2, n2 = pi_action(p, r, m1, n1)
        return (m2, n2 + m2)

    words = [(1, 0), (0, 1)]
    for _ in range(4):
        words.append((int(rng.integers(-3, 4)), int(rng.integers(-3, 4))))

    checks = []
    for (p, r) in words:
        ok = True
        for m in range(-N, N + 1):
            for n in range(-N, N + 1):
                lhs = conjugated(p, r, m, n)
                # alpha(U^p W^r) = U^p W^{r+p}
                rhs = pi_action(p, r + p, m, n)
                if lhs != rhs:
                    ok = False
        checks.append({"word": {"p": p, "r": r}, "exact": ok})
    return {"passed": all(c["exact"] for c in checks), "checks": checks}


def representation_relation_check(spec_name: str, truncation: int = 16) -> dict:
    """Interior check that the compressed representation respects VU = WUV."""
    from .algebra import U, V, W

    spec = module_spec(spec_name, truncation)
    lhs = build_representation(spec, V * U)
    rhs = build_representation(spec, W * U * V)
    diff = np.max(np.abs(lhs.entries - rhs.entries))
    return {"passed": bool(diff < 1e-12), "max_difference": float(diff)}


def automorphism_operator_identities(truncation: int = 16) -> dict:
    """Operator-level identities for the torus modules under the twist:
    the first module does not see the twist of U, the second sends the
    twist of U to the image of W."""
    from .algebra import U, W

    w1 = module_spec("w1", truncation)
    w1p = module_spec("w1prime", truncation)
    aU = apply_automorphism(U)
    t1 = build_representation(w1, aU)
    t2 = build_representation(w1, U)
    t3 = build_representation(w1p, aU)
    t4 = build_representation(w1p, W)
    return {
        "w1_alphaU_equals_U": bool(np.array_equal(t1.entries, t2.entries)),
        "w1prime_alphaU_equals_W": bool(np.array_equal(t3.entries, t4.entries)),
    }
