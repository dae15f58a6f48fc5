"""Derivations of the Heisenberg group ring and their decomposition.

A derivation of C[H3] is determined by the images dU = d(U) and dV = d(V);
the image of the central generator W is forced to vanish.  Writing

    d(U) = sum a_{p,q,r} U^p V^q W^r,    d(V) = sum b_{p,q,r} U^p V^q W^r,

the Leibniz rule applied to the relation VU = WUV forces, for all p, q, r,

    (b_{p,q+1,r-1} - b_{p,q+1,r+q-1}) + (a_{p+1,q,r-p+q-1} - a_{p+1,q,r+q-1}) = 0

together with the axis conditions a_{p,0,r} = 0 for p != 1 and
b_{0,q,r} = 0 for q != 1 (these follow from the relation plus finite
support, but are reported separately for diagnostics).

Every consistent derivation splits uniquely as

    d = z1 * d1 + z2 * d2 + [., x]

with z1, z2 central (Laurent polynomials in W), d1, d2 the canonical
derivations d1(U) = U, d2(V) = V, and x normalized to have no W-axis terms.
The inner part x is recovered cell by cell through telescoping sums over
the coefficients of dU (step q) or dV (step p), and the result is verified
by exact reconstruction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .algebra import (
    GR_ZERO,
    AlgebraElement,
    GaussianRational,
    Key,
    U,
    V,
    W,
    element_from_dict,
    element_to_dict,
    is_central,
    random_element,
)


@dataclass(frozen=True)
class Derivation:
    """A derivation given by its generator images; d(W) = 0 always."""

    dU: AlgebraElement
    dV: AlgebraElement

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.dU + other.dU, self.dV + other.dV)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.dU - other.dU, self.dV - other.dV)

    def is_zero(self) -> bool:
        return self.dU.is_zero() and self.dV.is_zero()


@dataclass(frozen=True)
class Violation:
    kind: Literal["axis-a", "axis-b", "relation"]
    cell: Key


@dataclass(frozen=True)
class ConsistencyReport:
    passed: bool
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class DecompositionResult:
    z1: AlgebraElement
    z2: AlgebraElement
    x: AlgebraElement


def canonical_derivation(which: int) -> Derivation:
    """The two canonical outer derivations: d1(U) = U, d2(V) = V."""
    if which == 1:
        return Derivation(U, AlgebraElement.zero())
    if which == 2:
        return Derivation(AlgebraElement.zero(), V)
    raise ValueError("which must be 1 or 2")


def inner_derivation(x: AlgebraElement) -> Derivation:
    """The commutator derivation a -> [a, x] = ax - xa."""
    return Derivation(U * x - x * U, V * x - x * V)


def check_consistency(d: Derivation) -> ConsistencyReport:
    """Verify the coefficient relation forced by VU = WUV and the axis rules."""
    a = d.dU.terms
    b = d.dV.terms
    violations: list[Violation] = []

    for (p, q, r) in sorted(a):
        if q == 0 and p != 1:
            violations.append(Violation("axis-a", (p, q, r)))
    for (p, q, r) in sorted(b):
        if p == 0 and q != 1:
            violations.append(Violation("axis-b", (p, q, r)))

    # The relation at (p, q, r) references b_{p,q+1,*} and a_{p+1,q,*}; it can
    # only fail where one of the four terms is supported.
    cells: set[Key] = set()
    for (P, Q, R) in a:
        # R = r + q - 1 or R = r - p + q - 1 with p = P - 1, q = Q
        cells.add((P - 1, Q, R - Q + 1))
        cells.add((P - 1, Q, R + (P - 1) - Q + 1))
    for (P, Q, R) in b:
        # R = r - 1 or R = r + q - 1 with q = Q - 1
        cells.add((P, Q - 1, R + 1))
        cells.add((P, Q - 1, R - (Q - 1) + 1))

    def av(p, q, r):
        return a.get((p, q, r), GR_ZERO)

    def bv(p, q, r):
        return b.get((p, q, r), GR_ZERO)

    for (p, q, r) in sorted(cells):
        lhs = (
            bv(p, q + 1, r - 1)
            - bv(p, q + 1, r + q - 1)
            + av(p + 1, q, r - p + q - 1)
            - av(p + 1, q, r + q - 1)
        )
        if not lhs.is_zero():
            violations.append(Violation("relation", (p, q, r)))

    return ConsistencyReport(not violations, tuple(violations))


def _power_image(gen: AlgebraElement, dgen: AlgebraElement, n: int) -> AlgebraElement:
    """d(gen^n) from d(gen) via Leibniz; n may be negative.

    Uses d(g^{-1}) = -g^{-1} d(g) g^{-1} for the downward direction.
    """
    if n == 0:
        return AlgebraElement.zero()
    if n > 0:
        out = dgen
        power = gen
        for _ in range(n - 1):
            out = out * gen + power * dgen
            power = power * gen
        return out
    ginv = gen.star()  # generators are unitary monomials
    dginv = (-(ginv * dgen)) * ginv
    return _power_image(ginv, dginv, -n)


def apply(d: Derivation, x: AlgebraElement) -> AlgebraElement:
    """Extend d to the whole group ring by linearity and the Leibniz rule."""
    report = check_consistency(d)
    if not report.passed:
        raise ValueError(
            "derivation fails the consistency relation; Leibniz extension "
            f"is ill-defined ({len(report.violations)} violating cells)"
        )
    out = AlgebraElement.zero()
    for (p, q, r), c in x.terms.items():
        up = AlgebraElement.monomial(p, 0, 0)
        vq = AlgebraElement.monomial(0, q, 0)
        wr = AlgebraElement.monomial(0, 0, r)
        dup = _power_image(U, d.dU, p)
        dvq = _power_image(V, d.dV, q)
        # d(W^r) = 0, so only two Leibniz terms survive.
        term = dup * vq * wr + up * dvq * wr
        out = out + term.scale(c)
    return out


def _column(x: AlgebraElement, p: int, q: int) -> dict[int, GaussianRational]:
    return {r: c for (pp, qq, r), c in x.terms.items() if pp == p and qq == q}


def _telescope(
    column: dict[int, GaussianRational], r: int, step: int, route: str
) -> GaussianRational:
    """The telescoping sum defining the inner-part coefficient at height r.

    ``column`` holds the source coefficients (a_{p+1,q,*} for the a-route,
    b_{p,q+1,*} for the b-route) and ``step`` the nonzero index step (q for
    the a-route, p for the b-route).  The four sign cases per route collapse
    to sums upward (r >= 0 references heights > r or >= r) and downward
    (r < 0), with signs fixed so that reconstruction is exact.
    """
    if not column:
        return GR_ZERO
    rmin, rmax = min(column), max(column)
    total = GR_ZERO

    def add_range(start: int, sign: int, stride: int):
        nonlocal total
        rr = start
        if stride > 0:
            while rr <= rmax:
                c = column.get(rr)
                if c is not None:
                    total = total + (c if sign > 0 else -c)
                rr += stride
        else:
            while rr >= rmin:
                c = column.get(rr)
                if c is not None:
                    total = total + (c if sign > 0 else -c)
                rr += stride

    if route == "a":
        # source coefficients a_{p+1,q,*}, step q
        qq = step
        if r >= 0:
            if qq > 0:
                add_range(r + qq, -1, qq)
            else:
                add_range(r, +1, -qq)
        else:
            if qq > 0:
                add_range(r, +1, -qq)
            else:
                add_range(r + qq, -1, qq)
    elif route == "b":
        # source coefficients b_{p,q+1,*}, step p
        pp = step
        if r >= 0:
            if pp > 0:
                add_range(r + pp, +1, pp)
            else:
                add_range(r, -1, -pp)
        else:
            if pp > 0:
                add_range(r, -1, -pp)
            else:
                add_range(r + pp, +1, pp)
    else:
        raise ValueError("route must be 'a' or 'b'")
    return total


def inner_coefficient(
    d: Derivation, p: int, q: int, r: int, route: str
) -> GaussianRational:
    """Coefficient alpha_{p,q,r} of the inner part, via one of the two routes.

    The a-route telescopes the dU coefficients with step q (valid for
    q != 0); the b-route telescopes the dV coefficients with step p (valid
    for p != 0).  On interior cells (p != 0 and q != 0) both routes agree
    for consistent derivations.
    """
    if route == "a":
        if q == 0:
            raise ValueError("a-route requires q != 0")
        return _telescope(_column(d.dU, p + 1, q), r, q, "a")
    if route == "b":
        if p == 0:
            raise ValueError("b-route requires p != 0")
        return _telescope(_column(d.dV, p, q + 1), r, p, "b")
    raise ValueError("route must be 'a' or 'b'")


def compose_from_parts(
    z1: AlgebraElement, z2: AlgebraElement, x: AlgebraElement
) -> Derivation:
    """Build z1*d1 + z2*d2 + [., x]; z1 and z2 must be central."""
    if not is_central(z1) or not is_central(z2):
        raise ValueError("z1 and z2 must be central (W-axis) elements")
    inner = inner_derivation(x)
    return Derivation(z1 * U + inner.dU, z2 * V + inner.dV)


def decompose(d: Derivation) -> DecompositionResult:
    """Split a consistent derivation into canonical and inner parts.

    Returns (z1, z2, x) with z1 = sum_r a_{1,0,r} W^r, z2 = sum_r b_{0,1,r} W^r,
    and x the inner part normalized by alpha_{0,0,r} = 0.  Raises if the
    input is inconsistent or if the exact reconstruction check fails.
    """
    report = check_consistency(d)
    if not report.passed:
        raise ValueError("cannot decompose an inconsistent derivation")

    z1 = AlgebraElement({(0, 0, r): c for r, c in _column(d.dU, 1, 0).items()})
    z2 = AlgebraElement({(0, 0, r): c for r, c in _column(d.dV, 0, 1).items()})

    # Candidate (p, q) cells of x and the r-window that could be populated.
    x_terms: dict[Key, GaussianRational] = {}
    cells: set[tuple[int, int]] = set()
    r_bounds: dict[tuple[int, int], tuple[int, int]] = {}

    def note(p, q, r):
        if (p, q) == (0, 0):
            return
        cells.add((p, q))
        lo, hi = r_bounds.get((p, q), (r, r))
        r_bounds[(p, q)] = (min(lo, r), max(hi, r))

    for (P, Q, R) in d.dU.support():
        # a_{P,Q,R} feeds alpha at (P-1, Q, *)
        note(P - 1, Q, R)
    for (P, Q, R) in d.dV.support():
        note(P, Q - 1, R)

    for (p, q) in sorted(cells):
        lo, hi = r_bounds[(p, q)]
        span = max(abs(q), abs(p), 1)
        # Telescopes only reach heights between the source support and 0,
        # so the candidate window must always include 0.
        for r in range(min(lo, 0) - span, max(hi, 0) + span + 1):
            if q != 0:
                c = inner_coefficient(d, p, q, r, "a")
            else:
                c = inner_coefficient(d, p, q, r, "b")
            if not c.is_zero():
                x_terms[(p, q, r)] = c

    x = AlgebraElement(x_terms)
    result = DecompositionResult(z1=z1, z2=z2, x=x)

    rebuilt = compose_from_parts(z1, z2, x)
    if rebuilt.dU != d.dU or rebuilt.dV != d.dV:
        raise ArithmeticError("decomposition reconstruction mismatch")
    return result


# ---- serialization ----


def derivation_to_dict(d: Derivation) -> dict:
    return {"dU": element_to_dict(d.dU), "dV": element_to_dict(d.dV)}


def derivation_from_dict(data) -> Derivation:
    return Derivation(
        element_from_dict(data["dU"]), element_from_dict(data["dV"])
    )


def decomposition_to_dict(res: DecompositionResult) -> dict:
    return {
        "z1": element_to_dict(res.z1),
        "z2": element_to_dict(res.z2),
        "x": element_to_dict(res.x),
    }


def random_consistent_derivation(
    rng: np.random.Generator, box: int = 5, n_terms: int = 3
) -> Derivation:
    """A random consistent derivation built from random (z1, z2, x) parts."""
    z1 = AlgebraElement(
        {(0, 0, int(r)): int(c) for r, c in zip(
            rng.integers(-box, box + 1, size=2),
            rng.integers(-4, 5, size=2),
        )}
    )
    z2 = AlgebraElement(
        {(0, 0, int(r)): int(c) for r, c in zip(
            rng.integers(-box, box + 1, size=2),
            rng.integers(-4, 5, size=2),
        )}
    )
    x = random_element(rng, box=box, n_terms=n_terms)
    # Normalize: the W-axis part of x acts trivially in commutators anyway.
    x = AlgebraElement(
        {k: c for k, c in x.terms.items() if (k[0], k[1]) != (0, 0)}
    )
    return compose_from_parts(z1, z2, x)
