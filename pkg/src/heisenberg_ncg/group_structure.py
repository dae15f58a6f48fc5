"""Conjugacy, centralizers and cohomological invariants for H3.

Conjugating U^p V^q W^r by U^x V^y W^z shifts the W-exponent by y*p - x*q,
which ranges over the multiples of k = gcd(p, q).  Conjugacy classes of
noncentral elements are therefore labelled by (p, q, r mod k), and the
centralizer of a noncentral element is {h : q * p_h = p * q_h}, a copy of
Z^2 (spanned by a primitive vector over (p, q) together with the centre).

The quotient N_g of the centralizer by the cyclic group generated by g is
computed case by case, and each isomorphism type carries a known group
cohomology profile with complex coefficients.  Summing the identity-class
profile over degrees n - 2j gives the finite-rank part of the cyclic
cohomology of the group ring; the countably many nontrivial conjugacy
classes contribute a product factor in degrees <= 2 only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .algebra import GroupElement, group_mul


@dataclass(frozen=True)
class CentralizerReport:
    case: str  # Case1 | Case2 | Case3 | Case4a | Case4b | Identity
    k: int
    p_prime: int
    q_prime: int
    s_k: int
    l: int
    ng_type: str  # Z | ZxZl(l) | Z2 | CentralExtension(m) | H3

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "k": self.k,
            "p_prime": self.p_prime,
            "q_prime": self.q_prime,
            "s_k": self.s_k,
            "l": self.l,
            "ng_type": self.ng_type,
        }


@dataclass(frozen=True)
class CohomologyProfile:
    dims: tuple[int, ...]

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n < len(self.dims) else 0

    def to_dict(self) -> dict:
        return {"dims": list(self.dims)}


@dataclass(frozen=True)
class CyclicDimReport:
    degree: int
    finite_rank: int
    countable_factor: bool

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "finite_rank": self.finite_rank,
            "countable_factor": self.countable_factor,
        }


def hcf(a: int, b: int) -> int:
    """Positive gcd with hcf(a, 0) = |a|."""
    return gcd(abs(a), abs(b))


def _ng_label(l: int) -> str:
    # Z x Z_1 collapses to Z.
    return "Z" if l == 1 else f"ZxZl({l})"


def classify_element(g: GroupElement) -> CentralizerReport:
    """Closed-form centralizer / quotient classification of a group element."""
    p, q, r = g.p, g.q, g.r
    if g.is_identity():
        return CentralizerReport("Identity", 0, 0, 0, 0, 0, "H3")
    if p == 0 and q == 0:
        if abs(r) == 1:
            return CentralizerReport("Case4a", 0, 0, 0, 0, 0, "Z2")
        return CentralizerReport(
            "Case4b", 0, 0, 0, 0, abs(r), f"CentralExtension({abs(r)})"
        )
    if q == 0:
        l = hcf(p, r)
        return CentralizerReport("Case2", abs(p), p // abs(p), 0, 0, l, _ng_label(l))
    if p == 0:
        l = hcf(q, r)
        return CentralizerReport("Case3", abs(q), 0, q // abs(q), 0, l, _ng_label(l))
    k = hcf(p, q)
    p_prime, q_prime = p // k, q // k
    s_k = p_prime * q_prime * k * (k - 1) // 2
    l = hcf(k, r - s_k)
    return CentralizerReport("Case1", k, p_prime, q_prime, s_k, l, _ng_label(l))


def commutes(g: GroupElement, h: GroupElement) -> bool:
    return group_mul(g, h) == group_mul(h, g)


def centralizer_membership(g: GroupElement, h: GroupElement) -> bool:
    """Closed-form membership predicate for the centralizer of g."""
    if g.is_central():
        return True
    return g.q * h.p == h.q * g.p


def conjugacy_representative(g: GroupElement) -> GroupElement:
    """Canonical representative (p, q, r mod gcd(p, q)); central elements
    are singleton classes."""
    if g.is_central():
        return g
    k = hcf(g.p, g.q)
    return GroupElement(g.p, g.q, g.r % k)


def brute_force_centralizer(g: GroupElement, box: int) -> list[GroupElement]:
    """All h with coordinates in [-box, box] commuting with g."""
    if box > 12:
        raise ValueError("box larger than 12 is not supported")
    out = []
    for p in range(-box, box + 1):
        for q in range(-box, box + 1):
            for r in range(-box, box + 1):
                h = GroupElement(p, q, r)
                if commutes(g, h):
                    out.append(h)
    return out


_ZXZL = re.compile(r"^ZxZl\((\d+)\)$")
_CEXT = re.compile(r"^CentralExtension\((\d+)\)$")


def group_cohomology(t: str) -> CohomologyProfile:
    """Complex-coefficient group cohomology profile of a supported type.

    Supported descriptors: "Z", "Z2", "ZxZl(l)", "CentralExtension(m)", "H3".
    Trailing zeros are truncated from the profile.
    """
    if t == "Z":
        return CohomologyProfile((1, 1))
    if t == "Z2":
        return CohomologyProfile((1, 2, 1))
    if t == "H3":
        return CohomologyProfile((1, 2, 2, 1))
    m = _ZXZL.match(t)
    if m:
        # The torsion factor is invisible over the complex numbers, so the
        # profile agrees with that of Z for every l >= 1.
        return CohomologyProfile((1, 1))
    m = _CEXT.match(t)
    if m:
        if int(m.group(1)) < 2:
            raise ValueError("central extension torsion must be >= 2")
        # Rank-2 central extension of Z^2 by Z with torsion quotient: the
        # spectral sequence collapses and the dimensions match those of Z^2.
        return CohomologyProfile((1, 2, 1))
    raise ValueError(f"unsupported group descriptor: {t!r}")


H3_PROFILE = group_cohomology("H3")


def cyclic_cohomology_dim(n: int) -> CyclicDimReport:
    """Dimension data for the degree-n cyclic cohomology of the group ring.

    The identity conjugacy class contributes the direct sum of H^{n-2j}(H3)
    over j >= 0, giving finite ranks 1, 2, 3, 3, 3, ...  The countably many
    infinite-order classes contribute a product of lines exactly in degrees
    n <= 2, since their quotient groups have cohomological dimension <= 2.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    rank = sum(H3_PROFILE.dim(n - 2 * j) for j in range(n // 2 + 1))
    return CyclicDimReport(degree=n, finite_rank=rank, countable_factor=n <= 2)


def periodic_cyclic_dims() -> tuple[int, int]:
    """Even and odd periodic cyclic cohomology dimensions (stabilized ranks)."""
    return (
        cyclic_cohomology_dim(10).finite_rank,
        cyclic_cohomology_dim(11).finite_rank,
    )
