"""Exact arithmetic for the discrete Heisenberg group and its twisted group ring.

The group H3 is generated by unitaries U, V, W subject to VU = WUV with W
central.  Every group element has a unique normal form U^p V^q W^r, so the
group is modelled by exponent triples (p, q, r) with the multiplication law

    (p1, q1, r1) * (p2, q2, r2) = (p1 + p2, q1 + q2, r1 + r2 + q1 * p2).

Finitely supported complex-rational coefficient functions on Z^3 then model
the group ring: twisted Laurent polynomials in U, V, W.  All ring operations
are exact (Gaussian rationals); floating point appears only when an element
is evaluated in a finite-dimensional representation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

import numpy as np

Rationalish = Union[int, Fraction, str]


def _frac(x: Rationalish) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re: Rationalish = 0, im: Rationalish = 0) -> "GaussianRational":
        return GaussianRational(_frac(re), _frac(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        return f"{self.re}{'+' if self.im >= 0 else ''}{self.im}i"


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational.of(1)


@dataclass(frozen=True)
class GroupElement:
    """Exponent triple (p, q, r) for the normal-form word U^p V^q W^r."""

    p: int
    q: int
    r: int

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.p + other.p,
            self.q + other.q,
            self.r + other.r + self.q * other.p,
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.p, -self.q, self.p * self.q - self.r)

    def is_identity(self) -> bool:
        return self.p == 0 and self.q == 0 and self.r == 0

    def is_central(self) -> bool:
        return self.p == 0 and self.q == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


IDENTITY = GroupElement(0, 0, 0)


def group_mul(g1: GroupElement, g2: GroupElement) -> GroupElement:
    return g1 * g2


def group_inv(g: GroupElement) -> GroupElement:
    return g.inverse()


def conjugate(h: GroupElement, g: GroupElement) -> GroupElement:
    """h g h^{-1}."""
    return h * g * h.inverse()


@dataclass(frozen=True)
class RationalAngle:
    """A reduced fraction s/t representing the angle theta = s/t of a root
    of unity lambda = exp(2*pi*i*s/t)."""

    s: int
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("denominator must be a positive integer")
        if gcd(self.s, self.t) != 1 and not (self.s == 0 and self.t == 1):
            raise ValueError("angle fraction must be in lowest terms")

    @staticmethod
    def of(s: int, t: int) -> "RationalAngle":
        if t == 0:
            raise ValueError("denominator must be nonzero")
        if t < 0:
            s, t = -s, -t
        g = gcd(s, t)
        if g > 1:
            s, t = s // g, t // g
        if s == 0:
            t = 1
        return RationalAngle(s, t)

    @property
    def lam(self) -> complex:
        return np.exp(2j * np.pi * self.s / self.t)


Key = tuple[int, int, int]
CoeffLike = Union[int, Fraction, complex, GaussianRational]


def _coerce_coeff(c: CoeffLike) -> GaussianRational:
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, complex):
        return GaussianRational(Fraction(c.real), Fraction(c.imag))
    return GaussianRational(_frac(c), Fraction(0))


class AlgebraElement:
    """A finitely supported element of the twisted group ring C[H3].

    Stores a mapping from exponent triples to exact Gaussian-rational
    coefficients.  Zero coefficients are never stored, so equality of the
    term dictionaries is equality of elements.  Instances are immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Key, CoeffLike] | None = None):
        clean: dict[Key, GaussianRational] = {}
        if terms:
            for key, c in terms.items():
                coeff = _coerce_coeff(c)
                if not coeff.is_zero():
                    p, q, r = key
                    clean[(int(p), int(q), int(r))] = coeff
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @property
    def terms(self) -> dict[Key, GaussianRational]:
        return dict(self._terms)

    def coeff(self, p: int, q: int, r: int) -> GaussianRational:
        return self._terms.get((p, q, r), GR_ZERO)

    def support(self) -> list[Key]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # ---- constructors ----

    @staticmethod
    def zero() -> "AlgebraElement":
        return AlgebraElement()

    @staticmethod
    def monomial(p: int, q: int, r: int, coeff: CoeffLike = 1) -> "AlgebraElement":
        return AlgebraElement({(p, q, r): coeff})

    @staticmethod
    def one() -> "AlgebraElement":
        return AlgebraElement.monomial(0, 0, 0)

    @staticmethod
    def from_group(g: GroupElement, coeff: CoeffLike = 1) -> "AlgebraElement":
        return AlgebraElement.monomial(g.p, g.q, g.r, coeff)

    # ---- ring operations ----

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, GR_ZERO) + c
        return AlgebraElement(out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, GR_ZERO) - c
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -c for k, c in self._terms.items()})

    def scale(self, c: CoeffLike) -> "AlgebraElement":
        cc = _coerce_coeff(c)
        return AlgebraElement({k: v * cc for k, v in self._terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out: dict[Key, GaussianRational] = {}
        for (p1, q1, r1), c1 in self._terms.items():
            for (p2, q2, r2), c2 in other._terms.items():
                key = (p1 + p2, q1 + q2, r1 + r2 + q1 * p2)
                out[key] = out.get(key, GR_ZERO) + c1 * c2
        return AlgebraElement(out)

    def star(self) -> "AlgebraElement":
        out = {}
        for (p, q, r), c in self._terms.items():
            out[(-p, -q, p * q - r)] = c.conjugate()
        return AlgebraElement(out)

    def commutator(self, other: "AlgebraElement") -> "AlgebraElement":
        return self * other - other * self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if self.is_zero():
            return "AlgebraElement(0)"
        parts = [f"({c}) U^{p} V^{q} W^{r}" for (p, q, r), c in sorted(self._terms.items())]
        return "AlgebraElement(" + " + ".join(parts) + ")"


U = AlgebraElement.monomial(1, 0, 0)
V = AlgebraElement.monomial(0, 1, 0)
W = AlgebraElement.monomial(0, 0, 1)
ONE = AlgebraElement.one()


def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def alg_star(x: AlgebraElement) -> AlgebraElement:
    return x.star()


def is_central(x: AlgebraElement) -> bool:
    """True iff x commutes with both U and V.

    For finitely supported elements this is equivalent to the support lying
    on the W axis (p = q = 0); both routes are equivalent and the commutator
    route is the defining one.
    """
    return x.commutator(U).is_zero() and x.commutator(V).is_zero()


def apply_automorphism(x: AlgebraElement, n: int = 1) -> AlgebraElement:
    """The n-th power of the automorphism alpha: conjugation by V.

    alpha(U) = WU, alpha(V) = V, alpha(W) = W.  On a monomial the exponent
    of W shifts by n*p.
    """
    return AlgebraElement(
        {(p, q, r + n * p): c for (p, q, r), c in x.terms.items()}
    )


def eval_at_angle(x: AlgebraElement, theta: RationalAngle) -> np.ndarray:
    """Evaluate x in the t-dimensional clock-and-shift representation.

    With lambda = exp(2*pi*i*s/t):  U acts as the cyclic shift
    e_j -> e_{j+1 mod t}, V as the clock diag(lambda^j) and W as lambda
    times the identity.  This is a unital *-homomorphism onto a quotient in
    which the defining relation becomes VU = lambda UV.
    """
    t = theta.t
    lam = theta.lam
    shift = np.roll(np.eye(t, dtype=complex), 1, axis=0)
    clock = np.diag(lam ** np.arange(t))
    out = np.zeros((t, t), dtype=complex)
    for (p, q, r), c in x.terms.items():
        mat = np.linalg.matrix_power(shift, p) if p else np.eye(t, dtype=complex)
        if q:
            mat = mat @ np.linalg.matrix_power(clock, q)
        out += c.to_complex() * (lam**r) * mat
    return out


def quotient_to_torus(x: AlgebraElement) -> AlgebraElement:
    """Push x through the quotient map W -> 1: sum coefficients over r."""
    out: dict[Key, GaussianRational] = {}
    for (p, q, r), c in x.terms.items():
        key = (p, q, 0)
        out[key] = out.get(key, GR_ZERO) + c
    return AlgebraElement(out)


# ---- serialization ----


def _term_record(key: Key, c: GaussianRational) -> dict:
    p, q, r = key
    return {"p": p, "q": q, "r": r, "re": str(c.re), "im": str(c.im)}


def element_to_dict(x: AlgebraElement) -> dict:
    return {"terms": [_term_record(k, x.coeff(*k)) for k in x.support()]}


def element_from_dict(data: Mapping) -> AlgebraElement:
    terms: dict[Key, GaussianRational] = {}
    for rec in data.get("terms", []):
        key = (int(rec["p"]), int(rec["q"]), int(rec["r"]))
        coeff = GaussianRational.of(rec.get("re", 0), rec.get("im", 0))
        terms[key] = terms.get(key, GR_ZERO) + coeff
    return AlgebraElement(terms)


def element_to_json(x: AlgebraElement) -> str:
    return json.dumps(element_to_dict(x), sort_keys=True)


def element_from_json(text: str) -> AlgebraElement:
    return element_from_dict(json.loads(text))


def matrix_to_jsonable(m: np.ndarray) -> list:
    """Row-major list of {re, im} pairs for a complex matrix."""
    return [[{"re": float(v.real), "im": float(v.imag)} for v in row] for row in m]


def random_element(
    rng: np.random.Generator,
    box: int = 5,
    n_terms: int = 4,
    max_num: int = 6,
) -> AlgebraElement:
    """A random finitely supported element with small rational coefficients."""
    terms: dict[Key, GaussianRational] = {}
    for _ in range(n_terms):
        key = tuple(int(v) for v in rng.integers(-box, box + 1, size=3))
        num_re = int(rng.integers(-max_num, max_num + 1))
        num_im = int(rng.integers(-max_num, max_num + 1))
        den = int(rng.integers(1, 4))
        terms[key] = terms.get(key, GR_ZERO) + GaussianRational(
            Fraction(num_re, den), Fraction(num_im, den)
        )
    return AlgebraElement(terms)
