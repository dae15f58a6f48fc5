import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisenberg_ncg.algebra import (
    IDENTITY,
    ONE,
    U,
    V,
    W,
    AlgebraElement,
    GaussianRational,
    GroupElement,
    RationalAngle,
    apply_automorphism,
    conjugate,
    element_from_json,
    element_to_json,
    eval_at_angle,
    is_central,
    quotient_to_torus,
    random_element,
)

ints = st.integers(-8, 8)
triples = st.tuples(ints, ints, ints)


def matrix_of(g: GroupElement) -> np.ndarray:
    m = np.eye(3, dtype=object)
    m[0, 1], m[0, 2], m[1, 2] = g.q, g.r, g.p
    return m


class TestGroupLaw:
    @given(triples, triples)
    def test_product_matches_matrix_model(self, t1, t2):
        g1, g2 = GroupElement(*t1), GroupElement(*t2)
        assert (matrix_of(g1 * g2) == matrix_of(g1) @ matrix_of(g2)).all()

    @given(triples)
    def test_inverse(self, t):
        g = GroupElement(*t)
        assert (g * g.inverse()).is_identity()
        assert (g.inverse() * g).is_identity()

    @given(triples, triples, triples)
    def test_associativity(self, t1, t2, t3):
        g1, g2, g3 = (GroupElement(*t) for t in (t1, t2, t3))
        assert (g1 * g2) * g3 == g1 * (g2 * g3)

    def test_thousand_random_products_match_matrix_model(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            g1 = GroupElement(*[int(v) for v in rng.integers(-10, 11, 3)])
            g2 = GroupElement(*[int(v) for v in rng.integers(-10, 11, 3)])
            assert (matrix_of(g1 * g2) == matrix_of(g1) @ matrix_of(g2)).all()

    def test_commutator_of_generators_is_central(self):
        u, v = GroupElement(1, 0, 0), GroupElement(0, 1, 0)
        comm = v * u * v.inverse() * u.inverse()
        assert comm == GroupElement(0, 0, 1)

    @given(triples, triples)
    def test_conjugation_shifts_center_exponent(self, t1, t2):
        g, h = GroupElement(*t1), GroupElement(*t2)
        c = conjugate(h, g)
        assert (c.p, c.q) == (g.p, g.q)
        assert c.r == g.r + h.q * g.p - h.p * g.q


class TestRingArithmetic:
    def test_defining_relation(self):
        # V U = W U V
        assert V * U == W * U * V

    def test_w_is_central(self):
        assert W * U == U * W
        assert W * V == V * W
        assert is_central(W) and is_central(ONE)
        assert not is_central(U) and not is_central(V)

    def test_star_involution_on_generators(self):
        assert U.star() * U == ONE
        assert V.star() * V == ONE

    @given(triples)
    def test_star_of_monomial(self, t):
        x = AlgebraElement.monomial(*t, GaussianRational.of(2, 3))
        p, q, r = t
        expected = AlgebraElement.monomial(-p, -q, p * q - r, GaussianRational.of(2, -3))
        assert x.star() == expected

    def test_star_is_antimultiplicative(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            x = random_element(rng, box=4, n_terms=3)
            y = random_element(rng, box=4, n_terms=3)
            assert (x * y).star() == y.star() * x.star()
            assert x.star().star() == x

    def test_distributivity_and_units(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            x = random_element(rng, box=3, n_terms=3)
            y = random_element(rng, box=3, n_terms=3)
            z = random_element(rng, box=3, n_terms=3)
            assert x * (y + z) == x * y + x * z
            assert ONE * x == x and x * ONE == x

    def test_automorphism_is_conjugation_by_v(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            x = random_element(rng, box=3, n_terms=3)
            assert apply_automorphism(x, 1) == V * x * V.star()
            assert apply_automorphism(apply_automorphism(x, 2), -2) == x

    def test_quotient_kills_center(self):
        x = U * W + U
        assert quotient_to_torus(x) == U.scale(2)


class TestEvaluation:
    @pytest.mark.parametrize("s,t", [(0, 1), (1, 2), (1, 3), (2, 5)])
    def test_star_homomorphism(self, s, t):
        theta = RationalAngle.of(s, t)
        rng = np.random.default_rng(100 * t + s)
        for _ in range(10):
            a = random_element(rng, box=4, n_terms=3)
            b = random_element(rng, box=4, n_terms=3)
            ma, mb = eval_at_angle(a, theta), eval_at_angle(b, theta)
            assert np.max(np.abs(eval_at_angle(a * b, theta) - ma @ mb)) <= 1e-12
            assert np.max(np.abs(eval_at_angle(a.star(), theta) - ma.conj().T)) <= 1e-12

    @pytest.mark.parametrize("s,t", [(1, 3), (2, 5), (3, 7)])
    def test_defining_relation_in_representation(self, s, t):
        theta = RationalAngle.of(s, t)
        mu, mv = eval_at_angle(U, theta), eval_at_angle(V, theta)
        assert np.max(np.abs(mv @ mu - theta.lam * mu @ mv)) <= 1e-12

    def test_central_generator_is_scalar(self):
        theta = RationalAngle.of(1, 4)
        mw = eval_at_angle(W, theta)
        assert np.max(np.abs(mw - theta.lam * np.eye(4))) <= 1e-12


class TestSerialization:
    @given(st.lists(st.tuples(triples, ints, ints), max_size=5))
    @settings(max_examples=50)
    def test_json_roundtrip(self, data):
        x = AlgebraElement(
            {k: GaussianRational.of(a, b) for k, a, b in data}
        )
        assert element_from_json(element_to_json(x)) == x

    def test_json_is_deterministic(self):
        x = U + V.scale(GaussianRational.of(1, -2)) + W
        assert element_to_json(x) == element_to_json(U + V.scale(GaussianRational.of(1, -2)) + W)

    def test_identity_constant(self):
        assert IDENTITY.is_identity()
