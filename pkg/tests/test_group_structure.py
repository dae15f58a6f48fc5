import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisenberg_ncg.algebra import GroupElement, conjugate
from heisenberg_ncg.group_structure import (
    brute_force_centralizer,
    centralizer_membership,
    classify_element,
    commutes,
    conjugacy_representative,
    cyclic_cohomology_dim,
    group_cohomology,
    hcf,
    periodic_cyclic_dims,
)

ints = st.integers(-10, 10)


class TestClassification:
    def test_case_labels(self):
        assert classify_element(GroupElement(0, 0, 0)).case == "Identity"
        assert classify_element(GroupElement(0, 0, 1)).case == "Case4a"
        assert classify_element(GroupElement(0, 0, -1)).case == "Case4a"
        assert classify_element(GroupElement(0, 0, 5)).case == "Case4b"
        assert classify_element(GroupElement(3, 0, 6)).case == "Case2"
        assert classify_element(GroupElement(0, 3, 6)).case == "Case3"
        assert classify_element(GroupElement(2, 4, 1)).case == "Case1"

    def test_quotient_types(self):
        assert classify_element(GroupElement(0, 0, 0)).ng_type == "H3"
        assert classify_element(GroupElement(0, 0, 1)).ng_type == "Z2"
        assert classify_element(GroupElement(0, 0, 5)).ng_type == "CentralExtension(5)"
        assert classify_element(GroupElement(3, 0, 6)).ng_type == "ZxZl(3)"
        assert classify_element(GroupElement(3, 0, 7)).ng_type == "Z"
        assert classify_element(GroupElement(0, 2, 4)).ng_type == "ZxZl(2)"

    def test_interior_case_invariant(self):
        # k = 2, p' = 1, q' = 2, offset = 1*2*2*1/2 = 2, l = gcd(2, r - 2)
        rep = classify_element(GroupElement(2, 4, 4))
        assert (rep.k, rep.p_prime, rep.q_prime, rep.s_k, rep.l) == (2, 1, 2, 2, 2)
        assert rep.ng_type == "ZxZl(2)"

    @given(ints, ints, ints)
    def test_quotient_invariant_under_conjugation(self, x, y, z):
        g = GroupElement(2, 4, 1)
        h = GroupElement(x, y, z)
        assert classify_element(conjugate(h, g)).ng_type == classify_element(g).ng_type


class TestCentralizers:
    @given(ints, ints, ints, ints, ints, ints)
    def test_membership_predicate_matches_commutation(self, a, b, c, d, e, f):
        g, h = GroupElement(a, b, c), GroupElement(d, e, f)
        assert centralizer_membership(g, h) == commutes(g, h)

    def test_fifty_seeded_elements_match_brute_force(self):
        t0 = time.time()
        rng = np.random.default_rng(20230823 + 2)
        box = 6
        elements = [
            GroupElement(2, 4, 1),
            GroupElement(3, 0, 6),
            GroupElement(0, 3, 6),
            GroupElement(0, 0, 1),
            GroupElement(0, 0, 5),
        ]
        while len(elements) < 50:
            g = GroupElement(*[int(v) for v in rng.integers(-6, 7, 3)])
            if not g.is_identity():
                elements.append(g)
        cases = set()
        for g in elements:
            cases.add(classify_element(g).case)
            brute = {h.as_tuple() for h in brute_force_centralizer(g, box)}
            closed = {
                (p, q, r)
                for p in range(-box, box + 1)
                for q in range(-box, box + 1)
                for r in range(-box, box + 1)
                if centralizer_membership(g, GroupElement(p, q, r))
            }
            assert brute == closed, g.as_tuple()
        assert {"Case1", "Case2", "Case3", "Case4a", "Case4b"} <= cases
        assert time.time() - t0 < 30

    def test_box_guard(self):
        with pytest.raises(ValueError):
            brute_force_centralizer(GroupElement(1, 0, 0), 13)


class TestConjugacy:
    @given(ints, ints, ints, ints, ints, ints)
    def test_representative_is_conjugation_invariant(self, a, b, c, d, e, f):
        g, h = GroupElement(a, b, c), GroupElement(d, e, f)
        assert conjugacy_representative(conjugate(h, g)) == conjugacy_representative(g)

    def test_central_elements_are_singletons(self):
        g = GroupElement(0, 0, 7)
        assert conjugacy_representative(g) == g

    def test_center_exponent_reduced_mod_gcd(self):
        assert conjugacy_representative(GroupElement(2, 4, 5)).r == 1


class TestCohomology:
    def test_profiles(self):
        assert group_cohomology("Z").dims == (1, 1)
        assert group_cohomology("ZxZl(4)").dims == (1, 1)
        assert group_cohomology("Z2").dims == (1, 2, 1)
        assert group_cohomology("CentralExtension(5)").dims == (1, 2, 1)
        assert group_cohomology("H3").dims == (1, 2, 2, 1)

    def test_bad_descriptors_rejected(self):
        with pytest.raises(ValueError):
            group_cohomology("CentralExtension(1)")
        with pytest.raises(ValueError):
            group_cohomology("F2")

    def test_cyclic_ranks(self):
        ranks = [cyclic_cohomology_dim(n).finite_rank for n in range(8)]
        assert ranks == [1, 2, 3, 3, 3, 3, 3, 3]

    def test_countable_factor_only_in_low_degrees(self):
        flags = [cyclic_cohomology_dim(n).countable_factor for n in range(6)]
        assert flags == [True, True, True, False, False, False]

    def test_periodic_dims(self):
        assert periodic_cyclic_dims() == (3, 3)

    def test_hcf(self):
        assert hcf(0, 0) == 0
        assert hcf(-4, 6) == 2
        assert hcf(5, 0) == 5
