import numpy as np
import pytest

from heisenberg_ncg.kk import (
    check_duality,
    check_exactness,
    check_faithfulness,
    khomology_sequence,
    pairing_tables,
    predicted_failure_node,
    pv_ktheory_sequence,
    torus_pairing_tables,
)


class TestSequencesExact:
    @pytest.mark.parametrize("builder", [pv_ktheory_sequence, khomology_sequence])
    def test_all_nodes_exact(self, builder):
        reports = check_exactness(builder())
        assert len(reports) == 6
        for rep in reports:
            assert rep.exact, rep.node
            assert rep.details["composition_zero"] and rep.details["kernel_in_image"]

    def test_ktheory_map_values(self):
        maps = {m.name: m.matrix.tolist() for m in pv_ktheory_sequence()}
        assert maps["id-alpha_* (K0)"] == [[0, 0], [0, 0]]
        assert maps["i_* (K0)"] == [[1, 0], [0, 1], [0, 0]]
        assert maps["delta_0"] == [[0, 0, 0], [0, 0, 1]]
        assert maps["id-alpha_* (K1)"] == [[0, 0], [1, 0]]
        assert maps["i_* (K1)"] == [[1, 0], [0, 0], [0, 0]]
        assert maps["delta_1"] == [[0, 1, 0], [0, 0, 1]]

    def test_khomology_map_values(self):
        maps = {m.name: m.matrix.tolist() for m in khomology_sequence()}
        assert maps["i^* (even)"] == [[1, 0, 0], [0, 1, 0]]
        assert maps["id-alpha^* (even)"] == [[0, 0], [0, 0]]
        assert maps["d_0"] == [[0, 0], [1, 0], [0, 1]]
        assert maps["i^* (odd)"] == [[1, 0, 0], [0, 0, 0]]
        assert maps["id-alpha^* (odd)"] == [[0, -1], [0, 0]]
        assert maps["d_1"] == [[0, 0], [0, 0], [0, 1]]


class TestMutations:
    """Each of the 12 maps is perturbed by +1 in its (0, 0) entry.

    These curated mutations are known to break exactness; a randomly chosen
    single-entry mutation need not (it can amount to a unimodular change of
    basis), so the test freezes this specific family.
    """

    @pytest.mark.parametrize("builder", [pv_ktheory_sequence, khomology_sequence])
    @pytest.mark.parametrize("index", range(6))
    def test_mutation_breaks_at_predicted_node(self, builder, index):
        seq = builder()
        seq[index] = seq[index].mutated(0, 0, 1)
        failed = [r.node for r in check_exactness(seq) if not r.exact]
        assert failed, f"mutating {seq[index].name} left the sequence exact"
        assert set(failed) <= set(predicted_failure_node(seq, index))

    def test_mutated_preserves_original(self):
        seq = pv_ktheory_sequence()
        m = seq[1].mutated(0, 0, 1)
        assert m.matrix[0, 0] == seq[1].matrix[0, 0] + 1
        assert seq[1].matrix[0, 0] == 1


class TestPairingTables:
    def test_frozen_values(self):
        even, odd = pairing_tables()
        assert even.entries.tolist() == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]
        assert odd.entries.tolist() == [[1, 0, 0], [0, 1, 0], [0, 1, 1]]
        assert even.rows == ("[1]", "[P_a]", "[P_b]")
        assert odd.rows == ("[U]", "[V]", "[V_a]")

    def test_torus_values(self):
        even, odd = torus_pairing_tables()
        assert even.entries.tolist() == [[1, 0], [1, 1]]
        assert odd.entries.tolist() == [[1, 0], [0, 1]]

    def test_entry_lookup(self):
        even, odd = pairing_tables()
        assert even.entry("[P_a]", "Dirac'") == 1
        assert odd.entry("[V_a]", "d0(Dirac)") == 1
        assert odd.entry("[U]", "z1'") == 0

    def test_unimodular(self):
        for table in (*pairing_tables(), *torus_pairing_tables()):
            assert abs(table.determinant()) == 1

    def test_faithfulness(self):
        assert check_faithfulness()["passed"]


class TestDuality:
    def test_all_instances_hold(self):
        rep = check_duality()
        assert rep["passed"]
        assert len(rep["instances"]) == 12
        for inst in rep["instances"]:
            assert inst["ok"], inst
            assert inst["lhs"] == inst["rhs"]
