"""End-to-end verification suite.

Ten numbered criteria, each a pure function returning a result dict with a
``passed`` flag and enough detail to diagnose a failure.  ``run_all``
executes all of them and is what the command-line ``report all`` and the
acceptance test suite call.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from . import chern as ch
from . import derivations as dv
from . import fredholm as fr
from . import group_structure as gs
from . import kk
from .algebra import (
    ONE,
    GaussianRational,
    U,
    V,
    W,
    AlgebraElement,
    GroupElement,
    RationalAngle,
    eval_at_angle,
    random_element,
)

DEFAULT_SEED = 20230823


def _result(number: int, name: str, passed: bool, t0: float, **details) -> dict:
    return {
        "criterion": number,
        "name": name,
        "passed": bool(passed),
        "elapsed_s": round(time.time() - t0, 3),
        "details": details,
    }


def criterion_1_pairing_tables(truncations=(32, 64, 128)) -> dict:
    """Recompute every pairing-table entry that has a numeric route."""
    t0 = time.time()
    Z = AlgebraElement.zero()
    ktheory_odd = {"[U]": U, "[V]": V, "[V_a]": [[V, Z], [Z, ONE]]}
    ktheory_even = {"[1]": ONE, "[P_a]": [[ONE, Z], [Z, Z]]}
    even, odd = kk.pairing_tables()

    checks = []
    for col in ("z1", "z1'"):
        spec = "z1" if col == "z1" else "z1prime"
        for row, u in ktheory_odd.items():
            got = fr.odd_pairing(spec, u, truncations)
            want = odd.entry(row, col)
            checks.append({"entry": f"<{col}, {row}>", "got": got, "want": want})
    for row, p in ktheory_even.items():
        got = fr.even_pairing_trace("z0", p, 2)
        want = even.entry(row, "z0")
        checks.append({"entry": f"<z0, {row}>", "got": got, "want": want})
    # the third even generator reaches z0 through the same scalar image
    got = fr.even_pairing_trace("z0", [[ONE, Z], [Z, Z]], 2)
    checks.append({"entry": "<z0, [P_b]>", "got": got, "want": even.entry("[P_b]", "z0")})

    # the boundary image of the first odd torus module pairs to zero with
    # all three even generators: trace route for [1] and [P_a], index route
    # <w1, [W]> = 0 for [P_b] (boundary-map adjointness).
    checks.append(
        {"entry": "<d1(w1), [1]>", "got": fr.even_pairing_trace("del1_w1", ONE, 2), "want": 0}
    )
    checks.append(
        {
            "entry": "<d1(w1), [P_a]>",
            "got": fr.even_pairing_trace("del1_w1", [[ONE, Z], [Z, Z]], 2),
            "want": 0,
        }
    )
    checks.append(
        {"entry": "<d1(w1), [P_b]> via <w1, [W]>", "got": fr.odd_pairing("w1", W, truncations), "want": 0}
    )

    passed = all(c["got"] == c["want"] for c in checks)
    return _result(1, "pairing table recomputation", passed, t0, checks=checks)


def criterion_2_index_theorem(truncations=(32, 64, 128)) -> dict:
    """The half-line compression of the implementing unitary has index 1."""
    t0 = time.time()
    idx = fr.odd_pairing("z1prime", V, truncations)
    return _result(2, "Toeplitz index instance", idx == 1, t0, index=idx,
                   truncations=list(truncations))


def criterion_3_dirac_bott(grids=(16, 32, 64), truncation=48, n_commutators=4) -> dict:
    """Lattice Chern number +1 and agreement with the Dirac trace route."""
    t0 = time.time()
    cherns = {g: ch.lattice_chern(ch.bott_projector(g, 1.0)) for g in grids}
    field = ch.bott_projector(max(grids), 1.0)
    dirac = ch.dirac_even_pairing(field, truncation=truncation,
                                  n_commutators=n_commutators)
    passed = all(v == 1 for v in cherns.values()) and dirac["value"] == 1
    return _result(3, "Dirac/Bott pairing cross-oracle", passed, t0,
                   lattice_chern=cherns, dirac=dirac)


def criterion_4_decomposition(seed=DEFAULT_SEED, n_roundtrips=100, n_routes=20) -> dict:
    """Exact decomposition round-trips and two-route cell agreement."""
    t0 = time.time()
    rng = np.random.default_rng(seed)
    failures = []
    for i in range(n_roundtrips):
        z1 = AlgebraElement({(0, 0, int(r)): int(c) for r, c in zip(
            rng.integers(-5, 6, 2), rng.integers(-4, 5, 2))})
        z2 = AlgebraElement({(0, 0, int(r)): int(c) for r, c in zip(
            rng.integers(-5, 6, 2), rng.integers(-4, 5, 2))})
        x = random_element(rng, box=5, n_terms=4)
        x = AlgebraElement({k: c for k, c in x.terms.items() if (k[0], k[1]) != (0, 0)})
        d = dv.compose_from_parts(z1, z2, x)
        res = dv.decompose(d)
        if res.z1 != z1 or res.z2 != z2 or res.x != x:
            failures.append(i)

    route_failures = 0
    for i in range(n_routes):
        d = dv.random_consistent_derivation(rng, box=4)
        for p in range(-5, 6):
            for q in range(-5, 6):
                if p == 0 or q == 0:
                    continue
                for r in range(-7, 8):
                    ca = dv.inner_coefficient(d, p, q, r, "a")
                    cb = dv.inner_coefficient(d, p, q, r, "b")
                    if ca != cb:
                        route_failures += 1
    passed = not failures and route_failures == 0
    return _result(4, "derivation decomposition round-trip", passed, t0,
                   roundtrip_failures=failures, route_mismatch_cells=route_failures)


def criterion_5_central_generator(seed=DEFAULT_SEED, n_derivations=25) -> dict:
    """d(W) = 0 for consistent derivations; injected relation violations
    are detected."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 1)
    w_failures = 0
    for _ in range(n_derivations):
        d = dv.random_consistent_derivation(rng, box=4)
        if not dv.apply(d, W).is_zero():
            w_failures += 1

    detected = 0
    injected = 0
    for _ in range(10):
        d = dv.random_consistent_derivation(rng, box=3)
        # Perturb one dU coefficient off the a-axis rule or the relation.
        terms = d.dU.terms
        key = (int(rng.integers(2, 5)), 0, int(rng.integers(-3, 4)))
        terms[key] = terms.get(key) or GaussianRational.of(1)
        bad = dv.Derivation(AlgebraElement(terms), d.dV)
        injected += 1
        if not dv.check_consistency(bad).passed:
            detected += 1
    passed = w_failures == 0 and detected == injected
    return _result(5, "central generator annihilated", passed, t0,
                   w_failures=w_failures, injected=injected, detected=detected)


def criterion_6_centralizers(seed=DEFAULT_SEED, count=50, box=6) -> dict:
    """Closed-form centralizer membership equals brute-force enumeration."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 2)
    elements = [
        GroupElement(2, 4, 1),   # generic interior case
        GroupElement(3, 0, 6),   # first axis case
        GroupElement(0, 3, 6),   # second axis case
        GroupElement(0, 0, 1),   # central generator
        GroupElement(0, 0, 5),   # central with torsion quotient
    ]
    while len(elements) < count:
        g = GroupElement(*[int(v) for v in rng.integers(-6, 7, 3)])
        if not g.is_identity():
            elements.append(g)

    mismatches = []
    cases = set()
    for g in elements:
        cases.add(gs.classify_element(g).case)
        brute = {h.as_tuple() for h in gs.brute_force_centralizer(g, box)}
        closed = {
            (p, q, r)
            for p in range(-box, box + 1)
            for q in range(-box, box + 1)
            for r in range(-box, box + 1)
            if gs.centralizer_membership(g, GroupElement(p, q, r))
        }
        if brute != closed:
            mismatches.append(g.as_tuple())
    passed = not mismatches and {"Case1", "Case2", "Case3", "Case4a", "Case4b"} <= cases
    return _result(6, "centralizer classification vs brute force", passed, t0,
                   mismatches=mismatches, cases=sorted(cases))


def criterion_7_cohomology() -> dict:
    t0 = time.time()
    profile = gs.group_cohomology("H3").dims
    ranks = [gs.cyclic_cohomology_dim(n).finite_rank for n in range(8)]
    countable = [gs.cyclic_cohomology_dim(n).countable_factor for n in range(8)]
    periodic = gs.periodic_cyclic_dims()
    passed = (
        profile == (1, 2, 2, 1)
        and ranks == [1, 2, 3, 3, 3, 3, 3, 3]
        and countable == [True, True, True, False, False, False, False, False]
        and periodic == (3, 3)
    )
    return _result(7, "cohomology profiles", passed, t0,
                   h3_profile=list(profile), cyclic_ranks=ranks,
                   periodic=list(periodic))


def criterion_8_exactness() -> dict:
    t0 = time.time()
    node_failures = []
    for builder in (kk.pv_ktheory_sequence, kk.khomology_sequence):
        for rep in kk.check_exactness(builder()):
            if not rep.exact:
                node_failures.append(rep.node)

    mutation_results = []
    for builder in (kk.pv_ktheory_sequence, kk.khomology_sequence):
        for i in range(6):
            seq = builder()
            seq[i] = seq[i].mutated(0, 0, 1)
            failed = [r.node for r in kk.check_exactness(seq) if not r.exact]
            predicted = kk.predicted_failure_node(seq, i)
            ok = bool(failed) and set(failed) <= set(predicted)
            mutation_results.append(
                {"map": seq[i].name, "failed_nodes": failed,
                 "predicted": predicted, "ok": ok}
            )
    passed = not node_failures and all(m["ok"] for m in mutation_results)
    return _result(8, "six-term exactness and mutations", passed, t0,
                   node_failures=node_failures, mutations=mutation_results)


def criterion_9_duality() -> dict:
    t0 = time.time()
    dual = kk.check_duality()
    faith = kk.check_faithfulness()
    passed = dual["passed"] and faith["passed"]
    return _result(9, "boundary-map duality and faithfulness", passed, t0,
                   duality=dual, faithfulness=faith)


def criterion_10_algebra_oracle(seed=DEFAULT_SEED, n_products=1000) -> dict:
    t0 = time.time()
    rng = np.random.default_rng(seed + 3)

    def matrix_of(g: GroupElement):
        m = np.eye(3, dtype=object)
        m[0, 1], m[0, 2], m[1, 2] = g.q, g.r, g.p
        return m

    product_failures = 0
    for _ in range(n_products):
        g1 = GroupElement(*[int(v) for v in rng.integers(-10, 11, 3)])
        g2 = GroupElement(*[int(v) for v in rng.integers(-10, 11, 3)])
        if not (matrix_of(g1 * g2) == matrix_of(g1) @ matrix_of(g2)).all():
            product_failures += 1

    hom_failures = 0
    worst = 0.0
    for (s, t) in ((0, 1), (1, 2), (1, 3), (2, 5)):
        theta = RationalAngle.of(s, t)
        for _ in range(10):
            a = random_element(rng, box=4, n_terms=3)
            b = random_element(rng, box=4, n_terms=3)
            ma, mb = eval_at_angle(a, theta), eval_at_angle(b, theta)
            err = max(
                float(np.max(np.abs(eval_at_angle(a * b, theta) - ma @ mb))),
                float(np.max(np.abs(eval_at_angle(a.star(), theta) - ma.conj().T))),
            )
            worst = max(worst, err)
            if err > 1e-12:
                hom_failures += 1
    passed = product_failures == 0 and hom_failures == 0
    return _result(10, "algebra oracle equivalence", passed, t0,
                   product_failures=product_failures,
                   hom_failures=hom_failures, worst_error=worst)


ALL_CRITERIA = (
    criterion_1_pairing_tables,
    criterion_2_index_theorem,
    criterion_3_dirac_bott,
    criterion_4_decomposition,
    criterion_5_central_generator,
    criterion_6_centralizers,
    criterion_7_cohomology,
    criterion_8_exactness,
    criterion_9_duality,
    criterion_10_algebra_oracle,
)


def run_all(seed: int = DEFAULT_SEED) -> dict:
    results = []
    for fn in ALL_CRITERIA:
        if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            results.append(fn(seed=seed))
        else:
            results.append(fn())
    return {
        "passed": all(r["passed"] for r in results),
        "seed": seed,
        "results": results,
    }
