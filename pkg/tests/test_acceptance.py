"""Acceptance suite: one group of tests per criterion, summarized at the end of the run.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

from __future__ import annotations

import time
from math import comb

import pytest

from edgering.betti import (
    MonomialIdeal,
    graded_betti_equal_p,
    graded_betti_recursion,
    pdim_and_type,
    regularity_closed_form,
    split_chain,
    squarefree_quotient_dimension,
    verify_ek_splitting,
)
from edgering.classify import CompactClass, NotCompact, classify, generate
from edgering.cone import (
    canonical_generators,
    cone_system,
    fundamental_sets,
    in_relint,
    minimality_oracle,
    relint_low_degree_search,
    top_betti_closed_form,
    top_graded_betti,
    type3_count_formula,
)
from edgering.graph import Graph, matching_number, prune_leaves
from edgering.oracle import (
    betti_coincidence_check,
    ideals_equal,
    is_groebner,
    monomial_betti_oracle,
    toric_ideal_via_elimination,
)
from edgering.sweep import sweep_classes
from edgering.toric import (
    LexOrder,
    initial_ideal,
    leading_term,
    universal_groebner_basis,
)

SWEEP = sweep_classes()
CONE_SWEEP = [c for c in SWEEP if c.num_vertices <= 20]


def invariants(g: Graph) -> dict:
    g0, _ = prune_leaves(g)
    c = classify(g0)
    pt = pdim_and_type(c)
    rec = graded_betti_recursion(c)
    return {
        "class": c,
        "t": c.t,
        "mat": matching_number(g0),
        "pdim": pt.pdim,
        "reg": regularity_closed_form(c)[1],
        "type": pt.cm_type,
        # the same numbers read off the recursion table (quotient convention)
        "pdim_table": rec.to_quotient().pdim,
        "reg_table": rec.to_quotient().reg,
        "type_table": rec.total(rec.pdim),
    }


# -- 1. figure reproduction ------------------------------------------------------------


EXPECTED = {
    1: dict(kind=1, t=3, mat=4, pdim=2, reg=4, type=2),
    2: dict(kind=2, t=5, mat=7, pdim=4, reg=7, type=4),
    3: dict(kind=3, t=7, mat=9, pdim=6, reg=9, type=6),
}


@pytest.mark.criterion(1)
@pytest.mark.parametrize("fig", [1, 2, 3])
def test_figure_invariants(figure_graphs, fig):
    start = time.perf_counter()
    inv = invariants(figure_graphs[fig])
    exp = EXPECTED[fig]
    c = inv["class"]
    assert c.kind == exp["kind"]
    for key in ("t", "mat", "pdim", "reg", "type"):
        assert inv[key] == exp[key], key
    assert (inv["pdim_table"], inv["reg_table"], inv["type_table"]) == (exp["pdim"], exp["reg"], exp["type"])
    if fig == 1:
        assert sorted(c.p) == [1, 1, 2]
    if fig == 2:
        assert c.s == 2
    if fig == 3:
        top = top_graded_betti(c)
        assert top.get(6, 14) == 3 and top.get(6, 15) == 3
        assert top == top_betti_closed_form(c)
    assert time.perf_counter() - start < 1.0


# -- 2. Groebner certification ------------------------------------------------------------


@pytest.mark.criterion(2)
def test_groebner_certification_sweep():
    assert len(SWEEP) == 12 + 45 + 35
    start = time.perf_counter()
    bad = []
    for c in SWEEP:
        order = LexOrder.for_class(c)
        ugb = universal_groebner_basis(c)
        lt = MonomialIdeal.of([leading_term(b, order) for b in ugb])
        if not is_groebner(ugb, order) or lt != initial_ideal(c):
            bad.append(str(c))
    elapsed = time.perf_counter() - start
    assert not bad, bad
    assert elapsed < 60, elapsed


# -- 3. elimination ground truth ------------------------------------------------------------

ELIMINATION = [
    CompactClass.type1((1, 1)),
    CompactClass.type1((1, 1, 1)),
    CompactClass.type2((1,), (1,), 0),
    CompactClass.type2((1,), (1,), 2),
    CompactClass.type3((1,), (1,), (1,)),
]


@pytest.mark.criterion(3)
def test_elimination_ground_truth():
    start = time.perf_counter()
    for c in ELIMINATION:
        order = LexOrder.for_class(c)
        gb = toric_ideal_via_elimination(generate(c), c.model_labeling, order)
        assert ideals_equal(list(gb.binomials), universal_groebner_basis(c), order), str(c)
    assert time.perf_counter() - start < 300


# -- 4. Betti agreement --------------------------------------------------------------------


@pytest.mark.criterion(4)
def test_betti_agreement_sweep():
    start = time.perf_counter()
    checked = 0
    for c in SWEEP:
        J = initial_ideal(c)
        if len(J) > 16:
            continue
        checked += 1
        rec = graded_betti_recursion(c)
        for char in (0, 32003):
            assert monomial_betti_oracle(J, char) == rec, (str(c), char)
        assert rec.totals() == [(i + 1) * comb(c.t, i + 2) for i in range(c.t - 1)], str(c)
        assert rec.reg == c.matching_number + 1, str(c)
        assert rec.pdim == c.t - 2, str(c)
    assert checked > 0
    assert time.perf_counter() - start < 600


# -- 5. equal-parameter tables ------------------------------------------------------------


@pytest.mark.criterion(5)
@pytest.mark.parametrize("m, p", [(3, 1), (4, 1), (3, 2)])
def test_equal_parameter_table(m, p):
    oracle = monomial_betti_oracle(initial_ideal(CompactClass.type1((p,) * m)))
    assert graded_betti_equal_p(m, p) == oracle


# -- 6. splitting verification --------------------------------------------------------------


@pytest.mark.criterion(6)
def test_splitting_verification_sweep():
    verified = 0
    for c in SWEEP:
        steps, _ = split_chain(c)
        for s in steps:
            assert s.intersection == s.left.times(s.pivot), (str(c), s.label)
            if len(s.intersection) <= 15:
                v = verify_ek_splitting(s, cutoff=15)
                assert v.status == "pass", (str(c), s.label, v.reason)
                verified += 1
    assert verified > 0


# -- 7. cone and canonical module -----------------------------------------------------------


@pytest.mark.criterion(7)
def test_canonical_generators_relint_minimal_and_counted():
    start = time.perf_counter()
    for c in CONE_SWEEP:
        g = generate(c)
        S = cone_system(g)
        gens = canonical_generators(c)
        assert len(gens) == c.t - 1, str(c)
        for v in gens:
            assert in_relint(v.as_dict, g, S), (str(c), v.label)
            assert minimality_oracle(v.as_dict, g, S), (str(c), v.label)
    assert time.perf_counter() - start < 300


@pytest.mark.criterion(7)
def test_no_interior_point_up_to_matching_number():
    start = time.perf_counter()
    offenders = []
    for c in CONE_SWEEP:
        g = generate(c)
        found = relint_low_degree_search(g, c.matching_number, cone_system(g))
        if found:
            offenders.append((str(c), c.matching_number, found[0]))
    assert time.perf_counter() - start < 300
    assert not offenders, f"{len(offenders)} classes have an interior point of degree <= mat, e.g. {offenders[0]}"


@pytest.mark.criterion(7)
def test_top_betti_by_duality():
    for c in CONE_SWEEP:
        assert top_graded_betti(c) == top_betti_closed_form(c), str(c)


@pytest.mark.criterion(7)
def test_type3_fundamental_set_count():
    mismatches = []
    for c in CONE_SWEEP:
        if c.kind != 3:
            continue
        n = len(fundamental_sets(generate(c)))
        if n != type3_count_formula(c):
            mismatches.append((str(c), n, type3_count_formula(c)))
    assert not mismatches, f"{len(mismatches)} mismatches, e.g. {mismatches[0]} (found, formula)"


# -- 8. Euler characteristic and dimension ---------------------------------------------------


@pytest.mark.criterion(8)
def test_cycle_count_and_dimension():
    for c in SWEEP:
        g = generate(c)
        assert c.t == len(g.edges) - len(g.vertices) + 1, str(c)
        assert squarefree_quotient_dimension(initial_ideal(c), len(g.edges)) == len(g.vertices), str(c)


# -- 9. coincidence criterion -----------------------------------------------------------------


@pytest.mark.criterion(9)
def test_coincidence_range():
    for m in range(2, 7):
        for p in range(1, 4):
            got = betti_coincidence_check(m, p).verdict == "Coincide"
            assert got == (m <= p + 3), (m, p)


@pytest.mark.criterion(9)
def test_coincidence_oracle_data():
    J = initial_ideal(CompactClass.type1((1, 1, 1)))
    assert monomial_betti_oracle(J) == graded_betti_equal_p(3, 1)
    assert betti_coincidence_check(3, 1).verdict == "Coincide"


# -- 10. negative controls ----------------------------------------------------------------------


def _cycle(n, tag=""):
    return [(f"{tag}{i}", f"{tag}{(i + 1) % n}") for i in range(n)]


NEGATIVE = {
    "four-cycle": _cycle(4),
    "two-triangles": _cycle(3, "a") + _cycle(3, "b"),
    "complete-4": [(a, b) for a in "abcd" for b in "abcd" if a < b],
}


@pytest.mark.criterion(10)
@pytest.mark.parametrize("name", sorted(NEGATIVE))
def test_negative_controls(name):
    g = Graph.from_edges(NEGATIVE[name])
    g0, removed = prune_leaves(g)
    assert not removed
    res = classify(g0)
    assert isinstance(res, NotCompact)
    assert res.verify(g0)
