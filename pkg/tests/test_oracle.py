from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgering.betti import MonomialIdeal, graded_betti_equal_p, graded_betti_recursion
from edgering.classify import CompactClass, EdgeVar, generate
from edgering.graph import Graph
from edgering.oracle import (
    Refused,
    betti_coincidence_check,
    buchberger,
    ideals_equal,
    is_groebner,
    monomial_betti_oracle,
    toric_ideal_via_elimination,
)
from edgering.toric import (
    Binomial,
    LexOrder,
    Monomial,
    initial_ideal,
    universal_groebner_basis,
)

A, B, C, D = (EdgeVar("e", 1, j) for j in range(1, 5))
ORDER = LexOrder([A, B, C, D])  # D largest


def bino(s: str) -> Binomial:
    return Binomial.parse(s)


# -- Buchberger ----------------------------------------------------------------


def test_rational_normal_curve():
    # 2x2 minors of [[a, b, c], [b, c, d]]: a Groebner basis under lex with d > c > b > a
    gens = [bino("e[1,1]*e[1,3] - e[1,2]^2"), bino("e[1,2]*e[1,4] - e[1,3]^2"), bino("e[1,1]*e[1,4] - e[1,2]*e[1,3]")]
    gb = buchberger(gens, ORDER)
    assert is_groebner(list(gb.binomials), ORDER)
    lts = {str(m) for m in gb.leading_terms()}
    assert "e[1,2]*e[1,4]" in lts and "e[1,1]*e[1,4]" in lts


def test_non_basis_detected():
    gens = [bino("e[1,4]*e[1,1] - e[1,2]*e[1,3]"), bino("e[1,4]*e[1,2] - e[1,1]^2")]
    assert not is_groebner(gens, ORDER)
    gb = buchberger(gens, ORDER)
    assert is_groebner(list(gb.binomials), ORDER)
    assert all(gb.reduces_to_zero(b) for b in gens)


def test_reduction_normal_form():
    gb = buchberger([bino("e[1,4] - e[1,1]")], ORDER)
    assert gb.reduce(Monomial.parse("e[1,4]^2*e[1,2]")) == Monomial.parse("e[1,1]^2*e[1,2]")


def test_pair_budget_refuses():
    gens = [bino("e[1,1]*e[1,3] - e[1,2]^2"), bino("e[1,2]*e[1,4] - e[1,3]^2"), bino("e[1,1]*e[1,4] - e[1,2]*e[1,3]")]
    with pytest.raises(Refused):
        buchberger(gens, LexOrder([D, C, B, A]), max_pairs=1)


exps = st.tuples(*[st.integers(0, 2)] * 4)


@given(st.lists(st.tuples(exps, exps), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_buchberger_output_is_groebner(pairs):
    gens = []
    for a, b in pairs:
        ma = Monomial.of(dict(zip((A, B, C, D), a)))
        mb = Monomial.of(dict(zip((A, B, C, D), b)))
        if ma != mb:
            gens.append(Binomial(ma, mb))
    if not gens:
        return
    gb = buchberger(gens, ORDER, max_pairs=2000)
    assert is_groebner(list(gb.binomials), ORDER)
    assert all(gb.reduces_to_zero(b) for b in gens)


@pytest.mark.parametrize(
    "c",
    [
        CompactClass.type1((1, 1)),
        CompactClass.type1((2, 1)),
        CompactClass.type2((1,), (1,), 2),
        CompactClass.type3((1,), (1,), (1,)),
    ],
    ids=str,
)
def test_reduced_basis_of_ugb_keeps_initial_ideal(c):
    order = LexOrder.for_class(c)
    gb = buchberger(universal_groebner_basis(c), order)
    assert gb.reduced
    assert gb.initial_ideal() == initial_ideal(c)


# -- elimination ---------------------------------------------------------------


def test_elimination_of_a_triangle_is_zero():
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "a")])
    lab = {EdgeVar("e", 1, j): e for j, e in enumerate([("a", "b"), ("b", "c"), ("c", "a")], 1)}
    gb = toric_ideal_via_elimination(g, lab, LexOrder(sorted(lab)))
    assert gb.binomials == () or list(gb.binomials) == []


def test_elimination_of_a_square():
    edges = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]
    g = Graph.from_edges(edges)
    lab = {EdgeVar("e", 1, j): e for j, e in enumerate(edges, 1)}
    gb = toric_ideal_via_elimination(g, lab, LexOrder(sorted(lab)))
    assert [str(b) for b in gb.binomials] in (["e[1,2]*e[1,4] - e[1,1]*e[1,3]"], ["e[1,1]*e[1,3] - e[1,2]*e[1,4]"])


@pytest.mark.parametrize("c", [CompactClass.type1((1, 1)), CompactClass.type2((1,), (1,), 0)], ids=str)
def test_elimination_matches_basis(c):
    order = LexOrder.for_class(c)
    gb = toric_ideal_via_elimination(generate(c), c.model_labeling, order)
    assert ideals_equal(list(gb.binomials), universal_groebner_basis(c), order)


def test_elimination_refuses_large_graphs():
    c = CompactClass.type3((2, 2), (2, 2), (2, 2))
    with pytest.raises(Refused):
        toric_ideal_via_elimination(generate(c), c.model_labeling, LexOrder.for_class(c), max_vars=26)


# -- Betti oracle --------------------------------------------------------------


def test_oracle_small_examples():
    # (a, b) complete intersection; (ab, bc, cd) path ideal, whose ab,cd syzygy is not minimal
    ci = monomial_betti_oracle(MonomialIdeal.of([Monomial.parse("e[1,1]"), Monomial.parse("e[1,2]")]))
    assert ci.as_dict == {(0, 1): 2, (1, 2): 1}
    path = MonomialIdeal.of([Monomial.parse(s) for s in ("e[1,1]*e[1,2]", "e[1,2]*e[1,3]", "e[1,3]*e[1,4]")])
    assert monomial_betti_oracle(path).as_dict == {(0, 2): 3, (1, 3): 2}


def test_oracle_characteristic_dependence():
    # Stanley-Reisner ideal of the six-vertex triangulation of RP^2 has 2-torsion
    faces = [
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
        (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
    ]  # fmt: skip
    vs = {i: EdgeVar("e", 1, i) for i in range(1, 7)}
    non_faces = [
        S for r in (2, 3) for S in itertools.combinations(range(1, 7), r) if not any(set(S) <= set(f) for f in faces)
    ]
    gens = [Monomial.of({vs[i]: 1 for i in S}) for S in non_faces]
    I = MonomialIdeal.of(gens)
    assert len(I) == 10
    assert monomial_betti_oracle(I, 0) != monomial_betti_oracle(I, 2)
    assert monomial_betti_oracle(I, 0) == monomial_betti_oracle(I, 3)


def test_oracle_bounds_and_arguments():
    I = MonomialIdeal.of([Monomial.of({EdgeVar("e", 1, j): 1, EdgeVar("e", 2, j): 1}) for j in range(1, 6)])
    with pytest.raises(Refused):
        monomial_betti_oracle(I, max_gens=4)
    for bad in (-1, 1, 4, 15):
        with pytest.raises(ValueError):
            monomial_betti_oracle(I, bad)
    assert monomial_betti_oracle(MonomialIdeal()).entries == ()
    assert monomial_betti_oracle(MonomialIdeal.of([Monomial.one()])).as_dict == {(0, 0): 1}


@pytest.mark.parametrize("c", [CompactClass.type1((1, 1, 1, 1)), CompactClass.type3((1,), (1,), (2, 1))], ids=str)
def test_oracle_agrees_with_recursion(c):
    assert monomial_betti_oracle(initial_ideal(c)) == graded_betti_recursion(c)


# -- coincidence ---------------------------------------------------------------


def test_coincidence_rule():
    for p in range(1, 4):
        for m in range(2, 7):
            verdict = betti_coincidence_check(m, p).verdict
            assert (verdict == "Coincide") == (m <= p + 3), (m, p)


def test_coincidence_overlap_details():
    res = betti_coincidence_check(5, 1)
    assert res.verdict == "Inconclusive"
    assert any(len([i for i in rows if i != 3]) > 1 for _, rows in res.overlaps)
    assert betti_coincidence_check(2, 1).overlaps == ()
    assert set(betti_coincidence_check(4, 1).to_json()) == {"verdict", "overlaps", "reason"}


def test_coincidence_supports_match_table():
    for m, p in [(3, 1), (4, 2), (5, 3)]:
        T = graded_betti_equal_p(m, p)
        for (i, j), _ in T.entries:
            assert (i + 2) * p + 1 <= j <= (i + 2) * p + i + 1


def test_coincidence_rejects_bad_input():
    with pytest.raises(ValueError):
        betti_coincidence_check(1, 1)
