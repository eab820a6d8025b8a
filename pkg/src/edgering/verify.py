"""Per-instance cross-checks between closed forms, recursion and the oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

from .betti import (
    MonomialIdeal,
    graded_betti_recursion,
    regularity_closed_form,
    split_chain,
    squarefree_quotient_dimension,
    total_betti_closed_form,
    verify_ek_splitting,
)
from .classify import CompactClass, generate
from .config import Bounds
from .cone import (
    canonical_generators,
    cone_system,
    in_relint,
    is_full_dimensional,
    minimality_oracle,
    relint_low_degree_search,
    top_betti_closed_form,
    top_graded_betti,
)
from .oracle import Refused, buchberger, ideals_equal, is_groebner, monomial_betti_oracle, toric_ideal_via_elimination
from .toric import (
    LexOrder,
    initial_ideal,
    leading_term,
    primitive_even_closed_walks,
    substitution_check,
    universal_groebner_basis,
)

CHECK_GROUPS = ("gb", "betti", "ek", "cone")


@dataclass
class Check:
    name: str
    status: str  # pass | fail | unverified
    reason: str = ""
    counterexample: object = None

    def to_json(self) -> dict:
        d = {"name": self.name, "status": self.status, "reason": self.reason}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    def add(self, name, ok, reason="", counterexample=None):
        self.checks.append(Check(name, "pass" if ok else "fail", reason, counterexample))

    def unverified(self, name, reason):
        self.checks.append(Check(name, "unverified", reason))

    @property
    def failed(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed


def tampered_initial_ideal(c: CompactClass) -> MonomialIdeal:
    """Negative control: the closed-form initial ideal with its last generator removed."""
    I = initial_ideal(c)
    return MonomialIdeal(I.gens[:-1])


def verify_instance(c: CompactClass, checks=CHECK_GROUPS, bounds: Bounds = Bounds(), tamper: bool = False) -> VerifyReport:
    rep = VerifyReport()
    if c.kind == 0:
        rep.add("odd-cycle", True, "zero toric ideal; nothing to check")
        return rep
    checks = set(checks)
    g = generate(c)
    lab = c.model_labeling
    order = LexOrder.for_class(c)
    J = tampered_initial_ideal(c) if tamper else initial_ideal(c)
    ugb = universal_groebner_basis(c)

    if "gb" in checks:
        walks = primitive_even_closed_walks(c)
        bad = [str(w) for w in walks if not w.is_valid(lab)]
        rep.add("walks-valid", not bad, f"{len(walks)} walks", bad[:1] or None)
        unmatched = [str(w) for w in walks if not any(w.binomial().same_up_to_sign(b) for b in ugb)]
        rep.add("walks-match-basis", not unmatched, "", unmatched[:1] or None)
        bad = [str(b) for b in ugb if not (b.is_homogeneous and substitution_check(b, lab))]
        rep.add("substitution", not bad, f"{len(ugb)} binomials", bad[:1] or None)
        rep.add("buchberger-criterion", is_groebner(ugb, order))
        lt = MonomialIdeal.of([leading_term(b, order) for b in ugb])
        diff = sorted(set(map(str, lt.gens)) ^ set(map(str, J.gens)))
        rep.add("leading-terms", not diff, "leading-term ideal vs closed form", diff[:1] or None)
        gb = buchberger(ugb, order)
        rep.add("reduced-basis-initial", gb.initial_ideal() == J)
        try:
            el = toric_ideal_via_elimination(g, lab, order, bounds.max_elim_vars)
            rep.add("elimination", ideals_equal(list(el.binomials), ugb, order) and el.initial_ideal() == J)
        except Refused as exc:
            rep.unverified("elimination", str(exc))

    if "betti" in checks:
        rec = graded_betti_recursion(c)
        tot = [total_betti_closed_form(c, i) for i in range(c.t - 1)]
        rep.add("totals", rec.totals() == tot, f"{rec.totals()} vs {tot}")
        reg_i, _ = regularity_closed_form(c)
        rep.add("regularity", rec.reg == reg_i, f"{rec.reg} vs {reg_i}")
        rep.add("pdim", rec.pdim == c.t - 2)
        dim = squarefree_quotient_dimension(J, c.num_edges)
        rep.add("dimension", dim == c.num_vertices, f"{dim} vs |V|={c.num_vertices}")
        try:
            ora = monomial_betti_oracle(J, bounds.char, bounds.max_gens)
            rep.add("oracle-vs-recursion", ora == rec, "", None if ora == rec else ora.to_json())
        except Refused as exc:
            rep.unverified("oracle-vs-recursion", str(exc))

    if "ek" in checks:
        steps, _ = split_chain(c)
        for s in steps:
            v = verify_ek_splitting(s, bounds.max_subset)
            rep.checks.append(Check(f"ek:{s.label}", v.status, v.reason))

    if "cone" in checks:
        try:
            S = cone_system(g, bounds.max_vertices)
        except Refused as exc:
            rep.unverified("cone", str(exc))
            return rep
        rep.add("full-dimensional", is_full_dimensional(g, S))
        gens = canonical_generators(c)
        rep.add("canonical-count", len(gens) == c.t - 1)
        bad = [v.label for v in gens if not in_relint(v.as_dict, g, S)]
        rep.add("canonical-relint", not bad, "", bad[:1] or None)
        try:
            bad = [v.label for v in gens if not minimality_oracle(v.as_dict, g, S, bounds.max_box, bounds.max_vertices)]
            rep.add("canonical-minimal", not bad, "", bad[:1] or None)
        except Refused as exc:
            rep.unverified("canonical-minimal", str(exc))
        floor = c.num_vertices - c.matching_number
        low = relint_low_degree_search(g, floor - 1, S)
        rep.add("no-interior-point-below-floor", not low, f"degree < {floor}", low[:1] or None)
        rep.add("top-betti-duality", top_graded_betti(c) == top_betti_closed_form(c))
    return rep
