"""Monomial ideals, Betti tables, E-K splittings and the closed forms for initial ideals."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

import numpy as np

from .classify import CompactClass, X, Y, Z
from .toric import Aux, Monomial, aux, initial_generators_from


# -- monomial ideals ----------------------------------------------------------


def _canon(m: Monomial):
    return (m.degree, str(m))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its minimal generators in canonical order."""

    gens: tuple = ()

    @classmethod
    def of(cls, gens) -> MonomialIdeal:
        return minimalize(gens)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_squarefree(self) -> bool:
        return all(g.is_squarefree for g in self.gens)

    @property
    def variables(self) -> frozenset:
        out = set()
        for g in self.gens:
            out |= g.support
        return frozenset(out)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return minimalize(self.gens + other.gens)

    def times(self, w: Monomial) -> MonomialIdeal:
        return minimalize([w * g for g in self.gens])

    def degrees(self) -> list:
        return [g.degree for g in self.gens]

    def to_json(self) -> list:
        return [str(g) for g in self.gens]


def minimalize(gens) -> MonomialIdeal:
    """Divisibility-minimal, deduplicated generators in canonical order."""
    uniq = sorted(set(Monomial.of(g) for g in gens), key=_canon)
    keep = []
    for g in uniq:
        # candidates that could divide g have degree <= deg g and come earlier
        if not any(h.divides(g) for h in keep):
            keep.append(g)
    return MonomialIdeal(tuple(sorted(keep, key=_canon)))


def intersect(I: MonomialIdeal, K: MonomialIdeal) -> MonomialIdeal:
    return minimalize([a.lcm(b) for a in I.gens for b in K.gens])


# -- Betti tables ---------------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers ``{(i, j): b}`` of an ideal (or, with ``convention='quotient'``, of R/I)."""

    entries: tuple = ()
    convention: str = "ideal"

    @classmethod
    def of(cls, mapping, convention="ideal") -> BettiTable:
        if convention not in ("ideal", "quotient"):
            raise ValueError("convention is 'ideal' or 'quotient'")
        items = sorted((k, int(v)) for k, v in dict(mapping).items() if v)
        if any(v < 0 for _, v in items):
            raise ValueError("negative Betti number")
        return cls(tuple(items), convention)

    @property
    def as_dict(self) -> dict:
        return dict(self.entries)

    def get(self, i, j) -> int:
        return self.as_dict.get((i, j), 0)

    def total(self, i) -> int:
        return sum(b for (a, _), b in self.entries if a == i)

    def totals(self) -> list:
        if not self.entries:
            return []
        return [self.total(i) for i in range(self.pdim + 1)]

    @property
    def pdim(self) -> int:
        return max((i for (i, _), _ in self.entries), default=-1)

    @property
    def reg(self) -> int:
        return max((j - i for (i, j), _ in self.entries), default=0)

    def row(self, i) -> dict:
        return {j: b for (a, j), b in self.entries if a == i}

    def shifted(self, di=0, dj=0) -> BettiTable:
        return BettiTable.of({(i + di, j + dj): b for (i, j), b in self.entries}, self.convention)

    def __add__(self, other: BettiTable) -> BettiTable:
        if self.convention != other.convention:
            raise ValueError("mixing Betti conventions")
        out = Counter(self.as_dict)
        out.update(other.as_dict)
        return BettiTable.of(out, self.convention)

    def to_quotient(self) -> BettiTable:
        if self.convention == "quotient":
            return self
        out = {(0, 0): 1}
        for (i, j), b in self.entries:
            out[(i + 1, j)] = b
        return BettiTable.of(out, "quotient")

    def to_ideal(self) -> BettiTable:
        if self.convention == "ideal":
            return self
        return BettiTable.of({(i - 1, j): b for (i, j), b in self.entries if i > 0}, "ideal")

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "entries": [{"i": i, "j": j, "b": b} for (i, j), b in self.entries],
        }

    @classmethod
    def from_json(cls, doc) -> BettiTable:
        return cls.of({(e["i"], e["j"]): e["b"] for e in doc["entries"]}, doc.get("convention", "ideal"))

    def render(self) -> str:
        """Macaulay-style grid: rows j-i, columns i."""
        if not self.entries:
            return "(zero)"
        cols = range(0, self.pdim + 1)
        rows = sorted({j - i for (i, j), _ in self.entries})
        lines = ["      " + " ".join(f"{i:>4}" for i in cols)]
        for r in rows:
            cells = [self.get(i, i + r) for i in cols]
            lines.append(f"{r:>4}: " + " ".join(f"{c:>4}" if c else "   ." for c in cells))
        return "\n".join(lines)


def koszul_betti(degrees) -> BettiTable:
    """Betti table of an ideal generated by a regular sequence of the given degrees."""
    # poly[(size, degree)] counts subsets
    poly = Counter({(0, 0): 1})
    for d in degrees:
        nxt = Counter(poly)
        for (a, j), b in poly.items():
            nxt[(a + 1, j + d)] += b
        poly = nxt
    return BettiTable.of({(a - 1, j): b for (a, j), b in poly.items() if a >= 1})


# -- splittings -------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    status: str  # pass | fail | unverified
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason}


@dataclass(frozen=True)
class SplitStructure:
    """``J = left + pivot*H`` with the splitting maps phi, psi on G(left ∩ pivot*H).

    ``H`` keeps its listed order; psi picks the first listed generator that divides.
    """

    J: MonomialIdeal
    left: MonomialIdeal
    pivot: Monomial
    H: tuple
    label: str = ""

    @property
    def wH(self) -> MonomialIdeal:
        return MonomialIdeal.of([self.pivot * h for h in self.H])

    @property
    def intersection(self) -> MonomialIdeal:
        return intersect(self.left, self.wH)

    def phi(self, v: Monomial) -> Monomial:
        return v / self.pivot

    def psi(self, v: Monomial) -> Monomial:
        u = v / self.pivot
        for h in self.H:
            if h.divides(u):
                return self.pivot * h
        raise ValueError(f"no generator of H divides {u}")

    @property
    def shift(self) -> int:
        return self.pivot.degree

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "pivot": str(self.pivot),
            "H": [str(h) for h in self.H],
            "left": self.left.to_json(),
            "J_size": len(self.J),
        }


@dataclass(frozen=True)
class _Shape1:
    """Generators {dpp[i] * dp[j] : i < j}; dp[0] may be None."""

    pairs: tuple

    def gens(self):
        ps = self.pairs
        return [ps[i][0] * ps[j][1] for i in range(len(ps)) for j in range(i + 1, len(ps))]


def _chain_type1(pairs, label="J") -> tuple:
    steps = []
    pairs = tuple(pairs)
    while len(pairs) >= 3:
        J = MonomialIdeal.of(_Shape1(pairs).gens())
        left = MonomialIdeal.of(_Shape1(pairs[:-1]).gens())
        H = tuple(pp for pp, _ in pairs[:-1])
        steps.append(SplitStructure(J, left, pairs[-1][1], H, f"{label}[{len(pairs)}]"))
        pairs = pairs[:-1]
    return steps, MonomialIdeal.of(_Shape1(pairs).gens())


def _chain_type2(A: Aux, label="J2") -> tuple:
    steps = []
    n = len(A.fp)
    for nn in range(n, 0, -1):
        cur = Aux(A.ep, A.epp, A.fp[:nn], A.fpp[:nn], xp=A.xp, xpp=A.xpp)
        prev = Aux(A.ep, A.epp, A.fp[: nn - 1], A.fpp[: nn - 1], xp=A.xp, xpp=A.xpp)
        H = tuple(A.ep) + tuple(A.fpp[: nn - 1]) + ((A.xp,) if A.xp is not None else ())
        steps.append(
            SplitStructure(
                MonomialIdeal.of(initial_generators_from(cur, 2)),
                MonomialIdeal.of(initial_generators_from(prev, 2)),
                A.fp[nn - 1],
                H,
                f"{label}[n={nn}]",
            )
        )
    pairs = list(zip(A.epp, A.ep))
    if A.xp is not None:
        pairs = [(A.xpp, None)] + pairs
    more, base = _chain_type1(pairs, f"{label}[n=0]")
    return steps + more, base


def _chain_type3(A: Aux) -> tuple:
    steps = []
    k = len(A.gp)
    x = Monomial.of(X)
    for kk in range(k, 0, -1):
        cur = Aux(A.ep, A.epp, A.fp, A.fpp, A.gp[:kk], A.gpp[:kk])
        prev = Aux(A.ep, A.epp, A.fp, A.fpp, A.gp[: kk - 1], A.gpp[: kk - 1])
        H = (x,) + tuple(A.ep) + tuple(A.fp) + tuple(A.gpp[: kk - 1])
        steps.append(
            SplitStructure(
                MonomialIdeal.of(initial_generators_from(cur, 3)),
                MonomialIdeal.of(initial_generators_from(prev, 3)),
                A.gp[kk - 1],
                H,
                f"J3[k={kk}]",
            )
        )
    # with no g-cycles, y and z play the roles of x'' and x'
    base2 = Aux(A.ep, A.epp, A.fp, A.fpp, xp=Monomial.of(Z), xpp=Monomial.of(Y))
    more, base = _chain_type2(base2, "J3[k=0]")
    return steps + more, base


def split_chain(c: CompactClass) -> tuple:
    """All splitting steps from the class's initial ideal down to a base ideal.

    Returns ``(steps, base)``; each step's ``left`` is the next step's ``J``.
    """
    if c.kind == 0:
        raise ValueError("an odd cycle has zero toric ideal; nothing to split")
    A = aux(c)
    if c.kind == 1:
        return _chain_type1(list(zip(A.epp, A.ep)))
    if c.kind == 2:
        return _chain_type2(A)
    return _chain_type3(A)


def ek_split(c: CompactClass) -> SplitStructure:
    """The top splitting step of the class's initial ideal."""
    if c.kind == 0:
        raise ValueError("no splitting for an odd cycle")
    if c.kind == 1 and c.m < 3:
        raise ValueError("type 1 splitting needs at least three cycles")
    steps, _ = split_chain(c)
    return steps[0]


def _vectors(monos, variables):
    idx = {v: i for i, v in enumerate(variables)}
    out = np.zeros((len(monos), len(variables)), dtype=np.int16)
    for r, m in enumerate(monos):
        for v, a in m.exps:
            out[r, idx[v]] = a
    return out


def verify_ek_splitting(s: SplitStructure, cutoff: int = 15, phi=None, psi=None) -> Verdict:
    """Check the splitting conditions; subset condition only up to ``cutoff`` generators."""
    phi = phi or s.phi
    psi = psi or s.psi
    wH = s.wH
    gl, gw = set(s.left.gens), set(wH.gens)
    if gl & gw:
        return Verdict("fail", "G(left) and G(wH) overlap")
    if set(s.J.gens) != gl | gw:
        return Verdict("fail", "G(J) is not G(left) ⊔ G(wH)")
    inter = s.intersection
    if inter != s.left.times(s.pivot):
        return Verdict("fail", "left ∩ wH differs from pivot·left")
    gens = list(inter.gens)
    if not gens:
        return Verdict("pass", "empty intersection")
    phis, psis = [], []
    for v in gens:
        try:
            a, b = phi(v), psi(v)
        except ValueError as exc:
            return Verdict("fail", str(exc))
        if a not in gl or b not in gw:
            return Verdict("fail", f"maps of {v} leave G(left) or G(wH)")
        if a.lcm(b) != v:
            return Verdict("fail", f"lcm(phi, psi) != {v}")
        phis.append(a)
        psis.append(b)
    if len(gens) > cutoff:
        return Verdict("unverified", f"size {len(gens)} > cutoff {cutoff}")
    variables = sorted(set().union(*(g.support for g in gens + phis + psis)))
    V, P, Q = (_vectors(x, variables) for x in (gens, phis, psis))
    r = len(gens)
    full = 1 << r
    LV = np.zeros((full, len(variables)), dtype=np.int16)
    LP = np.zeros_like(LV)
    LQ = np.zeros_like(LV)
    for mask in range(1, full):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        LV[mask] = np.maximum(LV[rest], V[low])
        LP[mask] = np.maximum(LP[rest], P[low])
        LQ[mask] = np.maximum(LQ[rest], Q[low])
    LV, LP, LQ = LV[1:], LP[1:], LQ[1:]
    for name, L in (("phi", LP), ("psi", LQ)):
        divides = np.all(L <= LV, axis=1)
        strict = np.any(L < LV, axis=1)
        bad = np.flatnonzero(~(divides & strict))
        if bad.size:
            mask = int(bad[0]) + 1
            subset = [str(gens[i]) for i in range(r) if mask >> i & 1]
            return Verdict("fail", f"lcm({name}(S)) does not strictly divide lcm(S) for S={subset}")
    return Verdict("pass", f"{full - 1} subsets checked")


# -- recursion and closed forms ---------------------------------------------------


def betti_from_chain(steps, base: MonomialIdeal) -> BettiTable:
    """Apply β(J) = β(left) + β(H)[d] + β(left)[i-1, d] from the base upward."""
    table = _base_table(base)
    for s in reversed(steps):
        d = s.shift
        h = koszul_betti([g.degree for g in s.H])
        table = table + h.shifted(0, d) + table.shifted(1, d)
    return table


def _base_table(base: MonomialIdeal) -> BettiTable:
    if base.is_zero:
        return BettiTable.of({})
    if len(base) == 1:
        return BettiTable.of({(0, base.gens[0].degree): 1})
    raise ValueError("base ideal of a chain has at most one generator")


def graded_betti_recursion(c: CompactClass) -> BettiTable:
    """Graded Betti numbers of the initial ideal via the splitting recursion."""
    if c.kind == 0:
        return BettiTable.of({})
    steps, base = split_chain(c)
    return betti_from_chain(steps, base)


def graded_betti_equal_p(m: int, p: int) -> BettiTable:
    if m < 2 or p < 1:
        raise ValueError("need m >= 2, p >= 1")
    out = {}
    for i in range(0, m - 1):
        for l in range(1, i + 2):
            out[(i, (i + 2) * p + l)] = comb(m, i + 2)
    return BettiTable.of(out)


def total_betti_closed_form(c: CompactClass, i: int) -> int:
    if c.kind == 0:
        raise ValueError("odd cycle: zero ideal")
    return (i + 1) * comb(c.t, i + 2)


def regularity_closed_form(c: CompactClass) -> tuple:
    """``(reg of the ideal, reg of the quotient)``; the latter is the matching number."""
    if c.kind == 0:
        raise ValueError("odd cycle: zero ideal")
    mat = c.matching_number
    return mat + 1, mat


@dataclass(frozen=True)
class PdimType:
    pdim: int
    cm_type: int
    t: int
    special: bool = False


def pdim_and_type(c: CompactClass) -> PdimType:
    if c.kind == 0:
        return PdimType(0, 1, 1, True)
    return PdimType(c.t - 1, c.t - 1, c.t)


def squarefree_quotient_dimension(I: MonomialIdeal, nvars: int) -> int:
    """Krull dimension of R/I: nvars minus a minimum hitting set of the generator supports."""
    if not I.is_squarefree:
        raise ValueError("generators must be squarefree")
    if not I.gens:
        return nvars
    variables = sorted(I.variables)
    idx = {v: i for i, v in enumerate(variables)}
    masks = sorted({sum(1 << idx[v] for v in g.support) for g in I.gens}, key=lambda b: bin(b).count("1"))
    best = [len(variables)]

    def search(chosen, size):
        if size >= best[0]:
            return
        for mk in masks:
            if not mk & chosen:
                bits = mk
                while bits:
                    low = bits & -bits
                    bits ^= low
                    search(chosen | low, size + 1)
                return
        best[0] = size

    search(0, 0)
    return nvars - best[0]


def shape_key(c: CompactClass) -> str:
    """Short label for reports."""
    return str(c)
