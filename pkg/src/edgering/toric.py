"""Binomial generators of toric ideals of compact graphs.

Auxiliary monomials, primitive even closed walks, the explicit universal
Groebner bases, leading terms and the closed-form initial ideals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .classify import XP, CompactClass, E, EdgeVar, F, G, X, Y, Z, lex_order


# -- monomials ---------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """Monomial in edge variables; ``exps`` holds (var, exponent>0) sorted by var."""

    exps: tuple = ()

    @classmethod
    def of(cls, mapping) -> Monomial:
        if isinstance(mapping, Monomial):
            return mapping
        if isinstance(mapping, EdgeVar):
            return cls(((mapping, 1),))
        if not isinstance(mapping, dict):
            mapping = Counter(mapping)
        items = [(v, int(a)) for v, a in mapping.items() if a]
        if any(a < 0 for _, a in items):
            raise ValueError("negative exponent")
        return cls(tuple(sorted(items, key=lambda va: va[0].sort_key)))

    @classmethod
    def one(cls) -> Monomial:
        return cls(())

    @classmethod
    def parse(cls, text: str) -> Monomial:
        text = text.strip()
        if text == "1":
            return cls.one()
        out = Counter()
        for tok in text.split("*"):
            name, _, power = tok.strip().partition("^")
            out[EdgeVar.parse(name)] += int(power) if power else 1
        return cls.of(out)

    @cached_property
    def as_dict(self) -> dict:
        return dict(self.exps)

    def exponent(self, var) -> int:
        return self.as_dict.get(var, 0)

    @property
    def degree(self) -> int:
        return sum(a for _, a in self.exps)

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self.exps)

    @property
    def is_squarefree(self) -> bool:
        return all(a == 1 for _, a in self.exps)

    def __mul__(self, other) -> Monomial:
        other = Monomial.of(other)
        out = Counter(self.as_dict)
        out.update(other.as_dict)
        return Monomial.of(out)

    def __pow__(self, k: int) -> Monomial:
        return Monomial.of({v: a * k for v, a in self.exps})

    def lcm(self, other) -> Monomial:
        a, b = self.as_dict, other.as_dict
        return Monomial.of({v: max(a.get(v, 0), b.get(v, 0)) for v in set(a) | set(b)})

    def gcd(self, other) -> Monomial:
        a, b = self.as_dict, other.as_dict
        return Monomial.of({v: min(a[v], b[v]) for v in set(a) & set(b)})

    def divides(self, other) -> bool:
        b = other.as_dict
        return all(b.get(v, 0) >= a for v, a in self.exps)

    def __truediv__(self, other) -> Monomial:
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        a = dict(self.as_dict)
        for v, k in other.exps:
            a[v] -= k
        return Monomial.of(a)

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(v.name if a == 1 else f"{v.name}^{a}" for v, a in self.exps)

    def __repr__(self):
        return f"Monomial({self})"


def prod(vars_) -> Monomial:
    out = Counter()
    for v in vars_:
        if isinstance(v, Monomial):
            out.update(v.as_dict)
        else:
            out[v] += 1
    return Monomial.of(out)


# -- orders ------------------------------------------------------------------


class LexOrder:
    """Lexicographic order given by a list of variables from smallest to largest."""

    def __init__(self, variables):
        self.variables = tuple(variables)
        self.rank = {v: i for i, v in enumerate(self.variables)}

    def key(self, m: Monomial) -> tuple:
        """Sort key: exponent vector read from the largest variable down."""
        d = m.as_dict
        unknown = set(d) - set(self.rank)
        if unknown:
            raise KeyError(f"variables outside the order: {sorted(map(str, unknown))}")
        return tuple(d.get(v, 0) for v in reversed(self.variables))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    @classmethod
    def for_class(cls, c: CompactClass) -> LexOrder:
        return cls(lex_order(c))


def _as_order(order) -> LexOrder:
    return order if isinstance(order, LexOrder) else LexOrder(order)


# -- binomials and walks ----------------------------------------------------


@dataclass(frozen=True)
class Binomial:
    """``plus - minus``; ``oriented`` is set once the leading side is put first."""

    plus: Monomial
    minus: Monomial
    oriented: bool = False

    def __post_init__(self):
        if self.plus == self.minus:
            raise ValueError("binomial with equal sides is zero")

    @property
    def is_homogeneous(self) -> bool:
        return self.plus.degree == self.minus.degree

    def orient(self, order) -> Binomial:
        """Leading side first."""
        o = _as_order(order)
        if o.greater(self.plus, self.minus):
            return Binomial(self.plus, self.minus, True)
        return Binomial(self.minus, self.plus, True)

    def same_up_to_sign(self, other: Binomial) -> bool:
        return {self.plus, self.minus} == {other.plus, other.minus}

    def __str__(self):
        return f"{self.plus} - {self.minus}"

    @classmethod
    def parse(cls, text: str) -> Binomial:
        a, b = text.split(" - ")
        return cls(Monomial.parse(a), Monomial.parse(b))


def leading_term(b: Binomial, order) -> Monomial:
    return b.orient(order).plus


@dataclass(frozen=True)
class Walk:
    """Closed walk given by its cyclic edge-variable sequence."""

    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_even(self) -> bool:
        return self.length % 2 == 0

    def vertex_sequence(self, labeling: dict):
        """Vertices visited, or None if consecutive edges do not chain into a closed walk."""
        ends = [tuple(labeling[e]) for e in self.edges]
        for start in ends[0]:
            seq = [start]
            ok = True
            for a, b in ends:
                cur = seq[-1]
                if cur == a:
                    seq.append(b)
                elif cur == b:
                    seq.append(a)
                else:
                    ok = False
                    break
            if ok and seq[-1] == seq[0]:
                return seq
        return None

    def is_valid(self, labeling: dict) -> bool:
        return self.is_even and self.vertex_sequence(labeling) is not None

    def binomial(self) -> Binomial:
        odd = prod(self.edges[0::2])
        even = prod(self.edges[1::2])
        return Binomial(odd, even)

    def __str__(self):
        return "(" + ", ".join(e.name for e in self.edges) + ")"


# -- auxiliary monomials ------------------------------------------------------


@dataclass(frozen=True)
class Aux:
    """Primed (odd-position) and double-primed (even-position) products per cycle."""

    ep: tuple
    epp: tuple
    fp: tuple = ()
    fpp: tuple = ()
    gp: tuple = ()
    gpp: tuple = ()
    xp: Monomial | None = None
    xpp: Monomial | None = None

    def as_dict(self) -> dict:
        out = {}
        for fam, p1, p2 in (("e", self.ep, self.epp), ("f", self.fp, self.fpp), ("g", self.gp, self.gpp)):
            for i, (a, b) in enumerate(zip(p1, p2), 1):
                out[f"{fam}'[{i}]"] = a
                out[f"{fam}''[{i}]"] = b
        if self.xp is not None:
            out["x'"] = self.xp
            out["x''"] = self.xpp
        return out


def _cycle_products(fam, tup):
    primes, doubles = [], []
    for i, a in enumerate(tup, 1):
        primes.append(prod(EdgeVar(fam, i, j) for j in range(1, 2 * a + 2, 2)))
        doubles.append(prod(EdgeVar(fam, i, j) for j in range(2, 2 * a + 1, 2)))
    return tuple(primes), tuple(doubles)


def aux(c: CompactClass) -> Aux:
    if c.kind == 0:
        raise ValueError("auxiliary monomials are not defined for an odd cycle")
    ep, epp = _cycle_products("e", c.p)
    fp, fpp = _cycle_products("f", c.q)
    gp, gpp = _cycle_products("g", c.r)
    xp = xpp = None
    if c.kind == 2 and c.s:
        xp = prod(XP(i) for i in range(1, c.s + 1, 2))
        xpp = prod(XP(i) for i in range(2, c.s + 1, 2))
    return Aux(ep, epp, fp, fpp, gp, gpp, xp, xpp)


def aux_monomials(c: CompactClass) -> dict:
    """Name -> monomial, e.g. ``"e'[1]"``, ``"f''[2]"``, ``"x'"``."""
    return aux(c).as_dict()


# -- walks and the universal Groebner basis ---------------------------------


def _cyc(fam, i, a):
    return tuple(EdgeVar(fam, i, j) for j in range(1, 2 * a + 2))


def primitive_even_closed_walks(c: CompactClass) -> list:
    """The primitive even closed walks, grouped by family in a fixed order."""
    if c.kind == 0:
        return []
    es = [_cyc("e", i, a) for i, a in enumerate(c.p, 1)]
    fs = [_cyc("f", i, a) for i, a in enumerate(c.q, 1)]
    gs = [_cyc("g", i, a) for i, a in enumerate(c.r, 1)]

    def pairs(cs):
        return [Walk(cs[i] + cs[j]) for i in range(len(cs)) for j in range(i + 1, len(cs))]

    def across(cs, ds, mid, back):
        return [Walk(a + mid + b + back) for a in cs for b in ds]

    walks = pairs(es)
    if c.kind == 2:
        path = tuple(XP(i) for i in range(1, c.s + 1))
        walks += pairs(fs) + across(es, fs, (X,), (X,))
        if c.s:
            walks += across(es, fs, path, path[::-1])
            walks += [Walk(a + path + (X,)) for a in es]
            walks += [Walk(b + (X,) + path) for b in fs]
    elif c.kind == 3:
        walks += pairs(fs) + pairs(gs)
        walks += across(es, fs, (X,), (X,))
        walks += across(fs, gs, (Y,), (Y,))
        walks += across(gs, es, (Z,), (Z,))
        walks += across(es, fs, (Z, Y), (Y, Z))
        walks += across(fs, gs, (X, Z), (Z, X))
        walks += across(gs, es, (Y, X), (X, Y))
        walks += [Walk(a + (Z, Y, X)) for a in es]
        walks += [Walk(b + (X, Z, Y)) for b in fs]
        walks += [Walk(d + (Y, X, Z)) for d in gs]
    return walks


def universal_groebner_basis(c: CompactClass) -> list:
    """Explicit binomials, written with the conventional sign (primed side first)."""
    if c.kind == 0:
        return []
    A = aux(c)
    m, n, k = c.m, c.n, c.k
    B = Binomial

    def within(p1, p2, size):
        return [B(p1[i] * p2[j], p2[i] * p1[j]) for i in range(size) for j in range(i + 1, size)]

    out = within(A.ep, A.epp, m)
    if c.kind == 2:
        x2 = Monomial.of(X) ** 2
        out += within(A.fp, A.fpp, n)
        out += [B(A.ep[i] * A.fp[j], A.epp[i] * x2 * A.fpp[j]) for i in range(m) for j in range(n)]
        if c.s:
            xp, xpp = A.xp, A.xpp
            out += [
                B(A.ep[i] * xpp**2 * A.fpp[j], A.epp[i] * xp**2 * A.fp[j])
                for i in range(m)
                for j in range(n)
            ]
            out += [B(A.ep[i] * xpp, A.epp[i] * xp * X) for i in range(m)]
            out += [B(A.fp[i] * xp, A.fpp[i] * xpp * X) for i in range(n)]
    elif c.kind == 3:
        x2, y2, z2 = (Monomial.of(v) ** 2 for v in (X, Y, Z))
        out += within(A.fp, A.fpp, n) + within(A.gp, A.gpp, k)
        out += [B(A.ep[i] * A.fp[j], A.epp[i] * x2 * A.fpp[j]) for i in range(m) for j in range(n)]
        out += [B(A.fp[i] * A.gp[j], A.fpp[i] * y2 * A.gpp[j]) for i in range(n) for j in range(k)]
        out += [B(A.gp[i] * A.ep[j], A.gpp[i] * z2 * A.epp[j]) for i in range(k) for j in range(m)]
        out += [B(A.ep[i] * y2 * A.fpp[j], A.epp[i] * z2 * A.fp[j]) for i in range(m) for j in range(n)]
        out += [B(A.fp[i] * z2 * A.gpp[j], A.fpp[i] * x2 * A.gp[j]) for i in range(n) for j in range(k)]
        out += [B(A.gp[i] * x2 * A.epp[j], A.gpp[i] * y2 * A.ep[j]) for i in range(k) for j in range(m)]
        out += [B(A.ep[i] * Y, A.epp[i] * Z * X) for i in range(m)]
        out += [B(A.fp[i] * Z, A.fpp[i] * X * Y) for i in range(n)]
        out += [B(A.gp[i] * X, A.gpp[i] * Y * Z) for i in range(k)]
    return out


def ugb_count(c: CompactClass) -> int:
    """Closed-form size of the universal Groebner basis."""
    from math import comb

    m, n, k = c.m, c.n, c.k
    if c.kind == 0:
        return 0
    if c.kind == 1:
        return comb(m, 2)
    if c.kind == 2:
        return comb(m, 2) + comb(n, 2) + m * n + ((m * n + m + n) if c.s else 0)
    return comb(m, 2) + comb(n, 2) + comb(k, 2) + 2 * (m * n + n * k + k * m) + m + n + k


# -- initial ideals -----------------------------------------------------------


def initial_generators(c: CompactClass) -> list:
    """Closed-form minimal generators of the initial ideal under the class's lex order."""
    if c.kind == 0:
        return []
    return initial_generators_from(aux(c), c.kind)


def initial_generators_from(A: Aux, kind: int) -> list:
    """Closed-form generators from auxiliary monomials; cycle lists may be empty."""
    m, n, k = len(A.ep), len(A.fp), len(A.gp)

    def tri(p1, p2, size):
        return [p2[i] * p1[j] for i in range(size) for j in range(i + 1, size)]

    out = tri(A.ep, A.epp, m)
    if kind == 2:
        out += tri(A.fp, A.fpp, n)
        out += [A.ep[i] * A.fp[j] for i in range(m) for j in range(n)]
        if A.xp is not None:
            out += [A.ep[i] * A.xpp for i in range(m)]
            out += [A.fp[i] * A.xp for i in range(n)]
    elif kind == 3:
        out += tri(A.fp, A.fpp, n) + tri(A.gp, A.gpp, k)
        out += [A.ep[i] * A.fp[j] for i in range(m) for j in range(n)]
        out += [A.fp[i] * A.gp[j] for i in range(n) for j in range(k)]
        out += [A.gp[i] * A.ep[j] for i in range(k) for j in range(m)]
        out += [a * Y for a in A.ep] + [b * Z for b in A.fp] + [d * X for d in A.gp]
    return out


def initial_ideal(c: CompactClass):
    from .betti import MonomialIdeal

    return MonomialIdeal.of(initial_generators(c))


def substitution_check(b: Binomial, labeling: dict) -> bool:
    """True iff both sides map to the same vertex monomial under edge -> endpoint product."""

    def image(m: Monomial) -> Counter:
        out = Counter()
        for v, a in m.exps:
            if v not in labeling:
                raise KeyError(f"unlabeled variable {v.name}")
            for x in labeling[v]:
                out[x] += a
        return out

    return image(b.plus) == image(b.minus)


__all__ = [
    "Aux",
    "Binomial",
    "E",
    "F",
    "G",
    "LexOrder",
    "Monomial",
    "Walk",
    "aux",
    "aux_monomials",
    "initial_generators",
    "initial_ideal",
    "leading_term",
    "primitive_even_closed_walks",
    "prod",
    "substitution_check",
    "ugb_count",
    "universal_groebner_basis",
]
