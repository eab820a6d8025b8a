"""Independent ground truth: Buchberger on pure binomials, elimination, monomial Betti numbers."""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .betti import BettiTable, MonomialIdeal
from .classify import EdgeVar
from .graph import Graph
from .toric import Binomial, LexOrder, Monomial


class Refused(RuntimeError):
    """Input exceeds a configured bound."""


# -- pure binomial arithmetic ---------------------------------------------------
#
# Exponent vectors are tuples indexed from the largest variable down, so plain
# tuple comparison is the lexicographic order.


class _Ring:
    def __init__(self, variables):
        # variables: smallest to largest
        self.variables = tuple(variables)
        self.pos = {v: len(self.variables) - 1 - i for i, v in enumerate(self.variables)}
        self.n = len(self.variables)

    def vec(self, m: Monomial) -> tuple:
        out = [0] * self.n
        for v, a in m.exps:
            out[self.pos[v]] = a
        return tuple(out)

    def mono(self, vec) -> Monomial:
        names = {p: v for v, p in self.pos.items()}
        return Monomial.of({names[i]: a for i, a in enumerate(vec) if a})


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_add(m, lead, tail):
    return tuple(x - l + t for x, l, t in zip(m, lead, tail))


class _Basis:
    """Growing list of oriented binomials (lead > tail) with a divisibility index."""

    def __init__(self, n):
        self.leads = np.zeros((0, n), dtype=np.int32)
        self.items = []
        self.alive = []

    def add(self, lead, tail):
        self.items.append((lead, tail))
        self.alive.append(True)
        self.leads = np.vstack([self.leads, np.array(lead, dtype=np.int32)[None, :]])
        return len(self.items) - 1

    def divisor(self, m, skip=None):
        if not self.items:
            return None
        hits = np.flatnonzero(np.all(self.leads <= np.array(m, dtype=np.int32), axis=1))
        for h in hits:
            if self.alive[h] and h != skip:
                return int(h)
        return None

    def normal_form(self, m, skip=None):
        while True:
            h = self.divisor(m, skip)
            if h is None:
                return m
            lead, tail = self.items[h]
            m = _sub_add(m, lead, tail)


def _orient(a, b):
    if a == b:
        return None
    return (a, b) if a > b else (b, a)


@dataclass(frozen=True)
class GroebnerBasis:
    binomials: tuple
    order: tuple  # variables, smallest to largest
    reduced: bool = True

    def leading_terms(self) -> list:
        return [b.plus for b in self.binomials]

    def initial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal.of(self.leading_terms())

    def reduce(self, m: Monomial) -> Monomial:
        ring = _Ring(self.order)
        B = _Basis(ring.n)
        for b in self.binomials:
            B.add(ring.vec(b.plus), ring.vec(b.minus))
        return ring.mono(B.normal_form(ring.vec(m)))

    def reduces_to_zero(self, b: Binomial) -> bool:
        return self.reduce(b.plus) == self.reduce(b.minus)


def _complete(ring: _Ring, gens, max_pairs=None):
    B = _Basis(ring.n)
    pairs = []
    counter = 0

    def push(i, j):
        nonlocal counter
        li, lj = B.items[i][0], B.items[j][0]
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            return
        L = _lcm(li, lj)
        heapq.heappush(pairs, (sum(L), tuple(-x for x in L), counter, i, j))
        counter += 1

    def insert(lead, tail):
        idx = B.add(lead, tail)
        for h in range(idx):
            if B.alive[h]:
                push(h, idx)
        return idx

    for b in gens:
        a, c = ring.vec(b.plus), ring.vec(b.minus)
        a, c = B.normal_form(a), B.normal_form(c)
        o = _orient(a, c)
        if o:
            insert(*o)
    done = 0
    while pairs:
        _, negL, _, i, j = heapq.heappop(pairs)
        L = tuple(-x for x in negL)
        li, ti = B.items[i]
        lj, tj = B.items[j]
        s1 = _sub_add(L, li, ti)
        s2 = _sub_add(L, lj, tj)
        a, c = B.normal_form(s1), B.normal_form(s2)
        o = _orient(a, c)
        if o:
            insert(*o)
        done += 1
        if max_pairs and done > max_pairs:
            raise Refused(f"more than {max_pairs} S-pairs")
    return B


def _reduce_basis(ring: _Ring, B: _Basis) -> list:
    items = [it for it, alive in zip(B.items, B.alive) if alive]
    # drop elements whose lead is divisible by another lead
    items.sort()
    keep = []
    for k, (lead, tail) in enumerate(items):
        dominated = False
        for k2, (l2, _) in enumerate(items):
            if k2 != k and all(x <= y for x, y in zip(l2, lead)) and (l2 != lead or k2 < k):
                dominated = True
                break
        if not dominated:
            keep.append((lead, tail))
    R = _Basis(ring.n)
    for lead, tail in keep:
        R.add(lead, tail)
    out = []
    for h, (lead, tail) in enumerate(keep):
        t = R.normal_form(tail)
        out.append((lead, t))
    out.sort(key=lambda lt: (sum(lt[0]), lt[0]))
    return out


def buchberger(gens, order, max_pairs=None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal generated by pure-difference binomials under lex."""
    variables = tuple(order.variables if isinstance(order, LexOrder) else order)
    ring = _Ring(variables)
    B = _complete(ring, gens, max_pairs)
    red = _reduce_basis(ring, B)
    bins = tuple(Binomial(ring.mono(l), ring.mono(t), True) for l, t in red)
    return GroebnerBasis(bins, variables, True)


def is_groebner(gens, order) -> bool:
    """Buchberger criterion: every S-pair of ``gens`` reduces to zero modulo ``gens``."""
    variables = tuple(order.variables if isinstance(order, LexOrder) else order)
    ring = _Ring(variables)
    B = _Basis(ring.n)
    for b in gens:
        o = _orient(ring.vec(b.plus), ring.vec(b.minus))
        B.add(*o)
    items = list(B.items)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            li, ti = items[i]
            lj, tj = items[j]
            if all(a == 0 or b == 0 for a, b in zip(li, lj)):
                continue
            L = _lcm(li, lj)
            a = B.normal_form(_sub_add(L, li, ti))
            c = B.normal_form(_sub_add(L, lj, tj))
            if a != c:
                return False
    return True


def ideals_equal(gens1, gens2, order) -> bool:
    """Mutual reduction: every generator of each side reduces to zero modulo the other's basis."""
    g1 = buchberger(gens1, order)
    g2 = buchberger(gens2, order)
    return all(g2.reduces_to_zero(b) for b in gens1) and all(g1.reduces_to_zero(b) for b in gens2)


def toric_ideal_via_elimination(g: Graph, labeling: dict, order, max_vars: int = 26) -> GroebnerBasis:
    """Kernel of edge -> product of endpoints, by lex elimination of the vertex variables.

    ``labeling`` maps EdgeVar -> (a, b); ``order`` lists the edge variables smallest first.
    """
    edge_vars = tuple(order.variables if isinstance(order, LexOrder) else order)
    total = len(g.vertices) + len(edge_vars)
    if total > max_vars:
        raise Refused(f"{total} variables > bound {max_vars}")
    vert_vars = [EdgeVar("t", i + 1) for i in range(len(g.vertices))]
    tvar = dict(zip(g.vertices, vert_vars))
    variables = edge_vars + tuple(reversed(vert_vars))
    gens = []
    for e in edge_vars:
        a, b = labeling[e]
        gens.append(Binomial(Monomial.of(e), Monomial.of({tvar[a]: 1}) * Monomial.of(tvar[b])))
    full = buchberger(gens, variables)
    keep = [b for b in full.binomials if not any(v.family == "t" for v in b.plus.support | b.minus.support)]
    return GroebnerBasis(tuple(keep), edge_vars, True)


# -- monomial Betti numbers ------------------------------------------------------


def _polarize(I: MonomialIdeal):
    """Squarefree generator supports over polarized variables; returns (masks, nvars)."""
    width = Counter()
    for g in I.gens:
        for v, a in g.exps:
            width[v] = max(width[v], a)
    index = {}
    for v in sorted(width):
        for k in range(width[v]):
            index[(v, k)] = len(index)
    masks = []
    for g in I.gens:
        m = 0
        for v, a in g.exps:
            for k in range(a):
                m |= 1 << index[(v, k)]
        masks.append(m)
    return masks, len(index)


def _compress(masks, nvars):
    """Merge variables lying in exactly the same generators; returns (masks, weights)."""
    groups = defaultdict(list)
    for x in range(nvars):
        sig = tuple(k for k, m in enumerate(masks) if m >> x & 1)
        groups[sig].append(x)
    sigs = sorted(groups)
    weights = [len(groups[s]) for s in sigs]
    new = []
    for k in range(len(masks)):
        m = 0
        for c, s in enumerate(sigs):
            if k in s:
                m |= 1 << c
        new.append(m)
    return new, weights


def _lcm_lattice(masks):
    lat = {0}
    for g in masks:
        lat |= {x | g for x in lat}
    lat.discard(0)
    return lat


def _faces_avoiding(b, gens):
    """Subsets of ``b`` containing no generator, grouped by size."""
    verts = [1 << i for i in range(b.bit_length()) if b >> i & 1]
    out = defaultdict(list)

    def grow(face, start):
        out[bin(face).count("1")].append(face)
        for k in range(start, len(verts)):
            f2 = face | verts[k]
            if any(g & f2 == g for g in gens):
                continue
            grow(f2, k + 1)

    grow(0, 0)
    return out


def _rank(rows, p):
    """Rank of a sparse matrix given as list of {col: int}; p = 0 means exact over Q."""
    rows = [dict(r) for r in rows if r]
    if p:
        rows = [{c: v % p for c, v in r.items() if v % p} for r in rows]
        rows = [r for r in rows if r]
    pivots = {}
    rank = 0
    for r in rows:
        while r:
            c = min(r)
            if c not in pivots:
                if p:
                    inv = pow(r[c], p - 2, p)
                    r = {k: v * inv % p for k, v in r.items()}
                else:
                    a = r[c]
                    r = {k: Fraction(v, 1) / a for k, v in r.items()}
                pivots[c] = r
                rank += 1
                break
            prow = pivots[c]
            f = r[c]
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def _reduced_homology(faces, p):
    """Reduced Betti numbers of a simplicial complex given by faces grouped by size."""
    sizes = sorted(faces)
    index = {s: {f: i for i, f in enumerate(faces[s])} for s in sizes}
    ranks = {}
    for s in sizes:
        if s == 0 or s - 1 not in index:
            ranks[s] = 0
            continue
        rows = []
        lower = index[s - 1]
        for f in faces[s]:
            row = {}
            sign = 1
            bits = f
            while bits:
                low = bits & -bits
                bits ^= low
                row[lower[f ^ low]] = sign
                sign = -sign
            rows.append(row)
        ranks[s] = _rank(rows, p)
    out = {}
    for s in sizes:
        h = len(faces[s]) - ranks[s] - ranks.get(s + 1, 0)
        if h:
            out[s - 1] = h  # dimension of a face with s vertices is s-1
    return out


def monomial_betti_oracle(I: MonomialIdeal, char: int = 0, max_gens: int = 16) -> BettiTable:
    """Graded Betti numbers of I from per-multidegree simplicial homology.

    For each lcm-lattice element b, β_{i,b} is the reduced homology in degree
    |b|-i-2 of the complex of subsets of b that contain no generator; the
    variables are first polarized and merged when they occur in the same
    generators, which leaves Betti numbers unchanged up to the weighting.
    """
    if char < 0 or (char and any(char % d == 0 for d in range(2, int(char**0.5) + 1))) or char == 1:
        raise ValueError("characteristic must be 0 or a prime")
    if len(I.gens) > max_gens:
        raise Refused(f"{len(I.gens)} generators > bound {max_gens}")
    if not I.gens:
        return BettiTable.of({})
    if any(g.degree == 0 for g in I.gens):
        return BettiTable.of({(0, 0): 1})  # unit ideal is free of rank one
    masks, nvars = _polarize(I)
    masks, weights = _compress(masks, nvars)
    out = Counter()
    for b in sorted(_lcm_lattice(masks)):
        inside = [g for g in masks if g & b == g]
        faces = _faces_avoiding(b, inside)
        nb = bin(b).count("1")
        j = sum(w for c, w in enumerate(weights) if b >> c & 1)
        for dim, h in _reduced_homology(faces, char).items():
            i = nb - dim - 2
            out[(i, j)] += h
    return BettiTable.of(out)


# -- coincidence criterion -------------------------------------------------------


@dataclass(frozen=True)
class Coincidence:
    verdict: str  # Coincide | Inconclusive
    overlaps: tuple = ()
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "overlaps": [{"j": j, "rows": list(rows)} for j, rows in self.overlaps],
            "reason": self.reason,
        }


def betti_coincidence_check(m: int, p: int) -> Coincidence:
    """Equal-parameter type-1 graphs: can I_G and J_G be shown to share graded Betti numbers?

    Rows i of J's table are supported on A_i = {(i+2)p + l : l = 1..i+1}. A degree
    j lying in one A_i is settled by the alternating Hilbert-series identity; a
    degree shared by several rows is settled only if all but one of them is the
    top row i = m-2, where the two tables are known to agree.
    """
    if m < 2 or p < 1:
        raise ValueError("need m >= 2, p >= 1")
    rows = defaultdict(list)
    for i in range(0, m - 1):
        for l in range(1, i + 2):
            rows[(i + 2) * p + l].append(i)
    overlaps = tuple((j, tuple(r)) for j, r in sorted(rows.items()) if len(r) > 1)
    unresolved = [(j, r) for j, r in overlaps if len([i for i in r if i != m - 2]) > 1]
    if not overlaps:
        return Coincidence("Coincide", (), "rows occupy disjoint degrees")
    if not unresolved:
        return Coincidence("Coincide", overlaps, "each shared degree involves the top row")
    return Coincidence("Inconclusive", overlaps, f"degree {unresolved[0][0]} shared by rows {list(unresolved[0][1])}")
