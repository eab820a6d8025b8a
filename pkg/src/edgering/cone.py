"""Edge cones: inequality systems, canonical-module generators and top graded Betti numbers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from .betti import BettiTable
from .classify import CompactClass, generate
from .graph import Graph
from .oracle import Refused


# -- vertex-set helpers on bitmasks ----------------------------------------------


class _Bits:
    def __init__(self, g: Graph):
        self.g = g
        self.n = len(g.vertices)
        idx = g.index
        self.nb = [0] * self.n
        for e in g.edges:
            a, b = (idx[x] for x in e)
            self.nb[a] |= 1 << b
            self.nb[b] |= 1 << a
        self.full = (1 << self.n) - 1

    def nbhd(self, mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= self.nb[low.bit_length() - 1]
            mask ^= low
        return out

    def components(self, mask):
        comps = []
        while mask:
            seed = mask & -mask
            comp = seed
            frontier = seed
            while frontier:
                frontier = self.nbhd(frontier) & mask & ~comp
                comp |= frontier
            comps.append(comp)
            mask &= ~comp
        return comps

    def has_odd_cycle(self, comp):
        """Connected vertex set ``comp``: BFS layering, odd cycle iff an edge inside a layer."""
        seed = comp & -comp
        seen = seed
        layer = seed
        while layer:
            m = layer
            while m:
                low = m & -m
                m ^= low
                if self.nb[low.bit_length() - 1] & layer:
                    return True
            layer = self.nbhd(layer) & comp & ~seen
            seen |= layer
        return False

    def names(self, mask):
        return [v for i, v in enumerate(self.g.vertices) if mask >> i & 1]

    def mask(self, vs):
        idx = self.g.index
        return sum(1 << idx[v] for v in vs)


def regular_vertices(g: Graph) -> frozenset:
    """Vertices whose removal leaves only components containing an odd cycle."""
    B = _Bits(g)
    out = []
    for i, v in enumerate(g.vertices):
        rest = B.full & ~(1 << i)
        if rest and all(B.has_odd_cycle(c) for c in B.components(rest)):
            out.append(v)
    return frozenset(out)


@dataclass(frozen=True)
class FundamentalSet:
    T: tuple
    N: tuple

    def to_json(self) -> dict:
        return {"T": list(self.T), "N": list(self.N)}


def _is_fundamental(B: _Bits, T: int) -> int | None:
    """Return N(T) if T is fundamental, else None (T assumed independent and nonempty)."""
    N = B.nbhd(T)
    # T ∪ N(T) with crossing edges connected: alternate T-side and N-side growth
    seed = T & -T
    reach_t, reach_n = seed, 0
    while True:
        new_n = B.nbhd(reach_t) & N & ~reach_n
        reach_n |= new_n
        new_t = B.nbhd(reach_n) & T & ~reach_t
        if not new_n and not new_t:
            break
        reach_t |= new_t
    if reach_t != T or reach_n != N:
        return None
    rest = B.full & ~(T | N)
    if any(not B.has_odd_cycle(c) for c in B.components(rest)):
        return None
    return N


def fundamental_sets(g: Graph, max_vertices: int = 24) -> list:
    """All fundamental sets, by brute force over independent sets."""
    if len(g.vertices) > max_vertices:
        raise Refused(f"{len(g.vertices)} vertices > bound {max_vertices}")
    B = _Bits(g)
    out = []

    def grow(T, start):
        if T:
            N = _is_fundamental(B, T)
            if N is not None:
                out.append(FundamentalSet(tuple(B.names(T)), tuple(B.names(N))))
        for i in range(start, B.n):
            if not (B.nb[i] & T):
                grow(T | (1 << i), i + 1)

    grow(0, 0)
    idx = g.index
    out.sort(key=lambda f: (len(f.T), [idx[v] for v in f.T]))
    return out


# -- inequality system -------------------------------------------------------------


@dataclass(frozen=True)
class Inequality:
    """``sum(coeffs[v] * x_v) >= 0``; ``kind`` is ``regular`` or ``fundamental``."""

    coeffs: tuple
    kind: str
    T: tuple = ()

    def value(self, vec: dict) -> int:
        return sum(c * vec.get(v, 0) for v, c in self.coeffs)


@dataclass(frozen=True)
class ConeSystem:
    vertices: tuple
    inequalities: tuple

    @property
    def matrix(self) -> np.ndarray:
        idx = {v: i for i, v in enumerate(self.vertices)}
        A = np.zeros((len(self.inequalities), len(self.vertices)), dtype=np.int64)
        for r, ineq in enumerate(self.inequalities):
            for v, c in ineq.coeffs:
                A[r, idx[v]] += c
        return A

    def values(self, vec: dict) -> np.ndarray:
        x = np.array([vec.get(v, 0) for v in self.vertices], dtype=np.int64)
        return self.matrix @ x


def cone_system(g: Graph, max_vertices: int = 24) -> ConeSystem:
    ineqs = [Inequality(((v, 1),), "regular") for v in g.vertices if v in regular_vertices(g)]
    for f in fundamental_sets(g, max_vertices):
        co = Counter({v: 1 for v in f.N})
        co.subtract({v: 1 for v in f.T})
        ineqs.append(Inequality(tuple(sorted(co.items(), key=lambda vc: g.index[vc[0]])), "fundamental", f.T))
    return ConeSystem(tuple(g.vertices), tuple(ineqs))


def _system(g, system):
    return system if system is not None else cone_system(g)


def in_cone(vec: dict, g: Graph, system: ConeSystem | None = None) -> bool:
    return bool(np.all(_system(g, system).values(vec) >= 0))


def in_relint(vec: dict, g: Graph, system: ConeSystem | None = None) -> bool:
    """All inequalities strict; valid since the cone is full-dimensional here."""
    return bool(np.all(_system(g, system).values(vec) > 0))


def edge_sum_vector(g: Graph) -> dict:
    """Sum of the incidence vectors of all edges (a strictly interior point when one exists)."""
    return {v: g.degree(v) for v in g.vertices}


def is_full_dimensional(g: Graph, system: ConeSystem | None = None) -> bool:
    return in_relint(edge_sum_vector(g), g, system)


# -- canonical generators --------------------------------------------------------


@dataclass(frozen=True)
class CanonicalVector:
    label: str
    coords: tuple  # (vertex, value) in graph order

    @property
    def as_dict(self) -> dict:
        return dict(self.coords)

    @property
    def degree(self) -> int:
        return sum(a for _, a in self.coords) // 2

    def to_json(self) -> dict:
        return {"label": self.label, "degree": self.degree, "vector": {v: a for v, a in self.coords if a}}


def canonical_generators(c: CompactClass) -> list:
    """Minimal relative-interior vectors on the model graph, one per canonical-module generator."""
    if c.kind == 0:
        return []
    g = generate(c)
    hubs = ("u", "v", "w")[: c.kind]
    base = {v: (0 if v in hubs else 1) for v in g.vertices}

    def vec(label, **hub_vals):
        d = dict(base)
        d.update(hub_vals)
        return CanonicalVector(label, tuple((v, d[v]) for v in g.vertices))

    out = []
    if c.kind == 1:
        out = [vec(f"alpha[{l}]", u=2 * l) for l in range(1, c.m)]
    elif c.kind == 2 and c.s == 0:
        out = [vec(f"alpha[{l}]", u=2 * l + 1, v=1) for l in range(0, c.m)]
        out += [vec(f"beta[{l}]", u=1, v=2 * l + 1) for l in range(1, c.n)]
    elif c.kind == 2:
        out = [vec(f"alpha[{l}]", u=2 * l, v=1) for l in range(1, c.m + 1)]
        out += [vec(f"beta[{l}]", u=1, v=2 * l) for l in range(1, c.n + 1)]
    else:
        out = [vec(f"alpha[{l}]", u=2 * l, v=1, w=1) for l in range(1, c.m + 1)]
        out += [vec(f"beta[{l}]", u=1, v=2 * l, w=1) for l in range(1, c.n + 1)]
        out += [vec(f"gamma[{l}]", u=1, v=1, w=2 * l) for l in range(1, c.k + 1)]
    return out


def minimality_oracle(vec: dict, g: Graph, system: ConeSystem | None = None, max_box: int = 6, max_vertices: int = 24) -> bool:
    """No split vec = w + (vec - w) with w a nonzero even-sum cone point and vec - w in the relative interior.

    Coordinates at regular vertices must stay >= 1 in vec - w, so w is 0 there when vec is 1.
    """
    if len(g.vertices) > max_vertices:
        raise Refused(f"{len(g.vertices)} vertices > bound {max_vertices}")
    if any(vec.get(v, 0) > max_box for v in g.vertices):
        raise Refused(f"coordinate above box bound {max_box}")
    S = _system(g, system)
    reg = regular_vertices(g)
    ranges = []
    for v in S.vertices:
        top = vec.get(v, 0) - (1 if v in reg else 0)
        if top < 0:
            return False  # not even in the relative interior
        ranges.append(range(top + 1))
    A = S.matrix
    target = np.array([vec.get(v, 0) for v in S.vertices], dtype=np.int64)
    chunk = []

    def flush():
        if not chunk:
            return False
        W = np.array(chunk, dtype=np.int64)
        ok_w = np.all(W @ A.T >= 0, axis=1)
        ok_r = np.all((target - W) @ A.T > 0, axis=1)
        even = W.sum(axis=1) % 2 == 0
        nonzero = W.any(axis=1)
        chunk.clear()
        return bool(np.any(ok_w & ok_r & even & nonzero))

    for w in product(*ranges):
        chunk.append(w)
        if len(chunk) >= 4096 and flush():
            return False
    return not flush()


def relint_low_degree_search(g: Graph, max_degree: int, system: ConeSystem | None = None, limit: int = 2_000_000) -> list:
    """All even-sum relative-interior lattice points of degree <= max_degree.

    Interior points are nonnegative with regular coordinates >= 1, so the search
    spreads the remaining budget over all coordinates.
    """
    S = _system(g, system)
    reg = regular_vertices(g)
    floor = np.array([1 if v in reg else 0 for v in S.vertices], dtype=np.int64)
    budget = 2 * max_degree - int(floor.sum())
    if budget < 0:
        return []
    n = len(S.vertices)
    A = S.matrix
    found = []
    count = 0

    def spread(pos, left, cur):
        nonlocal count
        if pos == n:
            x = floor + np.array(cur, dtype=np.int64)
            count += 1
            if count > limit:
                raise Refused(f"more than {limit} candidates")
            if int(x.sum()) % 2 == 0 and np.all(A @ x > 0):
                found.append({v: int(a) for v, a in zip(S.vertices, x)})
            return
        for a in range(left + 1):
            cur.append(a)
            spread(pos + 1, left - a, cur)
            cur.pop()

    spread(0, budget, [])
    return found


# -- top graded Betti numbers -------------------------------------------------------


def top_graded_betti(c: CompactClass) -> BettiTable:
    """Top row of the quotient's Betti table by duality with the canonical-module generators."""
    if c.kind == 0:
        raise ValueError("odd cycle: out of scope")
    pd = c.t - 1
    out = Counter()
    for v in canonical_generators(c):
        out[(pd, c.num_edges - v.degree)] += 1
    return BettiTable.of(out, "quotient")


def top_betti_closed_form(c: CompactClass) -> BettiTable:
    """The per-type closed-form top row (groups ordered so that m <= n <= k)."""
    if c.kind == 0:
        raise ValueError("odd cycle: out of scope")
    mat, m, n, k = c.matching_number, c.m, c.n, c.k
    out = Counter()
    if c.kind == 1:
        for l in range(1, m):
            out[mat + l] += 1
        pd = m - 1
    elif c.kind == 2 and c.s == 0:
        for l in range(1, n - m + 1):
            out[mat + m - 1 + l] += 1
        for l in range(1, m):
            out[mat + n - 1 + l] += 2
        out[mat + m + n - 1] += 1
        pd = m + n - 1
    elif c.kind == 2:
        for l in range(m + 1, n + 1):
            out[mat + l] += 1
        for l in range(1, m + 1):
            out[mat + n + l] += 2
        pd = m + n
    else:
        for l in range(1, k - n + 1):
            out[mat + n + m + l] += 1
        for l in range(1, n - m + 1):
            out[mat + m + k + l] += 2
        for l in range(1, m + 1):
            out[mat + k + n + l] += 3
        pd = m + n + k
    return BettiTable.of({(pd, j): b for j, b in out.items()}, "quotient")


# -- the type-3 catalogue ------------------------------------------------------------


def type3_fundamental_catalog(c: CompactClass, distinct: bool = True) -> list:
    """Fundamental sets of a type-3 model graph listed by hub/parity choices.

    With ``distinct=False`` the raw list of index tuples is returned, whose length is
    2^m + 2^n + 2^k + 3 * 2^(m+n+k); collapsed duplicates appear when a cycle has p_i = 1.
    """
    if c.kind != 3:
        raise ValueError("type 3 only")

    def part(hub, i, a, f):
        return [f"{hub}[{i},{j}]" for j in range(f, 2 * a + 1, 2)]

    def choices(hub, tup, trimmed=False):
        for fs in product((1, 2), repeat=len(tup)):
            s = []
            for i, (a, f) in enumerate(zip(tup, fs), 1):
                vs = part(hub, i, a, f)
                if trimmed:
                    vs = [v for v in vs if v not in (f"{hub}[{i},1]", f"{hub}[{i},{2 * a}]")]
                s += vs
            yield s

    raw = []
    raw += [frozenset(s) for s in choices("u", c.p)]
    raw += [frozenset(s) for s in choices("v", c.q)]
    raw += [frozenset(s) for s in choices("w", c.r)]
    groups = (("u", c.p), ("v", c.q), ("w", c.r))
    for h, (hub, tup) in enumerate(groups):
        others = [g for j, g in enumerate(groups) if j != h]
        for a in choices(hub, tup, trimmed=True):
            for b in choices(*others[0]):
                for d in choices(*others[1]):
                    raw.append(frozenset([hub] + a + b + d))
    if not distinct:
        return raw
    seen, out = set(), []
    for s in raw:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def type3_count_formula(c: CompactClass) -> int:
    return 2**c.m + 2**c.n + 2**c.k + 3 * 2 ** (c.m + c.n + c.k)
