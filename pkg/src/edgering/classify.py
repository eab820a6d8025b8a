"""Compactness test, classification into types 0-3, model graphs and edge labelings.

Model graphs use the vertex names ``u, u[i,j], v, v[i,j], w, w[i,j]`` (types 1 and 3)
and ``w[1] .. w[s-1]`` for the even path of a type-2 graph. Edge variables are
``e[i,j]``, ``f[i,j]``, ``g[i,j]`` on the odd cycles through the hubs ``u, v, w``,
``x = {u,v}``, ``y = {v,w}``, ``z = {w,u}`` and ``x[1] .. x[s]`` along the path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .graph import (
    Cycle,
    Graph,
    connected_components,
    cycles_bridged,
    has_even_cycle,
    odd_cycle_condition,
)

_FAMILY_RANK = {"e": 0, "f": 1, "g": 2, "x": 3, "xpath": 4, "y": 5, "z": 6, "t": 7}


class ClassifyError(ValueError):
    """Input outside the classifier's domain (empty or unpruned graph)."""


@dataclass(frozen=True, order=False)
class EdgeVar:
    """An edge variable: ``e[i,j]``, ``x``, ``x[i]`` (family ``xpath``) and so on.

    Family ``t`` (``t[i]``) is reserved for vertex variables during elimination.
    """

    family: str
    i: int | None = None
    j: int | None = None

    @property
    def name(self) -> str:
        if self.family == "xpath":
            return f"x[{self.i}]"
        if self.family == "t":
            return f"t[{self.i}]"
        if self.i is None:
            return self.family
        return f"{self.family}[{self.i},{self.j}]"

    @property
    def sort_key(self) -> tuple:
        return (_FAMILY_RANK[self.family], self.i or 0, self.j or 0)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"EdgeVar({self.name})"

    @classmethod
    def parse(cls, name: str) -> EdgeVar:
        if "[" not in name:
            return cls(name)
        fam, rest = name.split("[", 1)
        idx = [int(t) for t in rest.rstrip("]").split(",")]
        if fam == "x":
            return cls("xpath", idx[0])
        if fam == "t":
            return cls("t", idx[0])
        return cls(fam, idx[0], idx[1])


def E(i, j):
    return EdgeVar("e", i, j)


def F(i, j):
    return EdgeVar("f", i, j)


def G(i, j):
    return EdgeVar("g", i, j)


X, Y, Z = EdgeVar("x"), EdgeVar("y"), EdgeVar("z")


def XP(i):
    return EdgeVar("xpath", i)


def _sorted_desc(t) -> tuple:
    return tuple(sorted((int(a) for a in t), reverse=True))


def _group_key(t: tuple) -> tuple:
    return (len(t), t)


@dataclass(frozen=True)
class CompactClass:
    """Normalized classification of a compact graph.

    ``vertex_map`` sends model vertex names to input labels (identity for model
    graphs). ``ties`` flags that equal branches or groups were ordered by the
    input-order convention.
    """

    kind: int
    p: tuple = ()
    q: tuple = ()
    r: tuple = ()
    s: int = 0
    vertex_map: tuple | None = field(default=None, compare=False)
    ties: bool = field(default=False, compare=False)

    def __post_init__(self):
        k = self.kind
        if k not in (0, 1, 2, 3):
            raise ValueError(f"unknown type {k}")
        for name in ("p", "q", "r"):
            t = getattr(self, name)
            if any(a < 1 for a in t):
                raise ValueError(f"{name} entries must be positive")
            if tuple(t) != _sorted_desc(t):
                raise ValueError(f"{name} must be sorted non-increasing")
        if k == 0 and (len(self.p) != 1 or self.q or self.r or self.s):
            raise ValueError("type 0 carries a single half-length p=(p,)")
        if k == 1 and (len(self.p) < 2 or self.q or self.r or self.s):
            raise ValueError("type 1 needs |p| >= 2 and nothing else")
        if k == 2:
            if not self.p or not self.q or self.r:
                raise ValueError("type 2 needs non-empty p and q")
            if self.s < 0 or self.s % 2:
                raise ValueError("s must be even and >= 0")
            if _group_key(self.p) > _group_key(self.q):
                raise ValueError("type 2 groups must satisfy p <= q")
        if k == 3:
            if not (self.p and self.q and self.r) or self.s:
                raise ValueError("type 3 needs non-empty p, q, r")
            if not _group_key(self.p) <= _group_key(self.q) <= _group_key(self.r):
                raise ValueError("type 3 groups must satisfy p <= q <= r")

    # -- constructors that normalize ------------------------------------

    @classmethod
    def type0(cls, length: int) -> CompactClass:
        if length < 3 or length % 2 == 0:
            raise ValueError("type 0 is an odd cycle")
        return cls(0, p=((length - 1) // 2,))

    @classmethod
    def type1(cls, p) -> CompactClass:
        return cls(1, p=_sorted_desc(p))

    @classmethod
    def type2(cls, p, q, s=0) -> CompactClass:
        a, b = sorted((_sorted_desc(p), _sorted_desc(q)), key=_group_key)
        return cls(2, p=a, q=b, s=int(s))

    @classmethod
    def type3(cls, p, q, r) -> CompactClass:
        a, b, c = sorted((_sorted_desc(p), _sorted_desc(q), _sorted_desc(r)), key=_group_key)
        return cls(3, p=a, q=b, r=c)

    # -- derived quantities ---------------------------------------------

    @property
    def m(self) -> int:
        return len(self.p)

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def k(self) -> int:
        return len(self.r)

    @property
    def t(self) -> int:
        """Number of induced cycles."""
        if self.kind == 0:
            return 1
        if self.kind == 1:
            return self.m
        if self.kind == 2:
            return self.m + self.n + (1 if self.s else 0)
        return self.m + self.n + self.k + 1

    @property
    def matching_number(self) -> int:
        sp, sq, sr = sum(self.p), sum(self.q), sum(self.r)
        if self.kind in (0, 1):
            return sp
        if self.kind == 2:
            return sp + sq + (self.s // 2 if self.s else 1)
        return sp + sq + sr + 1

    @property
    def num_vertices(self) -> int:
        base = 2 * (sum(self.p) + sum(self.q) + sum(self.r)) + self.kind
        if self.kind == 0:
            return base + 1
        if self.kind == 2 and self.s:
            base += self.s - 1
        return base

    @property
    def num_edges(self) -> int:
        cyc = sum(2 * a + 1 for a in self.p + self.q + self.r)
        return cyc + {0: 0, 1: 0, 2: 1 + self.s, 3: 3}[self.kind]

    @property
    def hubs(self) -> tuple:
        names = ("u", "v", "w")[: max(self.kind, 1)]
        return tuple(self.map_vertex(x) for x in names)

    def map_vertex(self, name):
        if self.vertex_map is None:
            return name
        return dict(self.vertex_map)[name]

    @cached_property
    def model_labeling(self) -> dict:
        """EdgeVar -> model edge (pair of model vertex names)."""
        return _model_labeling(self)

    @property
    def labeling(self) -> dict:
        """EdgeVar -> edge of the classified graph (pair of input labels)."""
        vm = dict(self.vertex_map) if self.vertex_map is not None else None
        out = {}
        for var, (a, b) in self.model_labeling.items():
            out[var] = (vm[a], vm[b]) if vm else (a, b)
        return out

    def to_json(self) -> dict:
        d = {"type": self.kind, "p": list(self.p)}
        if self.kind >= 2:
            d["q"] = list(self.q)
        if self.kind == 2:
            d["s"] = self.s
        if self.kind == 3:
            d["r"] = list(self.r)
        return d

    def labeling_json(self) -> dict:
        return {var.name: f"({a},{b})" for var, (a, b) in sorted(self.labeling.items())}

    def __str__(self):
        fmt = lambda t: "(" + ",".join(map(str, t)) + ")"
        if self.kind == 0:
            return f"odd cycle C_{2 * self.p[0] + 1}"
        if self.kind == 1:
            return f"A_{fmt(self.p)}"
        if self.kind == 2:
            return f"B^{self.s}_{fmt(self.p)}:{fmt(self.q)}"
        return f"C_{fmt(self.p)}:{fmt(self.q)}:{fmt(self.r)}"


@dataclass(frozen=True)
class NotCompact:
    """Rejection with a checkable witness.

    ``reason`` is one of ``disconnected``, ``even-cycle``, ``odd-cycle-condition``
    or ``structure``.
    """

    reason: str
    witness: object = None
    detail: str = ""

    def verify(self, g: Graph) -> bool:
        """Re-check the witness against ``g``."""
        if self.reason == "disconnected":
            comps = [frozenset(c) for c in self.witness]
            cover = [v for c in comps for v in c]
            if len(comps) < 2 or sorted(cover) != sorted(g.vertices):
                return False
            side = {v: i for i, c in enumerate(comps) for v in c}
            return all(len({side[v] for v in e}) == 1 for e in g.edges)
        if self.reason == "even-cycle":
            c = self.witness
            return c.is_valid_in(g) and not c.is_odd
        if self.reason == "odd-cycle-condition":
            c1, c2 = self.witness
            return c1.is_valid_in(g) and c2.is_valid_in(g) and not cycles_bridged(c1, c2, g)
        return self.reason == "structure"

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, Cycle):
            w = list(w.vertices)
        elif isinstance(w, tuple) and w and isinstance(w[0], Cycle):
            w = [list(c.vertices) for c in w]
        return {"reason": self.reason, "witness": w, "detail": self.detail}


# -- model graphs ------------------------------------------------------------


def _branch_edges(hub, letter, fam, tup):
    out = {}
    for i, a in enumerate(tup, 1):
        vs = [f"{hub}[{i},{j}]" for j in range(1, 2 * a + 1)]
        chain = [hub] + vs + [hub]
        for j in range(2 * a + 1):
            out[EdgeVar(fam, i, j + 1)] = (chain[j], chain[j + 1])
    return out


def _model_labeling(c: CompactClass) -> dict:
    lab = {}
    lab.update(_branch_edges("u", "u", "e", c.p))
    if c.kind == 2:
        lab.update(_branch_edges("v", "v", "f", c.q))
        lab[X] = ("u", "v")
        if c.s:
            path = ["u"] + [f"w[{i}]" for i in range(1, c.s)] + ["v"]
            for i in range(c.s):
                lab[XP(i + 1)] = (path[i], path[i + 1])
    if c.kind == 3:
        lab.update(_branch_edges("v", "v", "f", c.q))
        lab.update(_branch_edges("w", "w", "g", c.r))
        lab[X] = ("u", "v")
        lab[Y] = ("v", "w")
        lab[Z] = ("w", "u")
    return lab


def _model_vertices(c: CompactClass) -> list:
    def block(hub, tup):
        return [hub] + [f"{hub}[{i},{j}]" for i, a in enumerate(tup, 1) for j in range(1, 2 * a + 1)]

    vs = block("u", c.p)
    if c.kind == 2:
        vs += block("v", c.q) + [f"w[{i}]" for i in range(1, c.s)]
    if c.kind == 3:
        vs += block("v", c.q) + block("w", c.r)
    return vs


def generate(c: CompactClass) -> Graph:
    """The model graph of a class, with canonical vertex names."""
    return Graph(tuple(_model_vertices(c)), frozenset(frozenset(e) for e in c.model_labeling.values()))


def lex_order(c: CompactClass) -> list:
    """Edge variables from smallest to largest in the class's lexicographic order."""
    es = [E(i, j) for i, a in enumerate(c.p, 1) for j in range(1, 2 * a + 2)]
    fs = [F(i, j) for i, a in enumerate(c.q, 1) for j in range(1, 2 * a + 2)]
    gs = [G(i, j) for i, a in enumerate(c.r, 1) for j in range(1, 2 * a + 2)]
    if c.kind in (0, 1):
        return es
    if c.kind == 2:
        return es + [X] + [XP(i) for i in range(1, c.s + 1)] + fs
    return es + [X, Z, Y] + fs + gs


# -- classification ----------------------------------------------------------


def big_vertices(g: Graph) -> frozenset:
    return frozenset(v for v in g.vertices if g.degree(v) >= 3)


def classify(g0: Graph):
    """Classify a pruned graph: a :class:`CompactClass` or a :class:`NotCompact`."""
    if not g0.vertices:
        raise ClassifyError("empty graph (input pruned to nothing)")
    low = [v for v in g0.vertices if g0.degree(v) < 2]
    if low:
        raise ClassifyError(f"vertex {low[0]!r} has degree < 2; prune leaves first")
    comps = connected_components(g0)
    if len(comps) > 1:
        return NotCompact("disconnected", comps, f"{len(comps)} components")
    even, cyc = has_even_cycle(g0)
    if even:
        return NotCompact("even-cycle", cyc, f"cycle of length {cyc.length}")
    ok, pair = odd_cycle_condition(g0)
    if not ok:
        return NotCompact("odd-cycle-condition", pair, "cycles neither meet nor are joined by an edge")
    try:
        c = _decompose(g0)
    except _Mismatch as exc:
        return NotCompact("structure", None, str(exc))
    model = generate(c).relabel(dict(c.vertex_map))
    if model.edges != g0.edges or set(model.vertices) != set(g0.vertices):
        return NotCompact("structure", None, "graph does not match its model")
    return c


class _Mismatch(Exception):
    pass


def _decompose(g: Graph) -> CompactClass:
    idx = g.index
    big = sorted(big_vertices(g), key=idx.__getitem__)
    h = len(big)
    if h == 0:
        return _decompose_cycle(g)
    if h > 3:
        raise _Mismatch(f"{h} vertices of degree >= 3")
    for i, a in enumerate(big):
        for b in big[i + 1 :]:
            if not g.has_edge(a, b):
                raise _Mismatch(f"big vertices {a!r} and {b!r} are not adjacent")
    hubset = set(big)
    rest = g.without(big)
    branches = {b: [] for b in big}
    bridges = []
    for comp in connected_components(rest):
        path = _as_path(rest, comp)
        ends = [path[0], path[-1]]
        for v in path[1:-1]:
            if g.neighbors(v) & hubset:
                raise _Mismatch(f"inner path vertex {v!r} touches a big vertex")
        if len(path) == 1:
            hs = sorted(g.neighbors(path[0]) & hubset, key=idx.__getitem__)
            if len(hs) != 2:
                raise _Mismatch(f"vertex {path[0]!r} hangs off {len(hs)} big vertices")
            bridges.append((hs, path))
            continue
        h0 = g.neighbors(ends[0]) & hubset
        h1 = g.neighbors(ends[1]) & hubset
        if len(h0) != 1 or len(h1) != 1:
            raise _Mismatch("path end not attached to exactly one big vertex")
        (a,), (b,) = h0, h1
        if a == b:
            if len(path) % 2:
                raise _Mismatch("even branch cycle")
            if idx[path[0]] > idx[path[-1]]:
                path = path[::-1]
            branches[a].append(path)
        else:
            if len(path) % 2 == 0:
                raise _Mismatch("odd connecting path")
            if idx[a] > idx[b]:
                a, b = b, a
            if path[0] not in g.neighbors(a):
                path = path[::-1]
            bridges.append(([a, b], path))

    for hub in big:
        if not branches[hub]:
            raise _Mismatch(f"big vertex {hub!r} lies on no branch cycle")
        branches[hub].sort(key=lambda pth: (-len(pth), idx[pth[0]]))

    ties = False
    for hub in big:
        lens = [len(pth) for pth in branches[hub]]
        ties |= len(set(lens)) < len(lens)

    def tup(hub):
        return tuple(len(pth) // 2 for pth in branches[hub])

    groups = sorted(big, key=lambda hub: (_group_key(tup(hub)), idx[hub]))
    keys = [_group_key(tup(hub)) for hub in groups]
    ties |= len(set(keys)) < len(keys)

    if h == 1:
        if bridges:
            raise _Mismatch("stray path")
        kind, s = 1, 0
    elif h == 2:
        if len(bridges) > 1:
            raise _Mismatch("more than one path between the big vertices")
        kind = 2
        s = len(bridges[0][1]) + 1 if bridges else 0
    else:
        if bridges:
            raise _Mismatch("type 3 graphs have no connecting paths")
        kind, s = 3, 0

    vmap = {}
    for hub, name in zip(groups, ("u", "v", "w")):
        vmap[name] = hub
        for i, pth in enumerate(branches[hub], 1):
            for j, vtx in enumerate(pth, 1):
                vmap[f"{name}[{i},{j}]"] = vtx
    if kind == 2 and s:
        (_, path) = bridges[0]
        if path[0] not in g.neighbors(groups[0]):
            path = path[::-1]
        for i, vtx in enumerate(path, 1):
            vmap[f"w[{i}]"] = vtx
    tuples = [tup(hub) for hub in groups]
    c = CompactClass(
        kind,
        p=tuples[0],
        q=tuples[1] if kind >= 2 else (),
        r=tuples[2] if kind == 3 else (),
        s=s,
        vertex_map=tuple(vmap.items()),
        ties=ties,
    )
    return c


def _decompose_cycle(g: Graph) -> CompactClass:
    idx = g.index
    n = len(g.vertices)
    if n % 2 == 0 or len(g.edges) != n:
        raise _Mismatch("degree-2 graph is not an odd cycle")
    start = g.vertices[0]
    first = min(g.neighbors(start), key=idx.__getitem__)
    order = [start, first]
    while len(order) < n:
        nxt = [w for w in g.neighbors(order[-1]) if w != order[-2]]
        order.append(nxt[0])
    vmap = {"u": start}
    for j, vtx in enumerate(order[1:], 1):
        vmap[f"u[1,{j}]"] = vtx
    return CompactClass(0, p=((n - 1) // 2,), vertex_map=tuple(vmap.items()))


def _as_path(rest: Graph, comp: list) -> list:
    sub = rest.subgraph(comp)
    if len(sub.edges) != len(comp) - 1 or any(sub.degree(v) > 2 for v in comp):
        raise _Mismatch("component of the non-hub part is not a path")
    if len(comp) == 1:
        return list(comp)
    ends = [v for v in comp if sub.degree(v) == 1]
    start = min(ends, key=rest.index.__getitem__)
    path = [start]
    prev = None
    while len(path) < len(comp):
        nxt = [w for w in sub.neighbors(path[-1]) if w != prev]
        prev = path[-1]
        path.append(nxt[0])
    return path
