"""Simple graphs, cycle analytics, leaf pruning and matching numbers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path


class GraphError(ValueError):
    """Malformed graph document."""


@dataclass(frozen=True)
class Graph:
    """Labeled simple graph. Vertex order is the document order."""

    vertices: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("repeated vertex label")
        known = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"loop edge {sorted(e)}")
            if not e <= known:
                raise GraphError(f"unknown endpoint in edge {sorted(e)}")

    @classmethod
    def from_edges(cls, edges, vertices=None) -> Graph:
        """Build from an edge list; vertices default to first-appearance order."""
        edges = [tuple(e) for e in edges]
        if vertices is None:
            seen = {}
            for a, b in edges:
                seen.setdefault(a, None)
                seen.setdefault(b, None)
            vertices = list(seen)
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v) -> frozenset:
        return self.adjacency[v]

    def degree(self, v) -> int:
        return len(self.adjacency[v])

    def has_edge(self, a, b) -> bool:
        return frozenset((a, b)) in self.edges

    def edge_list(self) -> list:
        """Edges as (a, b) pairs with a before b, sorted by vertex order."""
        idx = self.index
        pairs = [tuple(sorted(e, key=idx.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda ab: (idx[ab[0]], idx[ab[1]]))

    def subgraph(self, keep) -> Graph:
        keep = set(keep)
        return Graph(
            tuple(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e <= keep),
        )

    def without(self, drop) -> Graph:
        drop = set(drop)
        return self.subgraph(v for v in self.vertices if v not in drop)

    def relabel(self, mapping: dict) -> Graph:
        return Graph(
            tuple(mapping[v] for v in self.vertices),
            frozenset(frozenset(mapping[x] for x in e) for e in self.edges),
        )

    def __len__(self):
        return len(self.vertices)

    def to_document(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edge_list()]}


@dataclass(frozen=True)
class Cycle:
    """A simple cycle given by its closed vertex sequence (first vertex not repeated)."""

    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def is_odd(self) -> bool:
        return self.length % 2 == 1

    def edges(self) -> list:
        vs = self.vertices
        return [frozenset((vs[i], vs[(i + 1) % len(vs)])) for i in range(len(vs))]

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def is_valid_in(self, g: Graph) -> bool:
        return (
            self.length >= 3
            and len(set(self.vertices)) == self.length
            and all(e in g.edges for e in self.edges())
        )


# -- parsing -----------------------------------------------------------------


def parse_graph(document) -> Graph:
    """Parse a graph document: a JSON object (dict or text) or an edge-list text."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    if isinstance(document, str):
        stripped = document.lstrip()
        if stripped.startswith("{"):
            try:
                document = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise GraphError(f"invalid JSON: {exc}") from exc
        else:
            return _parse_edge_list(document)
    if not isinstance(document, dict) or "edges" not in document:
        raise GraphError("graph document must be an object with 'edges'")
    raw_edges = document["edges"]
    vertices = document.get("vertices")
    if vertices is None:
        vertices = []
        for e in raw_edges:
            for x in e:
                if x not in vertices:
                    vertices.append(x)
    vertices = [str(v) for v in vertices]
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex label")
    known = set(vertices)
    seen = set()
    for e in raw_edges:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise GraphError(f"edge must be a pair: {e!r}")
        a, b = str(e[0]), str(e[1])
        if a == b:
            raise GraphError(f"loop edge ({a},{b})")
        for x in (a, b):
            if x not in known:
                raise GraphError(f"unknown endpoint {x!r} in edge ({a},{b})")
        key = frozenset((a, b))
        if key in seen:
            raise GraphError(f"duplicate edge ({a},{b})")
        seen.add(key)
    return Graph(tuple(vertices), frozenset(seen))


def _parse_edge_list(text: str) -> Graph:
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append(parts)
    return parse_graph({"edges": edges})


def load_graph(path) -> Graph:
    return parse_graph(Path(path).read_bytes())


# -- structure ---------------------------------------------------------------


def prune_leaves(g: Graph):
    """Delete degree-1 vertices round by round, then isolated vertices.

    Returns ``(g0, removed)`` with ``removed`` in deletion order.
    """
    alive = set(g.vertices)
    deg = {v: g.degree(v) for v in g.vertices}
    removed = []
    while True:
        leaves = [v for v in g.vertices if v in alive and deg[v] == 1]
        if not leaves:
            break
        for v in leaves:
            alive.discard(v)
            removed.append(v)
            for w in g.neighbors(v):
                if w in alive:
                    deg[w] -= 1
    for v in g.vertices:
        if v in alive and deg[v] == 0:
            alive.discard(v)
            removed.append(v)
    return g.subgraph(alive), removed


def connected_components(g: Graph) -> list:
    """Vertex lists of the components, each in graph order."""
    seen = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        seen.add(s)
        stack, comp = [s], {s}
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append([v for v in g.vertices if v in comp])
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def is_bipartite(g: Graph) -> bool:
    color = {}
    for s in g.vertices:
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


# -- cycles ------------------------------------------------------------------


def enumerate_cycles(g: Graph) -> list:
    """All simple cycles, one canonical representative each.

    A cycle starts at its least vertex (graph order) and runs in the
    direction whose second vertex is smaller than its last.
    """
    idx = g.index
    nbrs = {v: sorted(g.neighbors(v), key=idx.__getitem__) for v in g.vertices}
    out = []
    for s in g.vertices:
        si = idx[s]
        path = [s]
        on_path = {s}

        def extend(v):
            for w in nbrs[v]:
                if w == s:
                    if len(path) >= 3 and idx[path[1]] < idx[path[-1]]:
                        out.append(Cycle(tuple(path)))
                elif idx[w] > si and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    out.sort(key=lambda c: (c.length, [idx[v] for v in c.vertices]))
    return out


def has_chord(c: Cycle, g: Graph) -> bool:
    vs = c.vertices
    n = len(vs)
    for i, j in combinations(range(n), 2):
        if (j - i) % n in (1, n - 1):
            continue
        if g.has_edge(vs[i], vs[j]):
            return True
    return False


def induced_cycles(g: Graph) -> list:
    return [c for c in enumerate_cycles(g) if not has_chord(c, g)]


def has_even_cycle(g: Graph):
    """``(True, witness)`` for the first even cycle found, else ``(False, None)``."""
    for c in enumerate_cycles(g):
        if not c.is_odd:
            return True, c
    return False, None


def cycles_bridged(c1: Cycle, c2: Cycle, g: Graph) -> bool:
    """True if the cycles share a vertex or some edge joins them."""
    a, b = c1.vertex_set(), c2.vertex_set()
    if a & b:
        return True
    return any(g.neighbors(v) & b for v in a)


def odd_cycle_condition(g: Graph):
    """Every pair of cycles meets or is joined by an edge.

    Returns ``(True, None)`` or ``(False, (c1, c2))`` with a violating pair.
    """
    cycles = enumerate_cycles(g)
    for c1, c2 in combinations(cycles, 2):
        if not cycles_bridged(c1, c2, g):
            return False, (c1, c2)
    return True, None


# -- matchings ---------------------------------------------------------------


def matching_number(g: Graph) -> int:
    """Exact maximum matching size by branch and bound over vertex bitmasks."""
    n = len(g.vertices)
    idx = g.index
    nb = [0] * n
    for e in g.edges:
        a, b = (idx[x] for x in e)
        nb[a] |= 1 << b
        nb[b] |= 1 << a
    memo = {}

    def greedy(mask):
        size = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= ~(1 << v)
            cand = nb[v] & m
            if cand:
                w = (cand & -cand).bit_length() - 1
                m &= ~(1 << w)
                size += 1
        return size

    def solve(mask):
        # drop vertices with no live neighbour
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= ~(1 << v)
            if not nb[v] & mask:
                mask &= ~(1 << v)
        if mask in memo:
            return memo[mask]
        if not mask:
            return 0
        best = greedy(mask)
        if best < bin(mask).count("1") // 2:
            # branch on a minimum-degree vertex: matched to some neighbour, or dropped
            v = min(
                (i for i in range(n) if mask >> i & 1),
                key=lambda i: bin(nb[i] & mask).count("1"),
            )
            rest = mask & ~(1 << v)
            cand = nb[v] & mask
            while cand:
                w = (cand & -cand).bit_length() - 1
                cand &= ~(1 << w)
                best = max(best, 1 + solve(rest & ~(1 << w)))
            if bin(nb[v] & mask).count("1") > 1:
                # a min-degree-1 vertex is always matched in some maximum matching
                best = max(best, solve(rest))
        memo[mask] = best
        return best

    return solve((1 << n) - 1)
