"""
Finite simple graphs carrying generator names.

A :class:`CommutationGraph` defines a right-angled Artin group: vertices are
generators and an edge means the two generators commute.  Vertex order is
part of the data because shortlex normal forms downstream depend on it.

    >>> p4 = CommutationGraph.path("abcd")
    >>> sorted(link(p4, {"b"}))
    ['a', 'c']
    >>> is_chordal(p4)[0]
    True
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InputError

__all__ = [
    "CommutationGraph",
    "ChordalityWitness",
    "is_chordal",
    "link",
    "star",
    "link_star",
    "complement_components",
    "is_clique",
    "maximal_cliques",
    "clique_tree",
]


@dataclass(frozen=True, eq=False)
class CommutationGraph:
    vertices: tuple
    edges: frozenset
    index: dict = field(init=False, repr=False)
    adj: tuple = field(init=False, repr=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertex names")
        for v in verts:
            if not isinstance(v, str) or not v:
                raise InputError(f"vertex names must be non-empty strings, got {v!r}")
        index = {v: i for i, v in enumerate(verts)}
        adj = [set() for _ in verts]
        edges = set()
        for e in self.edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise InputError(f"edge {sorted(e)} is a loop or malformed")
            a, b = pair
            if a not in index or b not in index:
                raise InputError(f"edge {sorted(pair)} has an unknown endpoint")
            adj[index[a]].add(index[b])
            adj[index[b]].add(index[a])
            edges.add(frozenset(pair))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))

    @classmethod
    def build(cls, vertices, edges, order=None):
        """Validate raw vertex/edge lists.  Vertices sort lexicographically
        unless ``order`` is given."""
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex names")
        seen = set()
        for e in edges:
            e = list(e)
            if len(e) != 2:
                raise InputError(f"edge {e} must have two endpoints")
            a, b = e
            if a == b:
                raise InputError(f"loop at {a!r}")
            key = frozenset((a, b))
            if key in seen:
                raise InputError(f"duplicate edge {sorted(key)}")
            seen.add(key)
        if order is not None:
            order = list(order)
            if sorted(order) != sorted(vertices):
                raise InputError("order must list every vertex exactly once")
            verts = order
        else:
            verts = sorted(vertices)
        return cls(tuple(verts), frozenset(seen))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "vertices" not in data:
            raise InputError("graph JSON needs a 'vertices' list")
        return cls.build(data["vertices"], data.get("edges", []), data.get("order"))

    def to_json(self):
        edges = sorted(sorted(e, key=self.index.get) for e in self.edges)
        edges.sort(key=lambda e: (self.index[e[0]], self.index[e[1]]))
        return {"vertices": list(self.vertices), "edges": edges, "order": list(self.vertices)}

    @classmethod
    def path(cls, names):
        names = list(names)
        return cls.build(names, list(zip(names, names[1:])), order=names)

    @classmethod
    def cycle(cls, names):
        names = list(names)
        return cls.build(names, list(zip(names, names[1:] + names[:1])), order=names)

    @classmethod
    def complete(cls, names):
        names = list(names)
        return cls.build(names, combinations(names, 2), order=names)

    @classmethod
    def edgeless(cls, names):
        names = list(names)
        return cls.build(names, [], order=names)

    def __eq__(self, other):
        return (
            isinstance(other, CommutationGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __len__(self):
        return len(self.vertices)

    def adjacent(self, a, b):
        return self.index[b] in self.adj[self.index[a]]

    def neighbours(self, v):
        return {self.vertices[j] for j in self.adj[self.index[v]]}

    def check_subset(self, y):
        y = set(y)
        bad = y - set(self.vertices)
        if bad:
            raise InputError(f"unknown vertices {sorted(bad)}")
        return y

    def sort(self, y):
        return sorted(y, key=self.index.__getitem__)

    def induced(self, y):
        y = self.sort(self.check_subset(y))
        keep = set(y)
        return CommutationGraph(
            tuple(y), frozenset(e for e in self.edges if e <= keep)
        )


def link(g, y):
    """Vertices outside ``y`` adjacent to every vertex of ``y``."""
    y = g.check_subset(y)
    if not y:
        raise InputError("link of the empty set is not defined")
    common = None
    for v in y:
        nb = g.neighbours(v)
        common = nb if common is None else common & nb
    return common - y


def star(g, y):
    y = g.check_subset(y)
    if not y:
        raise InputError("star of the empty set is not defined")
    common = None
    for v in y:
        st = g.neighbours(v) | {v}
        common = st if common is None else common & st
    return common


def link_star(g, y):
    return link(g, y), star(g, y)


def is_clique(g, y):
    y = g.check_subset(y)
    return all(g.adjacent(a, b) for a, b in combinations(y, 2))


def complement_components(g, y):
    """Components of the complement graph on ``y``, ordered by least vertex."""
    rest = set(g.check_subset(y))
    parts = []
    while rest:
        start = min(rest, key=g.index.__getitem__)
        comp = {start}
        todo = [start]
        rest.discard(start)
        while todo:
            v = todo.pop()
            for w in [w for w in rest if not g.adjacent(v, w)]:
                rest.discard(w)
                comp.add(w)
                todo.append(w)
        parts.append(comp)
    return parts


@dataclass(frozen=True)
class ChordalityWitness:
    kind: str  # "peo" or "cycle"
    vertices: tuple

    def verify(self, g):
        if self.kind == "peo":
            return verify_peo(g, self.vertices)
        return verify_induced_cycle(g, self.vertices)


def lex_bfs(g):
    """Lexicographic breadth-first search; returns the visit order."""
    slices = [list(g.vertices)]
    order = []
    while slices:
        v = slices[0].pop(0)
        if not slices[0]:
            slices.pop(0)
        order.append(v)
        nb = g.neighbours(v)
        refined = []
        for s in slices:
            inside = [w for w in s if w in nb]
            outside = [w for w in s if w not in nb]
            refined.extend(part for part in (inside, outside) if part)
        slices = refined
    return order


def verify_peo(g, peo):
    if sorted(peo) != sorted(g.vertices):
        return False
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.neighbours(v) if pos[w] > pos[v]]
        if not is_clique(g, later):
            return False
    return True


def verify_induced_cycle(g, cycle):
    n = len(cycle)
    if n < 4 or len(set(cycle)) != n:
        return False
    inside = set(cycle)
    for i, v in enumerate(cycle):
        nb = g.neighbours(v) & inside
        if nb != {cycle[i - 1], cycle[(i + 1) % n]}:
            return False
    return True


def _cycle_through(g, v, p, w):
    """Chordless cycle v-p-...-w-v avoiding the rest of N[v], or None."""
    banned = (g.neighbours(v) | {v}) - {p, w}
    prev = {p: None}
    queue = deque([p])
    while queue:
        x = queue.popleft()
        if x == w:
            break
        for y in g.sort(g.neighbours(x)):
            if y not in banned and y not in prev:
                prev[y] = x
                queue.append(y)
    if w not in prev:
        return None
    path = []
    x = w
    while x is not None:
        path.append(x)
        x = prev[x]
    return [v] + path[::-1]


def _find_induced_cycle(g, hint=None):
    tries = [hint] if hint else []
    for v in g.vertices:
        for p, w in combinations(g.sort(g.neighbours(v)), 2):
            if not g.adjacent(p, w):
                tries.append((v, p, w))
    for v, p, w in tries:
        cyc = _cycle_through(g, v, p, w)
        if cyc is not None:
            return cyc
    return None


def is_chordal(g):
    """Return ``(True, PEO witness)`` or ``(False, induced cycle witness)``."""
    peo = lex_bfs(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = sorted((w for w in g.neighbours(v) if pos[w] > pos[v]), key=pos.get)
        if not later:
            continue
        p = later[0]
        for w in later[1:]:
            if not g.adjacent(p, w):
                cyc = _find_induced_cycle(g, (v, p, w))
                return False, ChordalityWitness("cycle", tuple(cyc))
    return True, ChordalityWitness("peo", tuple(peo))


def require_chordal(g):
    from .errors import NotChordal

    ok, wit = is_chordal(g)
    if not ok:
        raise NotChordal(wit.vertices)
    return wit


def maximal_cliques(g):
    """Maximal cliques of a chordal graph, read off a perfect elimination order."""
    wit = require_chordal(g)
    peo = wit.vertices
    pos = {v: i for i, v in enumerate(peo)}
    cands = []
    for v in peo:
        cands.append(frozenset({v} | {w for w in g.neighbours(v) if pos[w] > pos[v]}))
    cliques = [c for c in set(cands) if not any(c < d for d in cands)]
    return sorted(cliques, key=lambda c: [g.index[x] for x in g.sort(c)])


def clique_tree(g):
    """Clique tree: maximum-weight spanning tree of the clique intersection graph.

    Returns ``(cliques, edges)`` with edges ``(i, j, separator)``; components
    are joined by empty separators so the result is always a tree."""
    cliques = maximal_cliques(g)
    cand = []
    for i, j in combinations(range(len(cliques)), 2):
        sep = cliques[i] & cliques[j]
        cand.append((-len(sep), i, j, sep))
    cand.sort(key=lambda t: t[:3])
    parent = list(range(len(cliques)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for _, i, j, sep in cand:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j, sep))
    return cliques, edges
