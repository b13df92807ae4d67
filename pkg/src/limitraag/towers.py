"""
Graph towers over a coherent RAAG.

A tower is a list of levels.  Level 0 is the base RAAG; every later level
adds new generators ``x<l>_<i>`` through one floor:

* ``A1``  basic floor with non-abelian ``K^perp``, only as bottom floors
  (the result is again a RAAG, on the enlarged graph);
* ``A2``  basic floor with abelian ``K^perp`` and abelian ``C(K^perp)``;
* ``B1``  abelian floor over ``C(u)`` for a root block element ``u`` of
  ``K^perp``;
* ``C``   quadratic floor; kept presentational and must be the top floor.

A2 and B1 levels are centraliser extensions and carry an exact group handle.
Quadratic levels are reached through :func:`embed_quadratic`.

Conventions: ``[x, y] = x^-1 y^-1 x y`` and ``u^x = x^-1 u x``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .amalgam import extend, fresh_names
from .discrimination import retract, separate
from .errors import InputError, NonAbelianCentralizer, Unsupported
from .graph import CommutationGraph, clique_tree, is_clique, link
from .raag import Raag
from .words import block_decompose, cyclic_reduce, format_syllables, parse, parse_syllables, root

__all__ = [
    "LayeredGraph",
    "Orth",
    "QuadraticData",
    "FloorSpec",
    "Level",
    "TowerPresentation",
    "TreeOfGroups",
    "orth",
    "add_floor",
    "build_tower",
    "floor_decomposition",
    "tree_decomposition",
    "retraction_check",
    "embed_quadratic",
    "QuadraticEmbedding",
    "check_tree",
    "d_indecomposable",
]

KINDS = {
    "a1": "A1",
    "a2": "A2Abelian",
    "a2abelian": "A2Abelian",
    "b1": "B1",
    "c": "C",
}


@dataclass(frozen=True)
class LayeredGraph:
    graph: CommutationGraph
    c_edges: frozenset = frozenset()

    @classmethod
    def base(cls, g):
        return cls(g, frozenset())

    def kind(self, a, b):
        e = frozenset((a, b))
        if e not in self.graph.edges:
            return None
        return "c" if e in self.c_edges else "d"

    @property
    def edge_kind(self):
        return {e: ("c" if e in self.c_edges else "d") for e in self.graph.edges}

    def to_json(self):
        out = self.graph.to_json()
        idx = self.graph.index
        out["c_edges"] = sorted(sorted(e, key=idx.get) for e in self.c_edges)
        return out


@dataclass(frozen=True)
class Orth:
    perp: frozenset
    closure: frozenset
    co_irreducible: bool

    def to_json(self, g):
        return {
            "perp": g.sort(self.perp),
            "closure": g.sort(self.closure),
            "co_irreducible": self.co_irreducible,
        }


def _connected_by_non_edges(ys, joined):
    """Connectivity of the graph on ``ys`` whose edges are pairs that are
    *not* joined.  One vertex counts as connected, none as not."""
    ys = list(ys)
    if not ys:
        return False
    seen = {ys[0]}
    todo = [ys[0]]
    while todo:
        v = todo.pop()
        for w in ys:
            if w not in seen and not joined(v, w):
                seen.add(w)
                todo.append(w)
    return len(seen) == len(ys)


def d_indecomposable(lg, ys):
    return _connected_by_non_edges(ys, lambda a, b: lg.kind(a, b) == "d")


def indecomposable(lg, ys):
    return _connected_by_non_edges(ys, lg.graph.adjacent)


def orth(lg, y):
    """``K^perp``, ``K^perp-perp`` and co-irreducibility of ``K = <y>``.

    >>> lg = LayeredGraph.base(CommutationGraph.path("abcd"))
    >>> o = orth(lg, {"b"})
    >>> sorted(o.perp), sorted(o.closure), o.co_irreducible
    (['a', 'c'], ['b'], True)
    """
    g = lg.graph
    y = frozenset(g.check_subset(y))
    if not y:
        raise InputError("K must be generated by a nonempty vertex set")
    perp = frozenset(link(g, y))
    closure = frozenset(link(g, perp)) if perp else frozenset(g.vertices)
    co = closure == y and bool(perp) and d_indecomposable(lg, perp)
    return Orth(perp, closure, co)


@dataclass(frozen=True)
class QuadraticData:
    orientable: bool
    genus: int
    v: tuple
    boundary: tuple = ()
    w: tuple = ()
    u_last: str | None = None

    @property
    def n_x(self):
        return (2 * self.genus if self.orientable else self.genus) + len(self.boundary)

    @property
    def euler_characteristic(self):
        b = len(self.boundary) + 1
        return (2 - 2 * self.genus - b) if self.orientable else (2 - self.genus - b)

    @classmethod
    def from_json(cls, d):
        return cls(
            orientable=bool(d.get("orientable", True)),
            genus=int(d["genus"]),
            v=tuple(d.get("v", ())),
            boundary=tuple(d.get("boundary", ())),
            w=tuple(d.get("w", ())),
            u_last=d.get("u_last"),
        )

    def to_json(self):
        return {
            "orientable": self.orientable,
            "genus": self.genus,
            "v": list(self.v),
            "boundary": list(self.boundary),
            "w": list(self.w),
            "u_last": self.u_last,
        }


@dataclass(frozen=True)
class FloorSpec:
    kind: str
    k: tuple
    m_new: int | None = None
    u: str | None = None
    quadratic: QuadraticData | None = None
    names: tuple | None = None

    @classmethod
    def from_json(cls, d):
        q = d.get("quadratic")
        return cls(
            kind=d["kind"],
            k=tuple(d["k"]),
            m_new=d.get("m_new"),
            u=d.get("u"),
            quadratic=QuadraticData.from_json(q) if q else None,
            names=tuple(d["names"]) if d.get("names") else None,
        )

    def to_json(self):
        out = {"kind": self.kind, "k": list(self.k)}
        if self.m_new is not None:
            out["m_new"] = self.m_new
        if self.u is not None:
            out["u"] = self.u
        if self.quadratic is not None:
            out["quadratic"] = self.quadratic.to_json()
        if self.names:
            out["names"] = list(self.names)
        return out


@dataclass
class Level:
    lg: LayeredGraph
    group: object  # None for a quadratic level
    spec: FloorSpec | None = None
    kind: str | None = None
    x_names: tuple = ()
    perp: tuple = ()
    relators: list = field(default_factory=list)  # (label, word text over Gamma_l)
    c_gens: list = field(default_factory=list)  # amalgamated subgroup, level l-1 elements
    u: object = None  # B1/A2: extended element; C: u_{m+1}
    rho: dict = field(default_factory=dict)  # retraction images of new generators


@dataclass
class TowerPresentation:
    levels: list

    @classmethod
    def over(cls, g):
        return cls([Level(LayeredGraph.base(g), Raag(g))])

    @property
    def height(self):
        return len(self.levels) - 1

    @property
    def base_graph(self):
        return self.levels[0].lg.graph

    def group(self, level=None):
        return self.levels[-1 if level is None else level].group

    def to_json(self):
        return {
            "base": self.base_graph.to_json(),
            "floors": [lv.spec.to_json() for lv in self.levels[1:]],
        }


def _wrap(a):
    return f"({a})" if " " in a else a


def _comm(a, b):
    a, b = _wrap(a), _wrap(b)
    return f"{a}^-1 {b}^-1 {a} {b}"


def _evaluate(group, text, images=None):
    """Evaluate a word over the level alphabet in ``group``; letters listed
    in ``images`` are replaced by those elements."""
    images = images or {}
    out = group.identity()
    for name, e in parse_syllables(text):
        x = images[name] if name in images else group.parse(name)
        out = group.mul(out, group.pow(x, e))
    return out


def _words_in(g, texts, perp, what):
    out = []
    for t in texts:
        w = parse(g, t)
        if not w.support <= set(perp):
            raise InputError(f"{what} {t!r} is not in K^perp = <{', '.join(g.sort(perp))}>")
        out.append(w)
    return out


def add_floor(tower, spec):
    """New tower with one more floor; every precondition is checked against
    the current top level and the retraction is verified before returning."""
    if isinstance(spec, dict):
        spec = FloorSpec.from_json(spec)
    kind = KINDS.get(str(spec.kind).lower().replace("_", ""))
    if kind is None:
        if str(spec.kind).lower() == "b2":
            raise Unsupported(
                "b2 floors are not built directly: re-root the extension at the lower level"
            )
        raise InputError(f"unknown floor kind {spec.kind!r}")
    prev = tower.levels[-1]
    G = prev.group
    if G is None:
        raise Unsupported("a quadratic floor must be the top floor of the tower")
    lg = prev.lg
    g = lg.graph
    l = len(tower.levels)
    o = orth(lg, spec.k)
    if not o.co_irreducible:
        raise InputError(
            f"K = <{', '.join(g.sort(spec.k))}> is not co-irreducible: perp "
            f"{g.sort(o.perp)}, closure {g.sort(o.closure)}"
        )
    perp = tuple(g.sort(o.perp))
    perp_abelian = is_clique(g, perp)
    perp_split = not indecomposable(lg, perp)

    q = spec.quadratic
    if kind == "C":
        if q is None:
            raise InputError("a C floor needs quadratic data")
        m = q.n_x
    else:
        m = spec.m_new
        if not m or m < 1:
            raise InputError("m_new must be a positive integer")
    if spec.m_new is not None and spec.m_new != m:
        raise InputError(f"m_new={spec.m_new} but the quadratic data has {m} generators")
    if spec.names:
        names = list(spec.names)
        if len(names) != m or set(names) & set(g.vertices) or len(set(names)) != m:
            raise InputError("names must be m_new fresh distinct generator names")
    else:
        names = _new_names(g.vertices, l, m)

    level = Level(lg, None, spec, kind, tuple(names), perp)
    K = [v for v in g.vertices if v in set(spec.k)]

    if kind == "A1":
        if any(lv.kind != "A1" for lv in tower.levels[1:]):
            raise Unsupported("a1 floors only occur at the bottom of a tower")
        if perp_abelian:
            raise InputError("an a1 floor needs non-abelian K^perp; use A2Abelian")
        if perp_split:
            raise InputError("an a1 floor needs K^perp directly indecomposable")
        level.c_gens = [G.parse(y) for y in K]
        c_edges = []
    elif kind == "A2Abelian":
        if not perp_abelian:
            raise InputError("K^perp is non-abelian: this is an a1 floor, not a2")
        u = G.parse(" ".join(perp))
        try:
            C = G.abelian_centralizer(u)
        except NonAbelianCentralizer as exc:
            raise NonAbelianCentralizer(
                f"C(K^perp) is non-abelian ({exc}); a2 floors with non-abelian "
                "centraliser are normalised away below the tower"
            ) from None
        for c in C.generators:
            for p in perp:
                if not G.commute(c, G.parse(p)):
                    raise InputError(
                        f"C({G.fmt(u)}) != C(K^perp): {G.fmt(c)} does not commute with {p}"
                    )
        level.u = u
        level.c_gens = list(C.generators)
        c_edges = _basic_c_edges(names, perp, perp_split)
    elif kind == "B1":
        if not spec.u:
            raise InputError("a B1 floor needs u")
        (w,) = _words_in(g, [spec.u], perp, "u")
        if not w:
            raise InputError("u must be nontrivial")
        if cyclic_reduce(w)[0] != w:
            raise InputError(f"u = {w} is not cyclically reduced")
        if len(block_decompose(w).blocks) != 1:
            raise InputError(f"u = {w} is not a block element")
        r = root(w)
        if r.multiplicity != 1:
            raise InputError(f"u = {w} is a proper power of {r.root}")
        u = G.parse(spec.u)
        C = G.abelian_centralizer(u)
        level.u = u
        level.c_gens = list(C.generators)
        c_edges = [(a, b) for i, a in enumerate(names) for b in names[i + 1 :]]
        if perp_split:
            c_edges += [(x, p) for x in names for p in perp]
    else:
        _check_quadratic(G, g, perp, perp_abelian, q, level)
        c_edges = _basic_c_edges(names, perp, perp_split)

    # Gamma_l
    d_edges = [(x, y) for x in names for y in K]
    verts = list(g.vertices) + names
    edges = [tuple(e) for e in g.edges] + d_edges + c_edges
    new_g = CommutationGraph.build(verts, edges, order=verts)
    level.lg = LayeredGraph(new_g, lg.c_edges | frozenset(frozenset(e) for e in c_edges))

    # relators
    c_texts = [G.fmt(c) for c in level.c_gens]
    level.relators = [(f"[{c}, {x}]", _comm(c, x)) for x in names for c in c_texts]
    if kind == "C":
        level.relators.append(("W", _quadratic_relator(q, names, G.fmt(level.u))))
        level.rho = {}
        k = 2 * q.genus if q.orientable else q.genus
        for i, x in enumerate(names):
            level.rho[x] = q.v[i] if i < k else q.w[i - k]
    else:
        level.rho = {x: "1" for x in names}

    # group handle
    if kind == "A1":
        level.group = Raag(new_g)
    elif kind in ("A2Abelian", "B1"):
        level.group = extend(G, level.u, m, names)
        for a, b in d_edges + c_edges:
            H = level.group
            if not H.commute(H.parse(a), H.parse(b)):
                raise InputError(f"edge ({a}, {b}) of the new graph does not hold in the group")

    out = TowerPresentation(tower.levels + [level])
    rep = retraction_check(out, l)
    if not rep["passed"]:
        raise InputError(f"retraction check failed: {rep['failures'][0]}")
    return out


def _new_names(taken, l, m):
    taken = set(taken)
    out = []
    i = 1
    while len(out) < m:
        name = f"x{l}_{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def _basic_c_edges(names, perp, perp_split):
    if not perp_split:
        return []
    out = [(a, b) for i, a in enumerate(names) for b in names[i + 1 :]]
    return out + [(x, p) for x in names for p in perp]


def _check_quadratic(G, g, perp, perp_abelian, q, level):
    if perp_abelian:
        raise InputError("a quadratic floor needs non-abelian K^perp")
    k = 2 * q.genus if q.orientable else q.genus
    if q.genus < (0 if q.orientable else 1):
        raise InputError("genus must be non-negative (at least 1 if non-orientable)")
    if len(q.v) != k:
        raise InputError(f"expected {k} words v_j, got {len(q.v)}")
    if len(q.w) != len(q.boundary):
        raise InputError("need one conjugator w_i per boundary word u_i")
    _words_in(g, list(q.v) + list(q.boundary) + list(q.w), perp, "quadratic datum")
    chi = q.euler_characteristic
    special = q.orientable and q.genus == 1 and not q.boundary
    if chi > -2 and not special:
        raise InputError(f"Euler characteristic {chi} > -2 and W is not [x1,x2]u3")
    data = [G.parse(t) for t in list(q.boundary) + list(q.v) + list(q.w)]
    if not any(
        not G.commute(a, b) for i, a in enumerate(data) for b in data[i + 1 :]
    ):
        raise InputError("the u_i, v_j, w_k generate an abelian subgroup")
    prod = G.identity()
    if q.orientable:
        for i in range(q.genus):
            a, b = G.parse(q.v[2 * i]), G.parse(q.v[2 * i + 1])
            prod = G.mul(prod, G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)))
    else:
        for v in q.v:
            prod = G.mul(prod, G.pow(G.parse(v), 2))
    for ui, wi in zip(q.boundary, q.w):
        prod = G.mul(prod, G.conj(G.parse(ui), G.parse(wi)))
    u_last = G.inv(prod)
    if G.is_identity(u_last):
        raise InputError("u_{m+1} is trivial")
    if q.u_last is not None and G.parse(q.u_last) != u_last:
        raise InputError(
            f"quadratic identity fails: u_(m+1) should be {G.fmt(u_last)}, got {q.u_last}"
        )
    level.u = u_last
    pimg = [G.parse(p) for p in perp]
    level.c_gens = [
        G.parse(n)
        for n in G.generator_names
        if all(G.commute(G.parse(n), p) for p in pimg)
    ]


def _quadratic_relator(q, names, u_text):
    parts = []
    if q.orientable:
        for i in range(q.genus):
            parts.append(_comm(names[2 * i], names[2 * i + 1]))
        k = 2 * q.genus
    else:
        for i in range(q.genus):
            parts.append(f"{names[i]}^2")
        k = q.genus
    for j, ui in enumerate(q.boundary):
        x = names[k + j]
        parts.append(f"{x}^-1 ({ui}) {x}")
    parts.append(f"({u_text})")
    return " ".join(parts)


def build_tower(data):
    """Tower from ``{"base": <graph>, "floors": [<floor>, ...]}``."""
    g = CommutationGraph.from_json(data["base"])
    t = TowerPresentation.over(g)
    for f in data.get("floors", []):
        t = add_floor(t, f)
    return t


# ------------------------------------------------------------ checks


def retraction_check(tower, level):
    """Verify that the retraction onto the previous level kills every new
    relator and respects every new edge of the graph."""
    if level < 1 or level >= len(tower.levels):
        raise InputError(f"level must be between 1 and {len(tower.levels) - 1}")
    lv = tower.levels[level]
    G = tower.levels[level - 1].group
    images = {x: G.parse(t) for x, t in lv.rho.items()}
    failures = []
    checked = 0
    for label, text in lv.relators:
        checked += 1
        img = _evaluate(G, text, images)
        if not G.is_identity(img):
            failures.append({"relator": label, "word": text, "image": G.fmt(img)})
    old = tower.levels[level - 1].lg.graph
    for e in lv.lg.graph.edges:
        if e in old.edges:
            continue
        a, b = sorted(e)
        checked += 1
        ia = images.get(a, G.parse(a) if a not in lv.x_names else None)
        ib = images.get(b, G.parse(b) if b not in lv.x_names else None)
        if not G.commute(ia, ib):
            failures.append({"edge": [a, b], "images": [G.fmt(ia), G.fmt(ib)]})
    return {
        "level": level,
        "kind": lv.kind,
        "checked": checked,
        "passed": not failures,
        "failures": failures,
    }


def floor_decomposition(tower, level):
    """The amalgam splitting of ``G_l`` over ``G_{l-1}``."""
    if level < 1 or level >= len(tower.levels):
        raise InputError(f"level must be between 1 and {len(tower.levels) - 1}")
    lv = tower.levels[level]
    G = tower.levels[level - 1].group
    c = [G.fmt(x) for x in lv.c_gens]
    xs = list(lv.x_names)
    if lv.kind == "A1":
        return {
            "tag": "a1",
            "left": f"G_{level - 1}",
            "edge": {"rank": len(c), "generators": c},
            "right": {"kind": "CTimesFree", "generators": c + xs},
        }
    if lv.kind in ("A2Abelian", "B1"):
        tag = "a2" if lv.kind == "A2Abelian" else "b1"
        out = {
            "tag": tag,
            "left": f"G_{level - 1}",
            "edge": {"rank": len(c), "generators": c},
            "right": {"kind": "FreeAbelian", "rank": len(c) + len(xs), "generators": c + xs},
        }
        if lv.u is not None:
            out["u"] = G.fmt(lv.u)
        return out
    q = lv.spec.quadratic
    bnd = list(q.boundary)
    return {
        "tag": "c",
        "left": f"G_{level - 1}",
        "edge": {"rank": len(c) + len(bnd), "generators": c + bnd},
        "right": {
            "kind": "SurfaceTimesAbelian",
            "surface_generators": bnd + xs,
            "relator": dict(lv.relators)["W"],
            "abelian_generators": c,
            "genus": q.genus,
            "orientable": q.orientable,
        },
    }


# ------------------------------------------------------------ tree of groups


@dataclass
class TreeOfGroups:
    vertices: list
    edges: list

    def is_tree(self):
        n = len(self.vertices)
        if len(self.edges) != n - 1:
            return False
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e["source"]), find(e["target"])
            if a == b:
                return False
            parent[a] = b
        return True

    def all_trees(self):
        """This tree and every nested one."""
        yield self
        for v in self.vertices:
            if v["kind"] == "SubTower":
                yield from v["tree"].all_trees()

    def to_json(self):
        vs = []
        for v in self.vertices:
            d = {k: x for k, x in v.items() if k != "tree"}
            if "tree" in v:
                d["tree"] = v["tree"].to_json()
            vs.append(d)
        return {"vertices": vs, "edges": [dict(e) for e in self.edges]}

    def to_dot(self, name="tower"):
        lines = [f"graph {name} {{", "  node [shape=box];"]
        counter = [0]

        def emit(tree, prefix, indent):
            ids = {}
            for v in tree.vertices:
                vid = f"{prefix}v{v['id']}"
                ids[v["id"]] = vid
                if v["kind"] == "SubTower":
                    counter[0] += 1
                    lines.append(f"{indent}subgraph cluster_{prefix}{v['id']} {{")
                    lines.append(f'{indent}  label="G_{v["height"]}";')
                    inner = emit(v["tree"], f"{vid}_", indent + "  ")
                    lines.append(f"{indent}}}")
                    ids[v["id"]] = inner
                else:
                    label = _vertex_label(v)
                    lines.append(f'{indent}{vid} [label="{label}"];')
            for e in tree.edges:
                lines.append(
                    f'{indent}{ids[e["source"]]} -- {ids[e["target"]]} [label="Z^{e["rank"]}"];'
                )
            return next(iter(ids.values()))

        emit(self, "", "  ")
        lines.append("}")
        return "\n".join(lines)


def _vertex_label(v):
    if v["kind"] == "FreeAbelian":
        return f"Z^{v['rank']} <{', '.join(v['generators'])}>"
    s = "S" if v.get("orientable", True) else "N"
    return f"Z^{v['rank']} x {s}_{v['genus']},1"


def _clique_tree(g):
    cliques, edges = clique_tree(g)
    vs = [
        {"id": i, "kind": "FreeAbelian", "rank": len(c), "generators": g.sort(c)}
        for i, c in enumerate(cliques)
    ]
    es = [
        {"source": i, "target": j, "rank": len(sep), "generators": g.sort(sep)}
        for i, j, sep in edges
    ]
    return TreeOfGroups(vs, es)


def _base_level(tower):
    k = 0
    for lv in tower.levels[1:]:
        if lv.kind != "A1":
            break
        k += 1
    return k


def tree_decomposition(tower):
    """Nested tree of groups: the top floor splits ``G_l`` as
    ``SubTower(G_{l-1}) -- vertex``; the base is the clique tree."""
    return _tree(tower, tower.height, _base_level(tower))


def _tree(tower, level, base):
    if level <= base:
        return _clique_tree(tower.levels[level].lg.graph)
    lv = tower.levels[level]
    G = tower.levels[level - 1].group
    sub = {"id": 0, "kind": "SubTower", "height": level - 1, "tree": _tree(tower, level - 1, base)}
    xs = list(lv.x_names)
    if lv.kind in ("A2Abelian", "B1"):
        c = [G.fmt(x) for x in lv.c_gens]
        v = {"id": 1, "kind": "FreeAbelian", "rank": len(c) + len(xs), "generators": c + xs}
        e = {"source": 0, "target": 1, "rank": len(c), "generators": c}
        return TreeOfGroups([sub, v], [e])
    q = lv.spec.quadratic
    if q.boundary:
        raise Unsupported("tree decomposition of quadratic floors needs a single boundary component")
    C = G.abelian_centralizer(lv.u)
    o = _o_part(G, C, lv)
    v = {
        "id": 1,
        "kind": "AbelianTimesSurface",
        "rank": len(o),
        "generators": [G.fmt(x) for x in o],
        "surface_generators": xs,
        "genus": q.genus,
        "orientable": q.orientable,
        "boundary": G.fmt(lv.u),
    }
    gens = [G.fmt(x) for x in C.generators]
    e = {"source": 0, "target": 1, "rank": len(gens), "generators": gens}
    return TreeOfGroups([sub, v], [e])


def _o_part(G, C, lv):
    perp = [G.parse(p) for p in lv.perp]
    return [c for c in C.generators if all(G.commute(c, p) for p in perp)]


def check_tree(tower, tree=None):
    """Structural report: every nested tree is a tree and every edge group
    sits inside both endpoint groups."""
    tree = tree or tree_decomposition(tower)
    problems = []
    for t in tree.all_trees():
        if not t.is_tree():
            problems.append("underlying graph is not a tree")
        for e in t.edges:
            if e["rank"] != len(e["generators"]):
                problems.append(f"edge rank mismatch {e}")
            for end in (e["source"], e["target"]):
                v = t.vertices[end]
                if v["kind"] == "FreeAbelian" and not set(e["generators"]) <= set(v["generators"]):
                    problems.append(f"edge {e['generators']} not in vertex {v['generators']}")
    _check_floor_edges(tower, problems)
    return {"tree": not problems, "problems": problems}


def _check_floor_edges(tower, problems):
    base = _base_level(tower)
    for level in range(base + 1, len(tower.levels)):
        lv = tower.levels[level]
        G = tower.levels[level - 1].group
        if lv.kind == "C":
            C = G.abelian_centralizer(lv.u)
            for c in C.generators:
                if not G.commute(c, lv.u):
                    problems.append(f"level {level}: {G.fmt(c)} not in C(u)")
            o = _o_part(G, C, lv)
            if len(o) != C.rank - 1:
                problems.append(f"level {level}: C(u) is not <t> x O(t)")
            continue
        H = lv.group
        for c in lv.c_gens:
            if not G.abelian_centralizer(lv.u).contains(c):
                problems.append(f"level {level}: {G.fmt(c)} not in C")
            for x in lv.x_names:
                if not H.commute(H.embed(c), H.parse(x)):
                    problems.append(f"level {level}: {G.fmt(c)} does not commute with {x}")


# ------------------------------------------------------------ quadratic embedding


@dataclass
class QuadraticEmbedding:
    tower: object
    level: int
    tstar: object
    y: str

    def psi(self, text):
        """Image in ``T*`` of a word over the level's generators."""
        lv = self.tower.levels[self.level]
        T = self.tstar
        G = T.base
        y = T.parse(self.y)
        images = {x: T.conj(T.embed(G.parse(r)), y) for x, r in lv.rho.items()}
        out = T.identity()
        for name, e in parse_syllables(text):
            img = images[name] if name in images else T.embed(G.parse(name))
            out = T.mul(out, T.pow(img, e))
        return out

    def check_relators(self):
        lv = self.tower.levels[self.level]
        bad = []
        for label, text in lv.relators:
            img = self.psi(text)
            if not self.tstar.is_identity(img):
                bad.append({"relator": label, "image": self.tstar.fmt(img)})
        return bad

    def spot_check(self, samples=20, length=6, seed=0, budget=64):
        """Separate psi-images of random nontrivial elements from 1."""
        lv = self.tower.levels[self.level]
        names = list(lv.lg.graph.vertices)
        rng = random.Random(seed)
        T = self.tstar
        results = []
        tries = 0
        while len(results) < samples and tries < 50 * samples:
            tries += 1
            word = format_syllables(
                [(rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(1, length))]
            )
            img = self.psi(word)
            if T.is_identity(img):
                continue
            cert = separate(T, img, budget)
            again = retract(T, cert.index, img)
            results.append(
                {
                    "word": word,
                    "psi": list(cert.psi),
                    "m": cert.m,
                    "image": T.base.fmt(cert.image),
                    "verified": not T.base.is_identity(again),
                }
            )
        return results


def embed_quadratic(tower, level):
    """``T* = G_{l-1} *_{C(u)} (C(u) x <y>)`` with ``g -> g`` and
    ``x_i -> rho(x_i)^y``."""
    lv = tower.levels[level]
    if lv.kind != "C":
        raise InputError(f"level {level} is not a quadratic floor")
    if lv.spec.quadratic.boundary:
        raise Unsupported("embed_quadratic supports quadratic floors with one boundary component")
    G = tower.levels[level - 1].group
    (y,) = fresh_names(G.generator_names, "y", 1)
    T = extend(G, lv.u, 1, [y])
    return QuadraticEmbedding(tower, level, T, y)
