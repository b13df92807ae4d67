"""
Centralisers in coherent (chordal) right-angled Artin groups.

For a cyclically reduced ``g`` with block decomposition ``g = b_1 ... b_t``
the centraliser is ``<root(b_1)> x ... x <root(b_t)> x <lk(g)>``.  On a
chordal graph at most one block has support of size two or more, which
leaves three shapes:

* every block is a generator power and ``lk(g)`` is not a clique:
  ``C(g) = <alpha(g) u lk(g)>`` is non-abelian and canonical;
* every block is a generator power and ``lk(g)`` is a clique: abelian canonical;
* one long block with root ``rho``: ``C(g) = <rho> x <O>`` with ``O`` a clique.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetExceeded, InputError, NotChordal
from .graph import is_chordal, is_clique, link, star
from .words import (
    NormalWord,
    Piles,
    block_decompose,
    cyclic_reduce,
    from_syllables,
    generator,
    identity,
    project,
    root,
)

__all__ = [
    "CentralizerDescription",
    "RepresentativeSet",
    "ZOSplit",
    "centralizer",
    "centralizer_of_set",
    "representatives",
    "zo_split",
    "conjugacy_representative",
    "centralizer_key",
    "check_class_c_axioms",
]

NON_ABELIAN = "NonAbelianCanonical"
ABELIAN_CANONICAL = "AbelianCanonical"
ABELIAN_NON_CANONICAL = "AbelianNonCanonical"


def ensure_chordal(g):
    cached = getattr(g, "_chordal", None)
    if cached is None:
        cached = is_chordal(g)
        object.__setattr__(g, "_chordal", cached)
    ok, wit = cached
    if not ok:
        raise NotChordal(wit.vertices)


def _link0(g, y):
    return set(g.vertices) - set(y) if not y else link(g, y)


@dataclass(frozen=True)
class CentralizerDescription:
    """``C(g)`` for ``g = conjugator core conjugator^-1``.

    ``z_part`` is a vertex set for the canonical kinds and the root word for
    the non-canonical kind; ``o_part`` is always a vertex set.
    """

    kind: str
    z_part: object
    o_part: frozenset
    core: NormalWord
    conjugator: NormalWord

    @property
    def graph(self):
        return self.core.graph

    @property
    def is_abelian(self):
        return self.kind != NON_ABELIAN

    @property
    def vertex_part(self):
        if self.kind == ABELIAN_NON_CANONICAL:
            return frozenset(self.o_part)
        return frozenset(self.z_part) | self.o_part

    def _conj(self, w):
        if not self.conjugator:
            return w
        return w.conj(self.conjugator.inverse())

    def _local_basis(self):
        g = self.graph
        if self.kind == ABELIAN_NON_CANONICAL:
            return [self.z_part] + [generator(g, v) for v in g.sort(self.o_part)]
        return [generator(g, v) for v in g.sort(self.vertex_part)]

    @property
    def generators(self):
        return [self._conj(w) for w in self._local_basis()]

    @property
    def rank(self):
        if not self.is_abelian:
            raise InputError("rank is only defined for abelian centralisers")
        return len(self._local_basis())

    def local(self, x):
        return x.conj(self.conjugator) if self.conjugator else x

    def coords(self, x):
        """Exponents of ``x`` in the generator list, or None if ``x`` is not in
        the (abelian) centraliser.  For the non-abelian kind returns the
        membership answer only (``()`` or None)."""
        y = self.local(x)
        g = self.graph
        if self.kind == ABELIAN_NON_CANONICAL:
            rho = self.z_part
            if not y.support <= rho.support | self.o_part:
                return None
            zp = project(y, rho.support)
            k, rem = divmod(len(zp), len(rho))
            if rem:
                return None
            if zp == rho ** k:
                pass
            elif zp == rho ** (-k):
                k = -k
            else:
                return None
            return (k,) + tuple(y.exponent_sum(v) for v in g.sort(self.o_part))
        if not y.support <= self.vertex_part:
            return None
        if self.kind == NON_ABELIAN:
            return ()
        return tuple(y.exponent_sum(v) for v in g.sort(self.vertex_part))

    def contains(self, x):
        return self.coords(x) is not None

    def element(self, coords):
        out = identity(self.graph)
        for b, k in zip(self.generators, coords):
            out = out * b ** k
        return out

    def split(self, x):
        """Canonical coset factorisation ``x = rep * c`` with ``c`` in C;
        returns ``(rep, coords(c))``.  Abelian kinds only."""
        if not self.is_abelian:
            raise InputError("coset factorisation needs an abelian centraliser")
        conj = self.conjugator
        y = x * conj if conj else x
        rep, coords = _split_local(self, y)
        if conj:
            rep = rep * conj.inverse()
        return rep, coords

    def to_json(self):
        g = self.graph
        z = str(self.z_part) if isinstance(self.z_part, NormalWord) else g.sort(self.z_part)
        return {
            "kind": self.kind,
            "z_part": z,
            "o_part": g.sort(self.o_part),
            "core": str(self.core),
            "conjugator": str(self.conjugator),
            "generators": [str(w) for w in self.generators],
        }


def _strip(piles, allowed):
    """Remove right-movable letters whose generator index is in ``allowed``."""
    dropped = []
    while True:
        movable = [i for i in piles.right_movable() if i in allowed]
        if not movable:
            return dropped
        for i in movable:
            if piles.piles[i] and piles.piles[i][-1] != 0:
                dropped.append(piles.drop_last(i))


def _split_local(desc, y):
    g = desc.graph
    if desc.kind == ABELIAN_CANONICAL:
        verts = g.sort(desc.vertex_part)
        allowed = {g.index[v] for v in verts}
        piles = Piles(g).extend(y.letters)
        dropped = _strip(piles, allowed)
        rep = NormalWord(g, piles.depile())
        sums = {v: 0 for v in verts}
        for x in dropped:
            sums[g.vertices[abs(x) - 1]] += 1 if x > 0 else -1
        return rep, tuple(sums[v] for v in verts)
    rho = desc.z_part
    overts = g.sort(desc.o_part)
    allowed = {g.index[v] for v in overts}
    bound = 3 * len(y) // len(rho) + 2
    best = None
    for k in range(-bound, bound + 1):
        piles = Piles(g).extend(y.letters)
        piles.extend((rho ** k).letters)
        dropped = _strip(piles, allowed)
        rep = NormalWord(g, piles.depile())
        if best is None or rep.key() < best[0].key():
            sums = {v: 0 for v in overts}
            for x in dropped:
                sums[g.vertices[abs(x) - 1]] += 1 if x > 0 else -1
            # y rho^k = rep o  =>  y = rep o rho^-k
            best = (rep, (-k,) + tuple(sums[v] for v in overts))
    return best


def centralizer(w):
    """Structured centraliser of a nontrivial element."""
    g = w.graph
    ensure_chordal(g)
    if not w:
        raise InputError("the centraliser of the identity is the whole group")
    core, conj = cyclic_reduce(w)
    blocks = block_decompose(core).blocks
    alpha = core.support
    lk = _link0(g, alpha)
    long_blocks = [b for b in blocks if len(b.support) > 1]
    if not long_blocks:
        kind = ABELIAN_CANONICAL if is_clique(g, lk) else NON_ABELIAN
        return CentralizerDescription(kind, frozenset(alpha), frozenset(lk), core, conj)
    (b,) = long_blocks
    rho = root(b).root
    rest = alpha - b.support
    return CentralizerDescription(
        ABELIAN_NON_CANONICAL, rho, frozenset(rest | lk), core, conj
    )


def centralizer_of_set(g, y):
    """For a clique ``y``: the product of its generators and its centraliser."""
    y = g.check_subset(y)
    if not y:
        raise InputError("empty vertex set")
    if not is_clique(g, y):
        raise InputError(f"{g.sort(y)} is not a clique")
    w = from_syllables(g, [(v, 1) for v in g.sort(y)])
    return w, centralizer(w)


@dataclass(frozen=True)
class ZOSplit:
    kind: str
    z: object  # frozenset of vertices, or a root word
    o: frozenset

    def to_json(self, g):
        z = str(self.z) if isinstance(self.z, NormalWord) else g.sort(self.z)
        return {"kind": self.kind, "z": z, "o": g.sort(self.o)}


def zo_split(w):
    """Z(w) and O(w); the identity is accepted and has ``Z = 1``, ``O = G``."""
    g = w.graph
    ensure_chordal(g)
    if not w:
        kind = ABELIAN_CANONICAL if is_clique(g, g.vertices) else NON_ABELIAN
        return ZOSplit(kind, frozenset(), frozenset(g.vertices))
    desc = centralizer(w)
    if desc.conjugator:
        raise InputError(f"zo_split needs a cyclically reduced element, got {w}")
    if desc.kind == ABELIAN_CANONICAL:
        return ZOSplit(desc.kind, frozenset(), desc.vertex_part)
    if desc.kind == NON_ABELIAN:
        return ZOSplit(desc.kind, desc.z_part, desc.o_part)
    return ZOSplit(desc.kind, desc.z_part, desc.o_part)


def left_movable(w):
    piles = Piles(w.graph).extend(w.letters)
    return [(i + 1) * p[0] for i, p in enumerate(piles.piles) if p and p[0] != 0]


def conjugacy_class(rho, cap=100000):
    """Cyclically reduced conjugates of ``rho`` reachable by moving a
    front-movable letter to the back.  Maps each conjugate ``y`` to ``k``
    with ``y = k^-1 rho k``."""
    g = rho.graph
    seen = {rho: identity(g)}
    todo = [rho]
    while todo:
        y = todo.pop()
        k = seen[y]
        for x in left_movable(y):
            letter = NormalWord(g, (x,))
            z = y.conj(letter)
            if z not in seen:
                seen[z] = k * letter
                todo.append(z)
                if len(seen) > cap:
                    raise BudgetExceeded("conjugacy class search budget exceeded")
    return seen


def block_class_key(rho):
    members = list(conjugacy_class(rho)) + list(conjugacy_class(rho.inverse()))
    return min(members, key=NormalWord.key)


def centralizer_key(w):
    """Hashable invariant: equal keys iff the centralisers are conjugate."""
    desc = centralizer(w)
    if desc.kind == ABELIAN_NON_CANONICAL:
        return ("B", block_class_key(desc.z_part).letters)
    return ("K", frozenset(desc.vertex_part))


@dataclass(frozen=True)
class RepresentativeSet:
    graph: object
    w_k: tuple
    w_b: tuple
    bound: int
    keys: dict = field(default=None, compare=False, repr=False)

    @property
    def elements(self):
        return self.w_k + self.w_b

    def lookup(self, key):
        return (self.keys or {}).get(key, [])

    @classmethod
    def from_elements(cls, g, elements, bound=0):
        w_k, w_b, keys = [], [], {}
        for w in elements:
            if w:
                (w_b if centralizer(w).kind == ABELIAN_NON_CANONICAL else w_k).append(w)
                keys.setdefault(centralizer_key(w), []).append(w)
            else:
                w_k.append(w)
                # C(1) is the whole group
                keys.setdefault(("K", frozenset(g.vertices)), []).append(w)
        return cls(g, tuple(w_k), tuple(w_b), bound, keys)

    def to_json(self):
        return {
            "w_k": [str(w) for w in self.w_k],
            "w_b": [str(w) for w in self.w_b],
            "bound": self.bound,
        }


def _cliques(g):
    out = [frozenset()]
    for v in g.vertices:
        out += [c | {v} for c in out if all(g.adjacent(v, x) for x in c)]
    return [c for c in out if c]


def clique_representatives(g):
    """``W_K``: cliques grouped by equal stars, minimal cardinality kept;
    a single shortlex-least one when the star is a clique."""
    classes = {}
    for c in _cliques(g):
        classes.setdefault(frozenset(star(g, c)), []).append(c)
    reps = []
    for st, cls in classes.items():
        size = min(len(c) for c in cls)
        mins = [from_syllables(g, [(v, 1) for v in g.sort(c)]) for c in cls if len(c) == size]
        mins.sort(key=NormalWord.key)
        reps.extend(mins[:1] if is_clique(g, st) else mins)
    return sorted(reps, key=NormalWord.key)


def elements_by_length(g, bound):
    """All group elements of length <= bound, grouped by length."""
    layers = [[identity(g)]]
    letters = [NormalWord(g, (s * (i + 1),)) for i in range(len(g.vertices)) for s in (1, -1)]
    for n in range(1, bound + 1):
        nxt = set()
        for w in layers[-1]:
            for x in letters:
                y = w * x
                if len(y) == n:
                    nxt.add(y)
        layers.append(sorted(nxt, key=NormalWord.key))
    return layers


def block_representatives(g, bound):
    seen = set()
    reps = []
    for layer in elements_by_length(g, bound)[2:]:
        for w in layer:
            if w in seen or len(w.support) < 2:
                continue
            if len(w * w) != 2 * len(w):
                continue
            if len(block_decompose(w).blocks) != 1 or root(w).multiplicity != 1:
                continue
            cls = set(conjugacy_class(w)) | set(conjugacy_class(w.inverse()))
            seen |= cls
            reps.append(min(cls, key=NormalWord.key))
    return sorted(reps, key=NormalWord.key)


def representatives(g, block_length_bound):
    ensure_chordal(g)
    if block_length_bound < 0:
        raise InputError("block length bound must be non-negative")
    w_k = clique_representatives(g)
    w_b = block_representatives(g, block_length_bound)
    keys = {}
    for w in w_k + w_b:
        keys.setdefault(centralizer_key(w), []).append(w)
    return RepresentativeSet(g, tuple(w_k), tuple(w_b), block_length_bound, keys)


def conjugacy_representative(w, reps):
    """Return ``(r, h)`` with ``r`` in ``reps`` and ``C(w) = h^-1 C(r) h``."""
    g = w.graph
    if not w:
        raise InputError("the identity has no centraliser representative")
    desc = centralizer(w)
    c0 = desc.conjugator
    if desc.kind != ABELIAN_NON_CANONICAL:
        cands = reps.lookup(("K", frozenset(desc.vertex_part)))
        if not cands:
            raise LookupError(f"no representative for C({w})")
        return min(cands, key=NormalWord.key), c0.inverse()
    rho = desc.z_part
    if len(rho) > reps.bound:
        raise BudgetExceeded(
            f"bound exceeded: root {rho} has length {len(rho)} > {reps.bound}",
            length=len(rho),
            bound=reps.bound,
        )
    wanted = set(reps.lookup(("B", block_class_key(rho).letters)))
    for base in (rho, rho.inverse()):
        for y, k in sorted(conjugacy_class(base).items(), key=lambda t: t[0].key()):
            if y in wanted:
                return y, k.inverse() * c0.inverse()
    raise LookupError(f"no representative for C({w})")


# ---------------------------------------------------------------- class C checks


def random_word(g, rng, length, vertices=None):
    verts = list(vertices) if vertices is not None else list(g.vertices)
    if not verts:
        return identity(g)
    syl = [(rng.choice(verts), rng.choice((1, -1))) for _ in range(length)]
    return from_syllables(g, syl)


def _nontrivial(g, rng, length, vertices=None):
    for _ in range(100):
        w = random_word(g, rng, rng.randint(1, max(1, length)), vertices)
        if w:
            return w
    return None


def _report(axiom, failures, checked, note=None):
    entry = {"axiom": axiom, "status": "fail" if failures else "pass", "checked": checked}
    if failures:
        entry["witness"] = failures[0]
    if note:
        entry["note"] = note
    return entry


def check_class_c_axioms(g, reps, sample_length=4, sample_count=200, seed=0):
    """Sampled falsifier for the class-C axioms; never a proof.

    Each entry is ``{"axiom", "status", "checked", "witness"?}``; the
    identity is excluded from samples (its centraliser is the whole group).
    """
    ensure_chordal(g)
    rng = random.Random(seed)
    X = list(g.vertices)
    out = []
    samples = [w for w in (_nontrivial(g, rng, sample_length) for _ in range(sample_count)) if w]

    # C1: torsion-free
    fails = [
        {"g": str(w), "k": k} for w in samples[:50] for k in (2, 3, 5) if not w ** k
    ]
    out.append(_report("C1", fails, min(50, len(samples))))

    # C2: big powers on generic pairs
    from .discrimination import bp_scan
    from .raag import Raag

    G = Raag(g)
    fails, checked = [], 0
    for _ in range(min(20, sample_count)):
        a, b = _nontrivial(g, rng, 2), _nontrivial(g, rng, 2)
        if a is None or b is None or a.commutes(b):
            continue
        checked += 1
        hit = bp_scan(G, [a, b], 4)
        if hit is not None:
            fails.append({"tuple": [str(a), str(b)], "exponents": hit})
    out.append(_report("C2", fails, checked))

    # C3: unique roots
    fails = []
    for w in samples[:100]:
        r = root(w)
        if r.root ** r.multiplicity != w:
            fails.append({"g": str(w), "root": str(r.root)})
            continue
        for k in (2, 3):
            rk = root(w ** k)
            if rk.root != r.root or rk.multiplicity != k * r.multiplicity:
                fails.append({"g": str(w), "k": k})
    out.append(_report("C3", fails, min(100, len(samples))))

    # C4(a): <Y> and <Y'> for disjoint Y, Y' meet trivially.  C4(b): x in <Y> => x in Y
    fails_a, fails_b = [], []
    for _ in range(min(100, sample_count)):
        y1 = {v for v in X if rng.random() < 0.5}
        y2 = {v for v in X if v not in y1 and rng.random() < 0.5}
        u = random_word(g, rng, sample_length, g.sort(y1))
        v = random_word(g, rng, sample_length, g.sort(y2))
        if u == v and u:
            fails_a.append({"Y": g.sort(y1), "Y'": g.sort(y2), "element": str(u)})
        for x in X:
            if x not in y1 and u == generator(g, x):
                fails_b.append({"Y": g.sort(y1), "x": x})
    out.append(_report("C4(a)", fails_a, min(100, sample_count)))
    out.append(_report("C4(b)", fails_b, min(100, sample_count)))

    # C6(a): every C(g) is conjugate to some C(w); unique when abelian
    rep_keys = {}
    for w in reps.elements:
        key = centralizer_key(w) if w else ("K", frozenset(X))
        rep_keys.setdefault(key, []).append(w)
    fails = []
    for w in samples:
        key = centralizer_key(w)
        hits = rep_keys.get(key, [])
        abelian = centralizer(w).is_abelian
        if not hits or (abelian and len(hits) != 1):
            fails.append(
                {
                    "g": str(w),
                    "centralizer": [str(x) for x in centralizer(w).generators],
                    "representatives": [str(x) for x in hits],
                }
            )
            continue
        try:
            r, h = conjugacy_representative(w, reps)
        except (LookupError, BudgetExceeded) as exc:
            fails.append({"g": str(w), "error": str(exc)})
            continue
        gens = centralizer(r).generators if r else [generator(g, v) for v in X]
        bad = [str(x) for x in gens if not x.conj(h).commutes(w)]
        if bad:
            fails.append({"g": str(w), "w": str(r), "h": str(h), "not_commuting": bad})
    out.append(_report("C6(a)", fails, len(samples)))

    # C6(b): C(w) = Z(w) x O(w)
    fails = []
    for w in reps.elements:
        zo = zo_split(w)
        zgens = [zo.z] if isinstance(zo.z, NormalWord) else [generator(g, v) for v in zo.z]
        ogens = [generator(g, v) for v in zo.o]
        zsupp = zo.z.support if isinstance(zo.z, NormalWord) else zo.z
        if zsupp & zo.o or not all(a.commutes(b) for a in zgens for b in ogens):
            fails.append({"w": str(w), "reason": "Z and O do not split"})
            continue
        if w:
            desc = centralizer(w)
            gens = set(desc.generators)
            if gens != set(zgens) | set(ogens):
                fails.append({"w": str(w), "reason": "Z x O differs from C(w)"})
    out.append(_report("C6(b)", fails, len(reps.elements)))

    # C6(c): g in O(w) with C(g) not conjugate to C(w) has a representative
    # w0 and conjugator h inside O(w)
    fails, checked = [], 0
    for w in reps.elements:
        o = zo_split(w).o
        wkey = centralizer_key(w) if w else None
        for _ in range(max(1, sample_count // max(1, len(reps.elements)))):
            x = _nontrivial(g, rng, sample_length, g.sort(o))
            if x is None or centralizer_key(x) == wkey:
                continue
            checked += 1
            desc = centralizer(x)
            hits = [
                r
                for r in rep_keys.get(centralizer_key(x), [])
                if r.support <= o
            ]
            if not hits:
                fails.append({"w": str(w), "g": str(x), "reason": "no representative in O(w)"})
                continue
            if not desc.conjugator.support <= o:
                fails.append({"w": str(w), "g": str(x), "reason": "conjugator leaves O(w)"})
    out.append(_report("C6(c)", fails, checked))

    # C7: abelian C(w), a and a^h in C(w), h outside => a in O(w) and [h,a]=1
    fails, checked = [], 0
    for w in reps.elements:
        if not w or not centralizer(w).is_abelian:
            continue
        desc = centralizer(w)
        o = zo_split(w).o
        for _ in range(max(1, sample_count // max(1, len(reps.elements)))):
            coords = [rng.randint(-2, 2) for _ in desc.generators]
            a = desc.element(coords)
            if not a:
                continue
            pool = g.sort(set(centralizer(a).vertex_part) | set(X)) if rng.random() < 0.5 else X
            h = random_word(g, rng, rng.randint(1, sample_length), pool)
            if desc.contains(h) or not desc.contains(a.conj(h)):
                continue
            checked += 1
            if not (a.support <= o and a.commutes(h)):
                fails.append({"w": str(w), "a": str(a), "h": str(h)})
    out.append(_report("C7", fails, checked))

    # C8: non-abelian C(w) is canonical, with canonical centre
    fails = []
    for w in reps.elements:
        if not w:
            continue
        desc = centralizer(w)
        if desc.is_abelian:
            continue
        gens = desc.vertex_part
        centre = {v for v in gens if all(v == x or g.adjacent(v, x) for x in gens)}
        if not set(desc.z_part) <= centre:
            fails.append({"w": str(w), "centre": g.sort(centre)})
    out.append(_report("C8", fails, len(reps.elements)))
    return out


def report_passed(report):
    return all(entry["status"] == "pass" for entry in report)
