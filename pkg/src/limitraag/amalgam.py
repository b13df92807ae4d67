"""
Centraliser extensions ``G(u, B) = G *_C B`` with ``C = C_G(u)`` abelian and
``B = C x A``, ``A`` free abelian with named generators.

Elements are kept in the reduced form ``w_1 a_1 w_2 ... a_n w_{n+1}``: each
``w_i`` with ``i <= n`` is the canonical representative of its coset ``w_i C``
(the C-part is pushed to the right, through ``a_i``, which it commutes
with), ``w_i != 1`` for ``2 <= i <= n`` and every ``a_i`` is a nonzero vector.
By the normal form theorem for amalgamated products two elements are equal
iff their syllable tuples coincide.

    >>> from .graph import CommutationGraph
    >>> from .raag import Raag
    >>> F2 = Raag(CommutationGraph.edgeless("xy"))
    >>> E = ExtensionGroup(F2, "x", 1, ["s"])
    >>> E.fmt(E.parse("s x s^-1"))
    'x'
    >>> E.parse("x s") == E.parse("s x"), E.parse("y s") == E.parse("s y")
    (True, False)
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, InputError, NonAbelianCentralizer, Unsupported
from .words import format_syllables, parse_syllables

__all__ = ["ExtensionGroup", "AmalgamElement", "ExtensionCentralizer", "extend"]

WHOLE_B = "WholeB"
Z_TIMES_OA = "ZTimesOA"
BASE_CENTRALIZER = "BaseCentralizer"
CYCLIC_TIMES_OPRIME = "CyclicTimesOPrime"


@dataclass(frozen=True, eq=False)
class AmalgamElement:
    group: object
    syl: tuple

    def __eq__(self, other):
        return (
            isinstance(other, AmalgamElement)
            and self.group is other.group
            and self.syl == other.syl
        )

    def __hash__(self):
        return hash(self.syl)

    @property
    def n(self):
        """Number of A-syllables (the reduced length)."""
        return (len(self.syl) - 1) // 2

    @property
    def g_syllables(self):
        return self.syl[0::2]

    @property
    def a_syllables(self):
        return self.syl[1::2]

    def __mul__(self, other):
        return self.group.mul(self, other)

    def inverse(self):
        return self.group.inv(self)

    def __pow__(self, k):
        return self.group.pow(self, k)

    def conj(self, h):
        return self.group.conj(self, h)

    def commutes(self, other):
        return self.group.commute(self, other)

    def __bool__(self):
        return not self.group.is_identity(self)

    def __str__(self):
        return self.group.fmt(self)

    def __repr__(self):
        return f"AmalgamElement({str(self)!r})"


def _zero(v):
    return not any(v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _neg(v):
    return tuple(-a for a in v)


class ExtensionGroup:
    """Handle for ``G *_C (C x A)``; ``base`` is a RAAG or another extension."""

    def __init__(self, base, u, a_rank, a_names=None):
        if isinstance(u, str) or isinstance(u, list):
            u = base.parse(u)
        if a_rank < 1:
            raise InputError("a_rank must be positive")
        if a_names is None:
            a_names = fresh_names(base.generator_names, "s", a_rank)
        a_names = list(a_names)
        if len(a_names) != a_rank or len(set(a_names)) != a_rank:
            raise InputError("need exactly a_rank distinct generator names")
        clash = set(a_names) & set(base.generator_names)
        if clash:
            raise InputError(f"generator names {sorted(clash)} already in use")
        for name in a_names:
            if parse_syllables(name) != [(name, 1)]:
                raise InputError(f"{name!r} is not a valid generator name")
        self.base = base
        self.u = u
        self.C = base.abelian_centralizer(u)
        self.a_rank = a_rank
        self.a_names = a_names
        self.a_index = {s: i for i, s in enumerate(a_names)}
        self.depth = base.depth + 1
        self.zero = (0,) * a_rank
        self._one = AmalgamElement(self, (base.identity(),))

    def __repr__(self):
        return f"ExtensionGroup(base={self.base!r}, u={self.base.fmt(self.u)!r}, a={self.a_names})"

    @property
    def base_raag(self):
        return self.base.base_raag

    @property
    def generator_names(self):
        return self.base.generator_names + self.a_names

    @property
    def c_rank(self):
        return self.C.rank

    # ------------------------------------------------------------ arithmetic

    def _push_a(self, state, a):
        if _zero(a):
            return
        base = self.base
        last = state[-1]
        rep, coords = self.C.split(last)
        if len(state) >= 3 and base.is_identity(rep):
            merged = _add(state[-2], a)
            if _zero(merged):
                state.pop()
                state.pop()
                state[-1] = base.mul(state[-1], last)
            else:
                state[-2] = merged
        else:
            state[-1] = rep
            state.append(tuple(a))
            state.append(self.C.element(coords))

    def _feed(self, state, syl):
        base = self.base
        state[-1] = base.mul(state[-1], syl[0])
        for i in range(1, len(syl), 2):
            self._push_a(state, syl[i])
            state[-1] = base.mul(state[-1], syl[i + 1])

    def reduce(self, items):
        """Reduce a raw sequence of base elements and A-vectors (any order)."""
        state = [self.base.identity()]
        for item in items:
            if isinstance(item, tuple) and all(isinstance(x, int) for x in item):
                if len(item) != self.a_rank:
                    raise InputError(f"A-vector {item} has wrong length")
                self._push_a(state, item)
            elif isinstance(item, list) and all(isinstance(x, int) for x in item):
                self._push_a(state, tuple(item))
            else:
                state[-1] = self.base.mul(state[-1], item)
        return AmalgamElement(self, tuple(state))

    def identity(self):
        return self._one

    def embed(self, g):
        return AmalgamElement(self, (g,))

    def a_element(self, vec):
        return self.reduce([tuple(vec)])

    def unit(self, i, k=1):
        v = [0] * self.a_rank
        v[i] = k
        return self.a_element(v)

    def mul(self, x, y):
        state = list(x.syl)
        self._feed(state, y.syl)
        return AmalgamElement(self, tuple(state))

    def inv(self, x):
        items = []
        for i, s in enumerate(reversed(x.syl)):
            items.append(self.base.inv(s) if i % 2 == 0 else _neg(s))
        return self.reduce(items)

    def pow(self, x, k):
        if k < 0:
            x, k = self.inv(x), -k
        out = self._one
        while k:
            if k & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            k >>= 1
        return out

    def conj(self, x, h):
        """``h^-1 x h``."""
        return self.mul(self.mul(self.inv(h), x), h)

    def is_identity(self, x):
        return len(x.syl) == 1 and self.base.is_identity(x.syl[0])

    def commute(self, x, y):
        return self.mul(x, y) == self.mul(y, x)

    def equals(self, x, y):
        if x.group is not self or y.group is not self:
            raise InputError("elements belong to different extensions")
        return x.syl == y.syl

    def owns(self, x):
        return isinstance(x, AmalgamElement) and x.group is self

    def key(self, x):
        parts = []
        for i, s in enumerate(x.syl):
            parts.append(self.base.key(s) if i % 2 == 0 else (0, s))
        return (x.n, tuple(parts))

    # ------------------------------------------------------------ text / json

    def parse_syllables(self, syls):
        items = []
        run = []
        for name, e in syls:
            if name in self.a_index:
                if run:
                    items.append(self.base.parse_syllables(run))
                    run = []
                v = [0] * self.a_rank
                v[self.a_index[name]] = e
                items.append(tuple(v))
            else:
                run.append((name, e))
        if run:
            items.append(self.base.parse_syllables(run))
        return self.reduce(items)

    def parse(self, text):
        if isinstance(text, AmalgamElement):
            return text
        if isinstance(text, list):
            return self.from_json(text)
        return self.parse_syllables(parse_syllables(text))

    def gen(self, name, e=1):
        return self.parse_syllables([(name, e)])

    def vec_syllables(self, v):
        return [(self.a_names[i], k) for i, k in enumerate(v) if k]

    def syllable_list(self, x):
        out = []
        for i, s in enumerate(x.syl):
            if i % 2:
                out.extend(self.vec_syllables(s))
            else:
                out.extend(self.base_syllables(s))
        return out

    def base_syllables(self, g):
        if hasattr(self.base, "syllable_list"):
            return self.base.syllable_list(g)
        return g.syllables

    def fmt(self, x):
        return format_syllables(self.syllable_list(x))

    def to_json(self, x):
        return [self.base.fmt(s) if i % 2 == 0 else list(s) for i, s in enumerate(x.syl)]

    def from_json(self, data):
        if not isinstance(data, list) or len(data) % 2 == 0:
            raise InputError("element JSON must alternate [w, [vector], w, ...]")
        items = []
        for i, s in enumerate(data):
            if i % 2:
                if not isinstance(s, list) or not all(isinstance(k, int) for k in s):
                    raise InputError(f"A-syllable {s!r} must be an integer list")
                items.append(tuple(s))
            else:
                items.append(self.base.parse(s))
        return self.reduce(items)

    def random_element(self, rng, length):
        names = self.generator_names
        return self.parse_syllables(
            [(rng.choice(names), rng.choice((1, -1))) for _ in range(length)]
        )

    # ------------------------------------------------------------ structure

    def in_c(self, g):
        return self.C.contains(g)

    def cyclic_reduce(self, x, cap=10000):
        """Return ``(core, conj)`` with ``x = conj core conj^-1`` and ``core``
        cyclically reduced: in the base, in ``B``, or with every G-syllable of
        its cyclic sequence outside ``C``."""
        base = self.base
        conj = self._one  # invariant: core = conj^-1 x conj
        core = x
        for _ in range(cap):
            syl = core.syl
            n = core.n
            if n == 0:
                break
            last, w1 = syl[-1], syl[0]
            if base.is_identity(w1) and n == 1 and self.C.contains(last):
                break
            joined = base.mul(last, w1)
            h = self.embed(last)
            if not self.C.contains(joined) or n == 1:
                if not base.is_identity(last):
                    core = self.conj(core, self.inv(h))
                    conj = self.mul(conj, self.inv(h))
                break
            # a_n (last w_1) a_1 collapses into one B-syllable
            t = self.mul(self.a_element(syl[-2]), h)
            core = self.conj(core, self.inv(t))
            conj = self.mul(conj, self.inv(t))
        else:
            raise BudgetExceeded("cyclic reduction did not terminate")
        return core, conj

    def classify(self, core):
        """'G', 'B' or 'hyperbolic' for a cyclically reduced element."""
        if core.n == 0:
            return "G"
        if core.n == 1 and self.base.is_identity(core.syl[0]) and self.C.contains(core.syl[-1]):
            return "B"
        return "hyperbolic"

    def b_basis(self):
        return [self.embed(c) for c in self.C.generators] + [
            self.unit(i) for i in range(self.a_rank)
        ]

    def centralizer_ext(self, v):
        if self.is_identity(v):
            raise InputError("the centraliser of the identity is the whole group")
        core, conj = self.cyclic_reduce(v)
        kind = self.classify(core)
        z = None
        oprime = []
        if kind == "B":
            ck, gens, abelian = WHOLE_B, self.b_basis(), True
        elif kind == "G":
            w = core.syl[0]
            if self.C.contains(w):
                if self.base.centralizer_is_abelian(w):
                    ck, gens, abelian = WHOLE_B, self.b_basis(), True
                else:
                    ck, abelian = Z_TIMES_OA, False
                    gens = [self.embed(c) for c in self.base.centralizer_generators(w)]
                    gens += [self.unit(i) for i in range(self.a_rank)]
            else:
                ck = BASE_CENTRALIZER
                abelian = self.base.centralizer_is_abelian(w)
                gens = [self.embed(c) for c in self.base.centralizer_generators(w)]
        else:
            ck, abelian = CYCLIC_TIMES_OPRIME, True
            z = self._root(core)
            gsyl = [s for s in z.g_syllables if not self.base.is_identity(s)]
            oprime = [
                c
                for c in self.C.generators
                if all(self.base.commute(c, s) for s in gsyl)
            ]
            gens = [z] + [self.embed(c) for c in oprime]
        if not self.is_identity(conj):
            back = self.inv(conj)
            gens = [self.conj(x, back) for x in gens]
        return ExtensionCentralizer(
            ck, tuple(gens), abelian, core, conj, z, tuple(self.embed(c) for c in oprime)
        )

    def _root(self, core):
        n = core.n
        pairs = [(core.syl[2 * i], core.syl[2 * i + 1]) for i in range(n)]
        last = core.syl[-1]
        for d in range(1, n + 1):
            if n % d:
                continue
            k = n // d
            head = []
            for w, a in pairs[:d]:
                head += [w, a]
            p = self.reduce(head)
            cands = [p]
            lc = self.C.coords(last)
            if lc is not None and all(c % k == 0 for c in lc):
                cands.append(self.mul(p, self.embed(self.C.element([c // k for c in lc]))))
            for z in cands:
                if self.pow(z, k) == core:
                    return z
        return core

    def centralizer_is_abelian(self, x):
        if self.is_identity(x):
            return False
        return self.centralizer_ext(x).abelian

    def centralizer_generators(self, x):
        if self.is_identity(x):
            return [self.gen(s) for s in self.generator_names]
        return list(self.centralizer_ext(x).generators)

    def abelian_centralizer(self, u):
        """``C(u)`` as an abelian subgroup supporting coset factorisation.

        Supported when ``u`` is conjugate into a factor; the hyperbolic case
        has no coset normal form here."""
        if self.is_identity(u):
            raise InputError("the centraliser of the identity is the whole group")
        core, conj = self.cyclic_reduce(u)
        kind = self.classify(core)
        if kind == "B":
            sub = WholeB(self)
        elif kind == "G":
            w = core.syl[0]
            if self.C.contains(w):
                if not self.base.centralizer_is_abelian(w):
                    raise NonAbelianCentralizer(
                        f"C({self.fmt(u)}) is non-abelian; extension of non-abelian centraliser unsupported"
                    )
                sub = WholeB(self)
            else:
                sub = FactorSubgroup(self, self.base.abelian_centralizer(w))
        else:
            raise Unsupported(
                f"{self.fmt(u)} is not conjugate into a factor; "
                "extending such centralisers is not supported"
            )
        if self.is_identity(conj):
            return sub
        return ConjugateSubgroup(self, sub, conj)


@dataclass(frozen=True)
class ExtensionCentralizer:
    kind: str
    generators: tuple
    abelian: bool
    core: AmalgamElement
    conjugator: AmalgamElement
    z: object = None
    o_prime: tuple = ()

    def to_json(self):
        g = self.core.group
        out = {
            "kind": self.kind,
            "abelian": self.abelian,
            "core": g.fmt(self.core),
            "conjugator": g.fmt(self.conjugator),
            "generators": [g.fmt(x) for x in self.generators],
        }
        if self.z is not None:
            out["z"] = g.fmt(self.z)
            out["o_prime"] = [g.fmt(x) for x in self.o_prime]
        return out


class _Subgroup:
    def contains(self, x):
        return self.coords(x) is not None

    def element(self, coords):
        E = self.group
        out = E.identity()
        for b, k in zip(self.generators, coords):
            if k:
                out = E.mul(out, E.pow(b, k))
        return out


class WholeB(_Subgroup):
    """``B = C x A`` inside the extension."""

    def __init__(self, E):
        self.group = E
        self.generators = E.b_basis()
        self.rank = len(self.generators)

    def coords(self, x):
        E = self.group
        syl = x.syl
        if x.n == 0:
            c = E.C.coords(syl[0])
            return None if c is None else tuple(c) + E.zero
        if x.n == 1 and E.base.is_identity(syl[0]):
            c = E.C.coords(syl[2])
            return None if c is None else tuple(c) + syl[1]
        return None

    def split(self, x):
        E = self.group
        syl = x.syl
        if x.n == 0:
            rep, c = E.C.split(syl[0])
            return E.embed(rep), tuple(c) + E.zero
        c = E.C.coords(syl[-1])
        if c is not None:
            return AmalgamElement(E, syl[:-2]), tuple(c) + syl[-2]
        rep, c = E.C.split(syl[-1])
        return AmalgamElement(E, syl[:-1] + (rep,)), tuple(c) + E.zero


class FactorSubgroup(_Subgroup):
    """An abelian subgroup of the base factor, ``K`` not meeting the A side."""

    def __init__(self, E, K):
        self.group = E
        self.K = K
        self.generators = [E.embed(c) for c in K.generators]
        self.rank = K.rank

    def coords(self, x):
        if x.n:
            return None
        c = self.K.coords(x.syl[0])
        return None if c is None else tuple(c)

    def split(self, x):
        rep, c = self.K.split(x.syl[-1])
        return AmalgamElement(self.group, x.syl[:-1] + (rep,)), tuple(c)


class ConjugateSubgroup(_Subgroup):
    """``h K h^-1``."""

    def __init__(self, E, K, h):
        self.group = E
        self.K = K
        self.h = h
        self.hinv = E.inv(h)
        self.generators = [E.conj(b, self.hinv) for b in K.generators]
        self.rank = K.rank

    def coords(self, x):
        return self.K.coords(self.group.conj(x, self.h))

    def split(self, x):
        E = self.group
        rep, c = self.K.split(E.mul(x, self.h))
        return E.mul(rep, self.hinv), c


def fresh_names(existing, stem, count):
    taken = set(existing)
    out = []
    i = 1
    while len(out) < count:
        name = f"{stem}{i}" if count > 1 or f"{stem}" in taken else stem
        if count == 1 and stem not in taken:
            name = stem
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out


def extend(base, u, a_rank, a_names=None):
    return ExtensionGroup(base, u, a_rank, a_names)
