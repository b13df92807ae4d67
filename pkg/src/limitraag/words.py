"""
Words and normal forms in a right-angled Artin group.

Internally a letter is a nonzero integer: ``+(i+1)`` is generator ``i`` and
``-(i+1)`` its inverse.  Reduction uses one stack ("pile") per generator; a
letter pushes itself on its own pile and a blocker on the pile of every
generator it does not commute with.  Cancellation happens exactly when the
top of a pile is the inverse letter.  Reading the piles back from the bottom,
always taking the least available generator, gives the shortlex-least
geodesic.

    >>> from .graph import CommutationGraph
    >>> p4 = CommutationGraph.path("abcd")
    >>> str(normalize(parse(p4, "b a b^-1")))
    'a'
    >>> str(root(parse(p4, "a^2 b^2")).root)
    'a b'
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import reduce as _fold
from math import gcd

from .errors import BudgetExceeded, InputError
from .graph import complement_components

__all__ = [
    "NormalWord",
    "BlockDecomposition",
    "RootResult",
    "parse",
    "from_syllables",
    "normalize",
    "equals",
    "cyclic_reduce",
    "block_decompose",
    "root",
    "is_cyclically_reduced",
    "identity",
    "generator",
]

ROOT_LENGTH_CAP = 16


def _noncommuting(g):
    cache = getattr(g, "_noncomm", None)
    if cache is None:
        n = len(g.vertices)
        cache = tuple(
            tuple(j for j in range(n) if j != i and j not in g.adj[i]) for i in range(n)
        )
        object.__setattr__(g, "_noncomm", cache)
    return cache


class Piles:
    def __init__(self, g):
        self.g = g
        self.nc = _noncommuting(g)
        self.piles = [deque() for _ in g.vertices]
        self.size = 0

    def push(self, letter):
        i = abs(letter) - 1
        e = 1 if letter > 0 else -1
        pile = self.piles[i]
        if pile and pile[-1] == -e:
            pile.pop()
            for j in self.nc[i]:
                self.piles[j].pop()
            self.size -= 1
        else:
            pile.append(e)
            for j in self.nc[i]:
                self.piles[j].append(0)
            self.size += 1

    def extend(self, letters):
        for x in letters:
            self.push(x)
        return self

    def _pop_bottom(self, i):
        self.piles[i].popleft()
        for j in self.nc[i]:
            self.piles[j].popleft()

    def _pop_top(self, i):
        self.piles[i].pop()
        for j in self.nc[i]:
            self.piles[j].pop()

    def cyclic_strip(self):
        """Cancel a bottom letter against an inverse top letter while possible;
        returns the stripped bottom letters (the conjugator)."""
        prefix = []
        changed = True
        while changed:
            changed = False
            for i, pile in enumerate(self.piles):
                if len(pile) >= 2 and pile[0] != 0 and pile[-1] == -pile[0]:
                    prefix.append((i + 1) * pile[0])
                    self._pop_bottom(i)
                    self._pop_top(i)
                    self.size -= 2
                    changed = True
                    break
        return prefix

    def right_movable(self):
        """Generators whose last letter can be shuffled to the end."""
        return [i for i, p in enumerate(self.piles) if p and p[-1] != 0]

    def drop_last(self, i):
        e = self.piles[i][-1]
        self._pop_top(i)
        self.size -= 1
        return (i + 1) * e

    def depile(self):
        out = []
        piles = self.piles
        n = len(piles)
        while True:
            for i in range(n):
                p = piles[i]
                if p and p[0] != 0:
                    out.append((i + 1) * p[0])
                    self._pop_bottom(i)
                    break
            else:
                break
        self.size = 0
        return tuple(out)


def _reduce_letters(g, letters):
    return Piles(g).extend(letters).depile()


@dataclass(frozen=True, eq=False)
class NormalWord:
    """Canonical (shortlex-least geodesic) representative of a group element."""

    graph: object
    letters: tuple

    def __eq__(self, other):
        return isinstance(other, NormalWord) and self.letters == other.letters and (
            self.graph is other.graph or self.graph == other.graph
        )

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    @property
    def length(self):
        return len(self.letters)

    @property
    def syllables(self):
        out = []
        for x in self.letters:
            i = abs(x) - 1
            e = 1 if x > 0 else -1
            if out and out[-1][0] == i:
                out[-1][1] += e
            else:
                out.append([i, e])
        return [(self.graph.vertices[i], e) for i, e in out]

    @property
    def support(self):
        return frozenset(self.graph.vertices[abs(x) - 1] for x in self.letters)

    def exponent_sum(self, v):
        i = self.graph.index[v] + 1
        return sum(1 if x == i else -1 for x in self.letters if abs(x) == i)

    def key(self):
        """Shortlex sort key: length, then letters ordered by (vertex, sign)."""
        return (len(self.letters), tuple((abs(x), x < 0) for x in self.letters))

    def __mul__(self, other):
        return NormalWord(self.graph, _reduce_letters(self.graph, self.letters + other.letters))

    def inverse(self):
        return NormalWord(
            self.graph, _reduce_letters(self.graph, tuple(-x for x in reversed(self.letters)))
        )

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        piles = Piles(self.graph)
        for _ in range(k):
            piles.extend(self.letters)
        return NormalWord(self.graph, piles.depile())

    def conj(self, h):
        """``h^-1 self h``."""
        return NormalWord(
            self.graph,
            _reduce_letters(
                self.graph, tuple(-x for x in reversed(h.letters)) + self.letters + h.letters
            ),
        )

    def commutes(self, other):
        return self * other == other * self

    def to_json(self):
        return [[v, e] for v, e in self.syllables]

    def __str__(self):
        return format_syllables(self.syllables)

    def __repr__(self):
        return f"NormalWord({str(self)!r})"


def format_syllables(syls):
    if not syls:
        return "1"
    return " ".join(v if e == 1 else f"{v}^{e}" for v, e in syls)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\^\s*[-+]?\d+)|([A-Za-z_][\w.'~@*]*)|(1)(?![\w])|(\S))")


def _tokens(text):
    pos = 0
    out = []
    text = text.replace("⁻¹", "^-1").replace("−", "-")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise InputError(f"cannot parse word at {text[pos:]!r}")
        pos = m.end()
        lp, rp, ex, name, one, bad = m.groups()
        if bad is not None:
            raise InputError(f"unexpected character {bad!r} in word {text!r}")
        if lp:
            out.append(("(", None))
        elif rp:
            out.append((")", None))
        elif ex:
            out.append(("^", int(ex[1:].strip())))
        elif name:
            out.append(("name", name))
        elif one:
            out.append(("one", None))
    return out


def parse_syllables(text):
    """Parse ``"a b^-2 (c d)^3"`` into a flat list of ``(name, exp)``;
    ``"1"`` and the empty string denote the identity."""
    if not isinstance(text, str):
        raise InputError(f"word must be a string, got {type(text).__name__}")
    toks = _tokens(text)
    pos = 0

    def seq():
        nonlocal pos
        out = []
        while pos < len(toks) and toks[pos][0] != ")":
            kind, val = toks[pos]
            pos += 1
            if kind == "(":
                body = seq()
                if pos >= len(toks) or toks[pos][0] != ")":
                    raise InputError(f"unbalanced parentheses in {text!r}")
                pos += 1
                item = body
            elif kind == "name":
                item = [(val, 1)]
            elif kind == "one":
                item = []
            else:
                raise InputError(f"dangling exponent in {text!r}")
            if pos < len(toks) and toks[pos][0] == "^":
                k = toks[pos][1]
                pos += 1
                if k >= 0:
                    item = item * k
                else:
                    item = [(v, -e) for v, e in reversed(item)] * (-k)
            out.extend(item)
        return out

    result = seq()
    if pos != len(toks):
        raise InputError(f"unbalanced parentheses in {text!r}")
    return result


def letters_of(g, syllables):
    out = []
    for v, e in syllables:
        if v not in g.index:
            raise InputError(f"generator {v!r} is not a vertex of the graph")
        if not isinstance(e, int) or isinstance(e, bool):
            raise InputError(f"exponent of {v!r} must be an integer")
        i = g.index[v] + 1
        out.extend([i if e > 0 else -i] * abs(e))
    return out


def from_syllables(g, syllables):
    return NormalWord(g, _reduce_letters(g, letters_of(g, syllables)))


def parse(g, text):
    """Parse and normalize a word string."""
    if isinstance(text, NormalWord):
        return text
    if isinstance(text, list):
        return from_syllables(g, [tuple(s) for s in text])
    return from_syllables(g, parse_syllables(text))


def normalize(w):
    if isinstance(w, NormalWord):
        return NormalWord(w.graph, _reduce_letters(w.graph, w.letters))
    raise InputError("normalize expects a NormalWord or use parse()")


def identity(g):
    return NormalWord(g, ())


def generator(g, v, e=1):
    return from_syllables(g, [(v, e)])


def equals(u, v):
    if not (u.graph is v.graph or u.graph == v.graph):
        raise InputError("words live over different graphs")
    return _reduce_letters(u.graph, u.letters + tuple(-x for x in reversed(v.letters))) == ()


def cyclic_reduce(w):
    """Return ``(core, conjugator)`` with ``w = conjugator core conjugator^-1``."""
    g = w.graph
    piles = Piles(g).extend(w.letters)
    prefix = piles.cyclic_strip()
    core = NormalWord(g, piles.depile())
    return core, NormalWord(g, _reduce_letters(g, prefix))


def is_cyclically_reduced(w):
    return len(w * w) == 2 * len(w)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple

    def product(self):
        return _fold(lambda a, b: a * b, self.blocks)


def project(w, vertices):
    """Delete every letter outside ``vertices``; a retraction onto the
    parabolic subgroup they generate."""
    keep = {w.graph.index[v] + 1 for v in vertices}
    return NormalWord(w.graph, _reduce_letters(w.graph, [x for x in w.letters if abs(x) in keep]))


def block_decompose(w):
    if not w:
        return BlockDecomposition(())
    if not is_cyclically_reduced(w):
        raise InputError(f"block decomposition needs a cyclically reduced word, got {w}")
    parts = complement_components(w.graph, w.support)
    return BlockDecomposition(tuple(project(w, p) for p in parts))


@dataclass(frozen=True)
class RootResult:
    root: NormalWord
    multiplicity: int


def _prefix_ideals(w, size, counts):
    """Yield prefixes of geodesic representatives of ``w`` with the given
    length and letter content (order ideals of the dependence order)."""
    g = w.graph
    nc = _noncommuting(g)
    letters = w.letters
    n = len(letters)
    # pred[k]: earlier positions that must precede position k
    pred = []
    for k, x in enumerate(letters):
        i = abs(x) - 1
        pred.append(
            frozenset(
                j for j in range(k) if abs(letters[j]) - 1 == i or abs(letters[j]) - 1 in nc[i]
            )
        )
    seen = set()
    stack = [frozenset()]
    while stack:
        ideal = stack.pop()
        if ideal in seen:
            continue
        seen.add(ideal)
        if len(seen) > 200000:
            raise BudgetExceeded("root search exceeded its ideal budget", length=n)
        if len(ideal) == size:
            content = {}
            for k in ideal:
                content[letters[k]] = content.get(letters[k], 0) + 1
            if content == counts:
                yield tuple(letters[k] for k in sorted(ideal))
            continue
        have = {}
        for k in ideal:
            have[letters[k]] = have.get(letters[k], 0) + 1
        for k in range(n):
            x = letters[k]
            if k not in ideal and pred[k] <= ideal and have.get(x, 0) < counts.get(x, 0):
                stack.append(ideal | {k})


def _block_root(b, cap):
    counts = {}
    for x in b.letters:
        counts[x] = counts.get(x, 0) + 1
    d = _fold(gcd, counts.values())
    if d == 1:
        return b, 1
    if len(b) > cap:
        raise BudgetExceeded(
            f"root extraction capped at length {cap}; block has length {len(b)}", length=len(b)
        )
    for k in sorted((k for k in range(d, 1, -1) if d % k == 0), reverse=True):
        part = {x: c // k for x, c in counts.items()}
        for pre in _prefix_ideals(b, len(b) // k, part):
            cand = NormalWord(b.graph, _reduce_letters(b.graph, pre))
            if cand ** k == b:
                return cand, k
    return b, 1


def root(w, cap=ROOT_LENGTH_CAP):
    """Unique root of a nontrivial element and its multiplicity."""
    if not w:
        raise InputError("the identity has no root")
    core, conj = cyclic_reduce(w)
    blocks = block_decompose(core).blocks
    roots = []
    mults = []
    for b in blocks:
        r, k = _block_root(b, cap)
        roots.append(r)
        mults.append(k)
    m = _fold(gcd, mults)
    r = _fold(lambda a, b: a * b, [rb ** (k // m) for rb, k in zip(roots, mults)])
    if conj:
        r = r.conj(conj.inverse())
    return RootResult(r, m)
