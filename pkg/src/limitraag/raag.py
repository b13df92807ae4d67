"""
Group handle for a RAAG, exposing the interface centraliser extensions use.

Every group handle (this class and :class:`~limitraag.amalgam.ExtensionGroup`)
provides ``identity``, ``mul``, ``inv``, ``is_identity``, ``parse``, ``fmt``,
``cyclic_reduce``, ``abelian_centralizer``, ``centralizer_generators``,
``centralizer_is_abelian`` and ``random_element``.
"""

from __future__ import annotations

from .centralizers import centralizer, ensure_chordal
from .errors import InputError, NonAbelianCentralizer
from .words import NormalWord, cyclic_reduce, from_syllables, generator, identity, parse


class Raag:
    def __init__(self, graph):
        ensure_chordal(graph)
        self.graph = graph
        self.depth = 0

    def __repr__(self):
        return f"Raag({list(self.graph.vertices)})"

    @property
    def base_raag(self):
        return self

    @property
    def generator_names(self):
        return list(self.graph.vertices)

    def identity(self):
        return identity(self.graph)

    def gen(self, name, e=1):
        return generator(self.graph, name, e)

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def pow(self, a, k):
        return a ** k

    def conj(self, a, h):
        return a.conj(h)

    def is_identity(self, a):
        return not a

    def commute(self, a, b):
        return a * b == b * a

    def owns(self, a):
        return isinstance(a, NormalWord) and a.graph == self.graph

    def parse(self, text):
        return parse(self.graph, text)

    def parse_syllables(self, syls):
        return from_syllables(self.graph, syls)

    def fmt(self, a):
        return str(a)

    def key(self, a):
        return a.key()

    def to_json(self, a):
        return a.to_json()

    def from_json(self, data):
        if isinstance(data, str):
            return self.parse(data)
        return from_syllables(self.graph, [tuple(s) for s in data])

    def cyclic_reduce(self, a):
        return cyclic_reduce(a)

    def centralizer_is_abelian(self, a):
        if not a:
            return False
        return centralizer(a).is_abelian

    def centralizer_generators(self, a):
        if not a:
            return [self.gen(v) for v in self.graph.vertices]
        return centralizer(a).generators

    def abelian_centralizer(self, u):
        if not u:
            raise InputError("the centraliser of the identity is the whole group")
        desc = centralizer(u)
        if not desc.is_abelian:
            raise NonAbelianCentralizer(
                f"C({u}) is non-abelian; extension of non-abelian centraliser unsupported"
            )
        return desc

    def random_element(self, rng, length):
        verts = self.graph.vertices
        return from_syllables(
            self.graph,
            [(rng.choice(verts), rng.choice((1, -1))) for _ in range(length)],
        )
