"""
Finite iterated centraliser extensions and truncated Z[t]-exponentiation.

Level ``i+1`` of a chain extends ``C_i = C(u_i)`` in level ``i`` by
``A_i = C_i (x) (t Z[t] / t^(d+1))``, with one generator ``c(x)t^j`` per basis
element ``c`` of ``C_i`` and ``1 <= j <= d``.  So ``B_i = C_i x A_i`` is the
truncated module ``C_i (x) Z[t]/t^(d+1)`` and an element of ``B_i`` is a
coefficient matrix ``coeff[b][j]``.  Specialising ``t -> m`` sends
``c(x)t^j`` to ``c^(m^j)``, level by level.

    >>> from .graph import CommutationGraph
    >>> ch = build_ice(CommutationGraph.edgeless("xy"), [("x", 2)])
    >>> str(eval_at(ch, parse_expression(ch, "x^{2+t^2}"), 3))
    'x^11'
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .amalgam import ConjugateSubgroup, ExtensionGroup, FactorSubgroup, WholeB
from .centralizers import CentralizerDescription, centralizer_key, conjugacy_class
from .discrimination import substitute
from .errors import BudgetExceeded, InputError
from .raag import Raag
from .words import NormalWord, parse_syllables

__all__ = [
    "PolyExp",
    "IceChain",
    "build_ice",
    "parse_expression",
    "eval_at",
    "specialize",
    "power",
    "axiom_check",
]


class TruncationExceeded(BudgetExceeded):
    pass


@dataclass(frozen=True)
class PolyExp:
    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def const(cls, k):
        return cls((k,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PolyExp(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return PolyExp()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return PolyExp(tuple(out))

    def __neg__(self):
        return PolyExp(tuple(-x for x in self.coeffs))

    def __call__(self, m):
        return sum(c * m ** j for j, c in enumerate(self.coeffs))

    def coeff(self, j):
        return self.coeffs[j] if j < len(self.coeffs) else 0

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            if j and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    @classmethod
    def parse(cls, text):
        """``"2+3t+t^2"``, ``"t^2-1"``, ``"-t"``, ``"4"``, ``"3*t"``."""
        if isinstance(text, PolyExp):
            return text
        if isinstance(text, int):
            return cls.const(text)
        if isinstance(text, list):
            return cls(tuple(text))
        s = str(text).replace(" ", "").replace("*", "").replace("−", "-")
        if not s:
            raise InputError("empty polynomial")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise InputError(f"cannot parse polynomial {text!r}")
        out = {}
        for term in terms:
            m = re.fullmatch(r"([+-]?)(\d*)(t(?:\^(\d+))?)?", term)
            if not m or (not m.group(2) and not m.group(3)):
                raise InputError(f"cannot parse polynomial term {term!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            j = 0 if not m.group(3) else int(m.group(4) or 1)
            out[j] = out.get(j, 0) + sign * c
        top = max(out) if out else 0
        return cls(tuple(out.get(j, 0) for j in range(top + 1)))


@dataclass
class IceChain:
    graph: object
    levels: list
    steps: list = field(default_factory=list)

    @property
    def top(self):
        return self.levels[-1]

    def lift(self, x, level):
        """Embed an element of ``levels[level]`` into the top group."""
        for E in self.levels[level + 1 :]:
            x = E.embed(x)
        return x

    def to_json(self):
        return {
            "base": self.graph.to_json(),
            "levels": [
                {
                    "u": s["u_text"],
                    "degree": s["degree"],
                    "c_basis": s["basis_text"],
                    "a_rank": s["group"].a_rank,
                    "a_names": s["group"].a_names,
                }
                for s in self.steps
            ],
        }


def _label(group, c):
    text = group.fmt(c)
    out = []
    for name, e in parse_syllables(text):
        out.append(name if e == 1 else f"{name}{e}".replace("-", "m"))
    return ".".join(out) or "one"


def _ckey(group, u):
    if isinstance(group, Raag):
        return centralizer_key(u)
    core, _ = group.cyclic_reduce(u)
    kind = group.classify(core)
    if kind == "G" and not group.C.contains(core.syl[0]):
        inner = _ckey(group.base, core.syl[0])
        return None if inner is None else ("G", inner)
    if kind in ("G", "B"):
        return ("B",)
    return None


def build_ice(graph, steps):
    """Chain ``G^(0) < G^(1) < ...``.  Each step is ``(u, degree)`` or a
    list of such pairs extended together (their centralisers must be pairwise
    non-conjugate)."""
    group = Raag(graph)
    chain = IceChain(graph, [group])
    for step in steps:
        batch = step if isinstance(step, list) and step and isinstance(step[0], (list, tuple, dict)) else [step]
        batch = [_as_pair(s) for s in batch]
        if len(batch) > 1:
            here = chain.top
            keys = [_ckey(here, here.parse(u)) for u, _ in batch]
            for i, a in enumerate(keys):
                for j in range(i):
                    if a is not None and a == keys[j]:
                        raise InputError(
                            f"centralisers of {batch[j][0]!r} and {batch[i][0]!r} are conjugate"
                        )
        for u_text, degree in batch:
            _add_level(chain, u_text, degree)
    return chain


def _as_pair(s):
    if isinstance(s, dict):
        return s["u"], int(s.get("degree", 1))
    u, d = s
    return u, int(d)


def _add_level(chain, u_text, degree):
    if degree < 1:
        raise InputError("degree must be at least 1")
    G = chain.top
    u = G.parse(u_text) if not hasattr(u_text, "graph") and not hasattr(u_text, "syl") else u_text
    C = G.abelian_centralizer(u)
    basis = list(C.generators)
    taken = set(G.generator_names)
    names = []
    for c in basis:
        lab = _label(G, c)
        for j in range(1, degree + 1):
            name = f"{lab}~t{j}"
            while name in taken:
                name = "_" + name
            taken.add(name)
            names.append(name)
    E = ExtensionGroup(G, u, len(names), names)
    chain.levels.append(E)
    chain.steps.append(
        {
            "u": u,
            "u_text": G.fmt(u),
            "degree": degree,
            "basis": basis,
            "basis_text": [G.fmt(c) for c in basis],
            "rank": len(basis),
            "group": E,
        }
    )


# ------------------------------------------------------------------ B_i modules


def _vec_index(step, b, j):
    return b * step["degree"] + (j - 1)


def _coeff_from(step, c_coords, a_vec):
    r, d = step["rank"], step["degree"]
    coeff = [[0] * (d + 1) for _ in range(r)]
    for b in range(r):
        coeff[b][0] = c_coords[b]
        for j in range(1, d + 1):
            coeff[b][j] = a_vec[_vec_index(step, b, j)] if a_vec else 0
    return coeff


def module_element(chain, i, coeff):
    """Element of ``B_i`` (inside level ``i+1``) with the given coefficients."""
    step = chain.steps[i]
    E = step["group"]
    c = E.C.element([row[0] for row in coeff])
    vec = [0] * E.a_rank
    for b, row in enumerate(coeff):
        for j in range(1, step["degree"] + 1):
            vec[_vec_index(step, b, j)] = row[j]
    return E.mul(E.embed(c), E.a_element(vec))


def _locate(chain, level, x):
    """Find ``(i, k, coeff)`` with ``x = k y k^-1`` and ``y`` in ``B_i``;
    ``k`` lives in ``levels[level]``.  None when ``x`` is not conjugate into
    any extended centraliser."""
    if level == 0:
        return None
    E = chain.levels[level]
    core, conj = E.cyclic_reduce(x)
    kind = E.classify(core)
    step = chain.steps[level - 1]
    if kind == "B":
        coeff = _coeff_from(step, E.C.coords(core.syl[2]), core.syl[1])
        return level - 1, conj, coeff
    if kind != "G":
        return None
    w = core.syl[0]
    K = _conj_into(E.base, E.C, w)
    if K is not None:
        y = E.base.conj(w, K)
        if not _full_centraliser(E.base, E.C, y):
            return None
        return level - 1, E.mul(conj, E.embed(K)), _coeff_from(step, E.C.coords(y), None)
    inner = _locate(chain, level - 1, w)
    if inner is None:
        return None
    i, k, coeff = inner
    return i, E.mul(conj, E.embed(k)), coeff


def _conj_into(G, C, w):
    """Some ``K`` with ``K^-1 w K`` in the abelian subgroup ``C``, or None."""
    if C.contains(w):
        return G.identity()
    if isinstance(C, ConjugateSubgroup):
        K = _conj_into(G, C.K, w)
        return None if K is None else G.mul(K, C.hinv)
    if isinstance(C, CentralizerDescription):
        # cyclically reduced conjugates differ by cyclic permutation
        core, c = G.cyclic_reduce(w)
        cu = C.conjugator
        for y, k in sorted(conjugacy_class(core).items(), key=lambda t: t[0].key()):
            if C.contains(y.conj(cu.inverse())):
                return c * k * cu.inverse()
        return None
    core, cj = G.cyclic_reduce(w)
    kind = G.classify(core)
    if kind == "B" and isinstance(C, WholeB):
        return cj
    if kind != "G":
        return None
    inner = C.K if isinstance(C, FactorSubgroup) else G.C
    K = _conj_into(G.base, inner, core.syl[0])
    return None if K is None else G.mul(cj, G.embed(K))


def _full_centraliser(group, C, w):
    # w^t only makes sense when C is all of C(w); otherwise w has a bigger
    # centraliser that the new t-powers would fail to commute with
    try:
        gens = group.abelian_centralizer(w).generators
    except InputError:
        return False
    return all(C.contains(g) for g in gens)


def _lift_from(chain, x, level, target):
    for E in chain.levels[level + 1 : target + 1]:
        x = E.embed(x)
    return x


def _mul_coeff(coeff, poly, degree):
    out = []
    for row in coeff:
        new = [0] * (degree + 1)
        for j, c in enumerate(row):
            if not c:
                continue
            for k, p in enumerate(poly.coeffs):
                if not p:
                    continue
                if j + k > degree:
                    raise TruncationExceeded(
                        f"truncation exceeded: degree {j + k} > {degree}", degree=degree
                    )
                new[j + k] += c * p
        out.append(new)
    return out


def power(chain, x, poly, level=None):
    """``x^poly`` in ``levels[level]`` (default: the top)."""
    poly = PolyExp.parse(poly)
    level = len(chain.levels) - 1 if level is None else level
    G = chain.levels[level]
    if poly.degree <= 0:
        return G.pow(x, poly.coeff(0))
    if G.is_identity(x):
        return x
    loc = _locate(chain, level, x)
    if loc is None:
        raise TruncationExceeded(
            f"{G.fmt(x)} is not exponentiable: its centraliser was never tensor-extended"
        )
    i, k, coeff = loc
    new = _mul_coeff(coeff, poly, chain.steps[i]["degree"])
    y = _lift_from(chain, module_element(chain, i, new), i + 1, level)
    return G.conj(y, G.inv(k))


def specialize(chain, x, m, level=None):
    """Image of ``x`` in the base RAAG under ``t -> m`` at every level."""
    level = len(chain.levels) - 1 if level is None else level
    for i in range(level, 0, -1):
        step = chain.steps[i - 1]
        E = step["group"]

        def image(vec, E=E, step=step):
            coords = [
                sum(vec[_vec_index(step, b, j)] * m ** j for j in range(1, step["degree"] + 1))
                for b in range(step["rank"])
            ]
            return E.C.element(coords)

        x = substitute(E, x, image)
    return x


def parse_expression(chain, text):
    """Factors from ``"x^{2+t^2} y (a c)^{t}"``: a name or parenthesised
    group followed by ``^{poly}`` is a power, everything else is literal."""
    if isinstance(text, list):
        factors = []
        for f in text:
            if isinstance(f, dict) and "base" in f:
                factors.append(("pow", chain.top.parse(f["base"]), PolyExp.parse(f.get("exp", "1"))))
            elif isinstance(f, dict) and "word" in f:
                factors.append(("lit", chain.top.parse(f["word"])))
            else:
                raise InputError(f"bad expression factor {f!r}")
        return factors
    factors = []
    pos = 0
    pat = re.compile(r"(\([^()]*\)|[A-Za-z_][\w.'~@*]*)\s*\^\s*\{([^}]*)\}")
    for m in pat.finditer(text):
        lit = text[pos : m.start()].strip()
        if lit:
            factors.append(("lit", chain.top.parse(lit)))
        base = m.group(1)
        if base.startswith("("):
            base = base[1:-1]
        factors.append(("pow", chain.top.parse(base), PolyExp.parse(m.group(2))))
        pos = m.end()
    lit = text[pos:].strip()
    if lit:
        factors.append(("lit", chain.top.parse(lit)))
    return factors


def evaluate(chain, factors):
    G = chain.top
    out = G.identity()
    for f in factors:
        out = G.mul(out, f[1] if f[0] == "lit" else power(chain, f[1], f[2]))
    return out


def eval_at(chain, expr, m):
    if m < 1:
        raise InputError("m must be a positive integer")
    if isinstance(expr, str) or (isinstance(expr, list) and expr and isinstance(expr[0], dict)):
        expr = parse_expression(chain, expr)
    x = evaluate(chain, expr) if isinstance(expr, list) else expr
    return specialize(chain, x, m)


def discriminate(chain, elements, budget=16):
    """Least ``m`` at which the given top-level elements specialise to
    nontrivial, pairwise distinct elements of the base."""
    for m in range(1, budget + 1):
        images = [specialize(chain, x, m) for x in elements]
        if all(images) and len(set(images)) == len(images):
            return m, images
    raise BudgetExceeded(f"budget exhausted: no m <= {budget} discriminates", m=budget)


# ------------------------------------------------------------------ axioms


def _random_poly(rng, degree):
    return PolyExp(tuple(rng.randint(-2, 2) for _ in range(rng.randint(0, degree) + 1)))


def _random_module_coeff(chain, rng, i):
    step = chain.steps[i]
    coeff = [[0] * (step["degree"] + 1) for _ in range(step["rank"])]
    for row in coeff:
        row[0] = rng.randint(-2, 2)
        if rng.random() < 0.3:
            j = rng.randint(1, step["degree"])
            row[j] = rng.randint(-1, 1)
    return coeff


def axiom_check(chain, samples=200, m_values=(1, 2, 3, 5), seed=0):
    """Sampled check of the A-group axioms; entries report pass/fail with
    counts of checked and skipped (unrepresentable) cases."""
    rng = random.Random(seed)
    G = chain.top
    top = len(chain.levels) - 1
    stats = {}

    def record(name, lhs, rhs, witness):
        st = stats.setdefault(name, {"checked": 0, "skipped": 0, "failures": []})
        if lhs is None or rhs is None:
            st["skipped"] += 1
            return
        st["checked"] += 1
        if lhs != rhs:
            st["failures"].append(dict(witness, m=None, side="exact"))
            return
        for m in m_values:
            if specialize(chain, lhs, m) != specialize(chain, rhs, m):
                st["failures"].append(dict(witness, m=m))
                return

    def safe(f):
        try:
            return f()
        except TruncationExceeded:
            return None

    if not chain.steps:
        return [{"axiom": "A-group", "status": "pass", "checked": 0, "skipped": 0,
                 "note": "chain has no extension levels"}]
    one = G.identity()
    for _ in range(samples):
        i = rng.randrange(len(chain.steps))
        coeff = _random_module_coeff(chain, rng, i)
        g = _lift_from(chain, module_element(chain, i, coeff), i + 1, top)
        if rng.random() < 0.5:
            h = G.random_element(rng, rng.randint(1, 3))
            g = G.conj(g, h)
        a = _random_poly(rng, chain.steps[i]["degree"])
        b = _random_poly(rng, chain.steps[i]["degree"])
        wit = {"g": G.fmt(g), "alpha": str(a), "beta": str(b)}

        record("A1: g^1 = g", safe(lambda: power(chain, g, PolyExp((1,)))), g, wit)
        record("A1: g^0 = 1", safe(lambda: power(chain, g, PolyExp())), one, wit)
        record("A1: 1^a = 1", safe(lambda: power(chain, one, a)), one, wit)
        ga = safe(lambda: power(chain, g, a))
        gb = safe(lambda: power(chain, g, b))
        record(
            "A2: g^(a+b) = g^a g^b",
            safe(lambda: power(chain, g, a + b)),
            None if ga is None or gb is None else G.mul(ga, gb),
            wit,
        )
        record(
            "A2: g^(ab) = (g^a)^b",
            safe(lambda: power(chain, g, a * b)),
            None if ga is None else safe(lambda: power(chain, ga, b)),
            wit,
        )
        h = G.random_element(rng, rng.randint(1, 3))
        record(
            "A3: (h^-1 g h)^a = h^-1 g^a h",
            safe(lambda: power(chain, G.conj(g, h), a)),
            None if ga is None else G.conj(ga, h),
            dict(wit, h=G.fmt(h)),
        )
        coeff2 = _random_module_coeff(chain, rng, i)
        g1 = _lift_from(chain, module_element(chain, i, coeff), i + 1, top)
        g2 = _lift_from(chain, module_element(chain, i, coeff2), i + 1, top)
        p1 = safe(lambda: power(chain, g1, a))
        p2 = safe(lambda: power(chain, g2, a))
        record(
            "A4: (gh)^a = g^a h^a for [g,h]=1",
            safe(lambda: power(chain, G.mul(g1, g2), a)),
            None if p1 is None or p2 is None else G.mul(p1, p2),
            dict(wit, h=G.fmt(g2)),
        )
        if all(row[1:] == [0] * (len(row) - 1) for row in coeff):
            # g in C_i: t -> m turns g^a into g^(a(m))
            st = stats.setdefault("specialization: g^a -> g^(a(m))", {"checked": 0, "skipped": 0, "failures": []})
            ga1 = safe(lambda: power(chain, g1, a))
            if ga1 is None:
                st["skipped"] += 1
                continue
            st["checked"] += 1
            base_g = specialize(chain, g1, 1)
            for m in m_values:
                lhs = specialize(chain, ga1, m)
                B = chain.levels[0]
                if lhs != B.pow(base_g, a(m)):
                    st["failures"].append(dict(wit, m=m))
                    break
    out = []
    for name, st in stats.items():
        entry = {
            "axiom": name,
            "status": "fail" if st["failures"] else "pass",
            "checked": st["checked"],
            "skipped": st["skipped"],
        }
        if st["failures"]:
            entry["witness"] = st["failures"][0]
        out.append(entry)
    return out
