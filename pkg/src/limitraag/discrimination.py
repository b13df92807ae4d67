"""
Retractions of a centraliser extension onto its base, separation search and
a big-powers scanner.

The retraction ``lambda_{psi,m}`` fixes the base and sends an A-vector ``a``
to ``u^(m * psi.a)``.  Since ``u^k`` lies in ``C``, which is abelian, the
relations ``[C, A] = 1`` survive and the map is a homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, InputError

__all__ = [
    "RetractionIndex",
    "SeparationCertificate",
    "make_psi",
    "retract",
    "separate",
    "separate_all",
    "separate_to_base",
    "bp_scan",
]


@dataclass(frozen=True)
class RetractionIndex:
    psi: tuple
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InputError("m must be a positive integer")


@dataclass(frozen=True)
class SeparationCertificate:
    index: RetractionIndex
    image: object
    group: object  # the base group the image lives in

    @property
    def psi(self):
        return self.index.psi

    @property
    def m(self):
        return self.index.m

    def to_json(self):
        return {"psi": list(self.psi), "m": self.m, "image": self.group.fmt(self.image)}


def _dot(psi, v):
    return sum(p * x for p, x in zip(psi, v))


def _injective(psi, vecs):
    vals = [abs(_dot(psi, v)) for v in vecs]
    return all(vals) and len(set(vals)) == len(vals)


def make_psi(vectors):
    """Integer functional nonzero on every input vector and separating them
    up to sign.  Starts from ``(1, N, N^2, ...)`` with ``N = 1 + 2 max|coord|``
    and lowers ``N`` while that still holds.

    >>> make_psi([(1, 0), (0, 1), (1, -1)])
    (1, 3)
    >>> make_psi([(1, 1), (1, -1)])
    (1, 2)
    """
    vecs = []
    for v in vectors:
        v = tuple(v)
        if not any(v):
            raise InputError("make_psi needs nonzero vectors")
        if v not in vecs and tuple(-x for x in v) not in vecs:
            vecs.append(v)
    if not vecs:
        return ()
    k = len(vecs[0])
    if any(len(v) != k for v in vecs):
        raise InputError("vectors have different lengths")
    bound = max(abs(x) for v in vecs for x in v)
    N = 1 + 2 * bound
    psi = tuple(N ** i for i in range(k))
    while N > 1:
        cand = tuple((N - 1) ** i for i in range(k))
        if not _injective(cand, vecs):
            break
        N -= 1
        psi = cand
    return psi


def retract(ext, idx, e):
    """Image of ``e`` under ``lambda_{psi,m}`` in ``ext.base``."""
    base = ext.base
    psi = tuple(idx.psi) if idx.psi else (1,) + (0,) * (ext.a_rank - 1)
    if len(psi) != ext.a_rank:
        raise InputError(f"psi must have length {ext.a_rank}")
    out = base.identity()
    for i, s in enumerate(e.syl):
        if i % 2 == 0:
            out = base.mul(out, s)
        else:
            out = base.mul(out, base.pow(ext.u, idx.m * _dot(psi, s)))
    return out


def substitute(ext, e, image_of_vector):
    """Homomorphism fixing the base with ``a -> image_of_vector(a)``; the
    caller guarantees images lie in ``C``."""
    base = ext.base
    out = base.identity()
    for i, s in enumerate(e.syl):
        out = base.mul(out, s if i % 2 == 0 else image_of_vector(s))
    return out


def _vectors(ext, elements):
    vecs = []
    for e in elements:
        vecs.extend(v for v in e.a_syllables)
    return vecs


def separate(ext, e, m_budget=16):
    if ext.is_identity(e):
        raise InputError("cannot separate the identity from 1")
    psi = make_psi(_vectors(ext, [e])) or (1,) + (0,) * (ext.a_rank - 1)
    for m in range(1, m_budget + 1):
        idx = RetractionIndex(psi, m)
        image = retract(ext, idx, e)
        if not ext.base.is_identity(image):
            return SeparationCertificate(idx, image, ext.base)
    raise BudgetExceeded(
        f"budget exhausted: psi={list(psi)}, tried m up to {m_budget}",
        psi=list(psi),
        m=m_budget,
    )


def separate_all(ext, elements, m_budget=16):
    """One retraction keeping every element nontrivial and pairwise distinct."""
    elements = list(elements)
    if any(ext.is_identity(e) for e in elements):
        raise InputError("elements must be nontrivial")
    quotients = [
        ext.mul(a, ext.inv(b)) for i, a in enumerate(elements) for b in elements[:i]
    ]
    if any(ext.is_identity(q) for q in quotients):
        raise InputError("elements must be pairwise distinct")
    targets = elements + quotients
    psi = make_psi(_vectors(ext, targets)) or (1,) + (0,) * (ext.a_rank - 1)
    for m in range(1, m_budget + 1):
        idx = RetractionIndex(psi, m)
        images = [retract(ext, idx, t) for t in targets]
        if not any(ext.base.is_identity(x) for x in images):
            return idx, images[: len(elements)]
    raise BudgetExceeded(
        f"budget exhausted: psi={list(psi)}, tried m up to {m_budget}",
        psi=list(psi),
        m=m_budget,
    )


def separate_to_base(group, e, m_budget=16):
    """Compose separations down nested extensions until the RAAG; returns
    the list of certificates (top level first)."""
    certs = []
    while hasattr(group, "base"):
        cert = separate(group, e, m_budget)
        certs.append(cert)
        group, e = group.base, cert.image
    return certs


def bp_scan(group, elements, n_bound):
    """Search for exponents ``1 <= alpha_i <= n_bound`` with
    ``u_1^alpha_1 ... u_k^alpha_k = 1``; returns the exponents or None."""
    us = [group.parse(u) if isinstance(u, str) else u for u in elements]
    if len(us) < 2:
        raise InputError("bp_scan needs at least two elements")
    for a, b in zip(us, us[1:]):
        if group.commute(a, b):
            raise InputError(
                f"non-generic tuple: [{group.fmt(a)}, {group.fmt(b)}] = 1"
            )
    powers = [[None] + [group.pow(u, k) for k in range(1, n_bound + 1)] for u in us]
    k = len(us)
    for norm in range(1, n_bound + 1):
        for alpha in product(range(1, norm + 1), repeat=k):
            if max(alpha) != norm:
                continue
            out = group.identity()
            for p, a in zip(powers, alpha):
                out = group.mul(out, p[a])
            if group.is_identity(out):
                return list(alpha)
    return None
