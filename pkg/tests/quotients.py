"""Finite permutation quotients used to refute commutation quickly.

A quotient assigns each generator a permutation of six points such that
adjacent generators get commuting permutations, so it is a homomorphism of
the RAAG and non-commuting images prove the elements do not commute.  Two
families are used: pair maps, which kill all generators except a
non-adjacent pair, and whole-graph maps built greedily, each generator
drawn from the centraliser of its already-assigned neighbours.
"""

import random
from itertools import permutations

import numpy as np

PERMS = list(permutations(range(6)))
_INDEX = {p: i for i, p in enumerate(PERMS)}
MUL = np.array(
    [[_INDEX[tuple(p[q[i]] for i in range(6))] for q in PERMS] for p in PERMS], dtype=np.int16
)
INV = np.array([_INDEX[tuple(sorted(range(6), key=p.__getitem__))] for p in PERMS], dtype=np.int16)
_ALL = np.arange(len(PERMS))
COMMUTES = MUL == MUL.T


def _table(n, assign):
    t = np.zeros(2 * n + 1, dtype=np.int16)
    for v, p in assign.items():
        t[v + 1] = p
        t[-(v + 1)] = INV[p]
    return t


def letter_tables(g, seed=0, copies=6, whole=24):
    rng = random.Random(seed)
    n = len(g.vertices)
    tables = []
    for a in range(n):
        for b in range(a + 1, n):
            if b not in g.adj[a]:
                for _ in range(copies):
                    tables.append(_table(n, {v: rng.randrange(len(PERMS)) for v in (a, b)}))
    for _ in range(whole):
        order = list(range(n))
        rng.shuffle(order)
        assign = {}
        for v in order:
            ok = _ALL
            for w in g.adj[v]:
                if w in assign:
                    p = assign[w]
                    ok = ok[MUL[p, ok] == MUL[ok, p]]
            assign[v] = int(ok[rng.randrange(len(ok))])
        tables.append(_table(n, assign))
    return tables


def images(words, tables, width):
    A = np.zeros((len(words), width), dtype=np.int64)
    for i, w in enumerate(words):
        A[i, : len(w)] = w
    out = []
    for t in tables:
        img = np.zeros(len(words), dtype=np.int16)
        for p in range(width):
            img = MUL[img, t[A[:, p]]]
        out.append(img)
    return np.array(out)


def maybe_commuting(g_images, ball_images, candidates=None):
    """Indices into the ball whose images commute with ``g`` in every quotient."""
    cand = np.arange(ball_images.shape[1]) if candidates is None else candidates
    for row, gi in zip(ball_images, g_images):
        if gi == 0:
            continue
        cand = cand[COMMUTES[gi][row[cand]]]
        if not len(cand):
            break
    return cand
