"""Centraliser completeness over a ball of the Cayley graph.

For each cyclically reduced ``g`` the ball splits into elements inside the
computed ``C(g)`` and the rest.  Every element of the rest must fail to
commute with ``g``: permutation quotients refute most of them and the stack
oracle settles whatever survives.  Membership in a parabolic subgroup
``<V>`` is support containment, so for the canonical kinds the split is a
bitmask test; the abelian non-canonical kind asks the library per element.
"""

import numpy as np

from limitraag.centralizers import ABELIAN_NON_CANONICAL, centralizer
from limitraag.words import NormalWord

from oracles import ball, commute_exact, stack_reduce
from quotients import images, letter_tables, maybe_commuting


def _mask(w):
    m = 0
    for x in w:
        m |= 1 << (abs(x) - 1)
    return m


def check_completeness(g, g_len=4, w_len=6, seed=0, limit=None):
    """Return ``(checked_g, exact_calls, failures)``."""
    words = ball(g, w_len)
    masks = np.array([_mask(w) for w in words], dtype=np.int64)
    tables = letter_tables(g, seed)
    ball_img = images(words, tables, w_len)
    gs = [
        w for w in words if 0 < len(w) <= g_len and len(stack_reduce(g, w + w)) == 2 * len(w)
    ]
    if limit is not None:
        gs = gs[:limit]
    g_img = images(gs, tables, g_len)
    failures = []
    exact = 0
    for k, gw in enumerate(gs):
        elem = NormalWord(g, gw)
        desc = centralizer(elem)
        for x in desc.generators:
            if not commute_exact(g, gw, x.letters):
                failures.append(("generator", str(elem), str(x)))
        vmask = sum(1 << g.index[v] for v in desc.vertex_part)
        outside = np.nonzero(masks & ~vmask)[0]
        cand = maybe_commuting(g_img[:, k], ball_img, outside)
        for i in cand:
            w = words[i]
            if desc.kind == ABELIAN_NON_CANONICAL and desc.contains(NormalWord(g, w)):
                continue
            exact += 1
            if commute_exact(g, gw, w):
                failures.append(("missing", str(elem), str(NormalWord(g, w))))
    return len(gs), exact, failures
