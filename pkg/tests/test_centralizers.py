import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitraag.centralizers import (
    ABELIAN_CANONICAL,
    ABELIAN_NON_CANONICAL,
    NON_ABELIAN,
    RepresentativeSet,
    centralizer,
    centralizer_of_set,
    check_class_c_axioms,
    conjugacy_representative,
    report_passed,
    representatives,
    zo_split,
)
from limitraag.errors import BudgetExceeded, InputError, NotChordal
from limitraag.graph import CommutationGraph
from limitraag.words import cyclic_reduce, from_syllables, identity, parse

from corpus import F2, HUB7, P4, SMALL, Z3
from oracles import ball, fast_reduce
from strategies import chordal_graphs, syllables


def commute(g, u, v):
    return fast_reduce(g, u.letters + v.letters) == fast_reduce(g, v.letters + u.letters)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_generators_commute(data):
    g = data.draw(chordal_graphs(max_size=5))
    w = from_syllables(g, data.draw(syllables(g, 8)))
    if not w:
        return
    desc = centralizer(w)
    for x in desc.generators:
        assert commute(g, w, x)
        assert desc.contains(x)
    assert desc.contains(w)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_abelian_coords_round_trip(data):
    g = data.draw(chordal_graphs(max_size=5))
    w = from_syllables(g, data.draw(syllables(g, 6)))
    if not w or not centralizer(w).is_abelian:
        return
    desc = centralizer(w)
    coords = data.draw(st.lists(st.integers(-3, 3), min_size=desc.rank, max_size=desc.rank))
    x = desc.element(coords)
    assert desc.coords(x) == tuple(coords)
    h = from_syllables(g, data.draw(syllables(g, 4)))
    y = h * x
    rep, c = desc.split(y)
    assert rep * desc.element(c) == y
    assert desc.split(rep)[0] == rep


@pytest.mark.parametrize("name", ["P3", "P4", "paw", "diamond", "star4", "K2+K2", "E2"])
def test_completeness_small(name):
    g = SMALL[name]
    elems = [_word(g, w) for w in ball(g, 4)]
    for gw in elems:
        if not gw or len(gw) > 3 or len(gw * gw) != 2 * len(gw):
            continue
        desc = centralizer(gw)
        for x in elems:
            if commute(g, gw, x):
                assert desc.contains(x), (str(gw), str(x))


def _word(g, letters):
    from limitraag.words import NormalWord

    return NormalWord(g, tuple(letters))


def test_kinds():
    assert centralizer(parse(P4, "b")).kind == NON_ABELIAN
    assert centralizer(parse(P4, "a")).kind == ABELIAN_CANONICAL
    desc = centralizer(parse(P4, "a c"))
    assert desc.kind == ABELIAN_NON_CANONICAL
    assert str(desc.z_part) == "a c" and desc.o_part == {"b"}
    assert desc.rank == 2
    with pytest.raises(InputError):
        centralizer(identity(P4))
    with pytest.raises(NotChordal):
        centralizer(parse(SMALL["C4"], "a"))


def test_conjugated_element():
    w = parse(P4, "d a c d^-1")
    desc = centralizer(w)
    assert str(desc.core) == "a c" and str(desc.conjugator) == "d"
    for x in desc.generators:
        assert x * w == w * x


def test_zo_split():
    s = zo_split(parse(P4, "a c"))
    assert str(s.z) == "a c" and s.o == {"b"}
    s = zo_split(identity(SMALL["K2"]))
    assert not s.z and s.o == {"a", "b"}
    with pytest.raises(InputError):
        zo_split(parse(P4, "d a c d^-1"))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_zo_split_disjoint_commuting(data):
    g = data.draw(chordal_graphs(max_size=5))
    w, _ = cyclic_reduce(from_syllables(g, data.draw(syllables(g, 6))))
    if not w:
        return
    s = zo_split(w)
    zsupp = s.z.support if hasattr(s.z, "support") else frozenset(s.z)
    assert not (zsupp & s.o)
    for o in s.o:
        for z in zsupp:
            assert g.adjacent(o, z)


def test_representatives_p4():
    reps = representatives(P4, 4)
    assert {str(w) for w in reps.w_k} == {"a", "b", "c", "d", "b c"}
    assert "a c" in {str(w) for w in reps.w_b}
    # a and ab have equal stars, so ab is not listed
    assert "a b" not in {str(w) for w in reps.w_k}


def test_conjugacy_representative_examples():
    reps = representatives(P4, 4)
    w, h = conjugacy_representative(parse(P4, "d a c d^-1"), reps)
    assert str(w) == "a c" and str(h) == "d^-1"
    w, h = conjugacy_representative(parse(P4, "b c"), reps)
    assert str(w) == "b c" and not h
    g = parse(P4, "c a")
    w, h = conjugacy_representative(g, reps)
    assert {str(x) for x in centralizer(g).generators} == {
        str(x.conj(h)) for x in centralizer(w).generators
    }
    with pytest.raises(BudgetExceeded):
        conjugacy_representative(parse(P4, "a^2 c d c"), representatives(P4, 2))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_conjugacy_representative_conjugates(data):
    reps = representatives(P4, 4)
    x = from_syllables(P4, data.draw(syllables(P4, 6)))
    if not x:
        return
    try:
        w, h = conjugacy_representative(x, reps)
    except BudgetExceeded:
        return
    cx = centralizer(x)
    for gen in centralizer(w).generators:
        assert cx.contains(gen.conj(h))


def test_coherent_commutation_property():
    import random

    rng = random.Random(3)
    for g in (P4, HUB7):
        for _ in range(200):
            g1, g2, h1, h2 = (
                from_syllables(g, [(rng.choice(g.vertices), rng.choice((1, -1))) for _ in range(4)])
                for _ in range(4)
            )
            if g1.commutes(g2) or h1.commutes(h2):
                continue
            assert not all(a.commutes(b) for a in (g1, g2) for b in (h1, h2))


def test_centralizer_of_set():
    w, desc = centralizer_of_set(P4, ["b", "c"])
    assert str(w) == "b c"
    assert desc.vertex_part == {"b", "c"}
    with pytest.raises(InputError):
        centralizer_of_set(P4, ["a", "c"])


def test_class_c_checks():
    z2 = CommutationGraph.complete("ab")
    assert report_passed(
        check_class_c_axioms(z2, RepresentativeSet.from_elements(z2, [identity(z2)]), 4, 100)
    )
    assert report_passed(check_class_c_axioms(P4, representatives(P4, 4), 4, 100))
    rep = check_class_c_axioms(F2, RepresentativeSet(F2, (), (), 0), 4, 100)
    bad = [e for e in rep if e["status"] == "fail"]
    assert bad and bad[0]["axiom"] == "C6(a)" and "witness" in bad[0]


def test_class_c_deterministic():
    reps = representatives(Z3, 2)
    a = check_class_c_axioms(Z3, reps, 3, 50, seed=7)
    assert a == check_class_c_axioms(Z3, reps, 3, 50, seed=7)
