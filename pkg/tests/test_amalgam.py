import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitraag.amalgam import (
    BASE_CENTRALIZER,
    CYCLIC_TIMES_OPRIME,
    WHOLE_B,
    Z_TIMES_OA,
    extend,
)
from limitraag.discrimination import separate
from limitraag.errors import InputError, NonAbelianCentralizer, Unsupported
from limitraag.graph import CommutationGraph
from limitraag.raag import Raag

from corpus import F2, P4
from oracles import fast_reduce

F2E = extend(Raag(F2), "x", 1, ["s"])
P4E = extend(Raag(P4), "a c", 2, ["x1", "x2"])
# extending over a generator with clique star is again a RAAG
P4A = extend(Raag(P4), "a", 1, ["s"])
P4A_GRAPH = CommutationGraph.build(
    ["a", "b", "c", "d", "s"], [("a", "b"), ("b", "c"), ("c", "d"), ("s", "a"), ("s", "b")],
    order=["a", "b", "c", "d", "s"],
)
F2E_GRAPH = CommutationGraph.build(["x", "y", "s"], [("x", "s")], order=["x", "y", "s"])


def words(group, max_len=8):
    names = group.generator_names
    return st.lists(st.tuples(st.sampled_from(names), st.sampled_from((1, -1))), max_size=max_len)


def raag_letters(g, syl):
    return tuple((g.index[v] + 1) * e for v, e in syl)


@pytest.mark.parametrize("E, g", [(F2E, F2E_GRAPH), (P4A, P4A_GRAPH)])
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_equality_matches_raag_model(E, g, data):
    u = data.draw(words(E))
    v = data.draw(words(E))
    same = fast_reduce(g, raag_letters(g, u)) == fast_reduce(g, raag_letters(g, v))
    assert (E.parse_syllables(u) == E.parse_syllables(v)) == same
    assert E.is_identity(E.parse_syllables(u)) == (fast_reduce(g, raag_letters(g, u)) == ())


@pytest.mark.parametrize("E", [F2E, P4E])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_group_laws(E, data):
    a, b, c = (E.parse_syllables(data.draw(words(E, 6))) for _ in range(3))
    assert E.mul(E.mul(a, b), c) == E.mul(a, E.mul(b, c))
    assert E.is_identity(E.mul(a, E.inv(a)))
    assert E.mul(a, E.identity()) == a
    assert E.reduce(list(a.syl)) == a
    # reduced length of a product agrees with reducing the concatenation
    assert E.mul(a, b) == E.reduce(list(a.syl) + list(b.syl))


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_nontrivial_elements_separate(data):
    e = P4E.parse_syllables(data.draw(words(P4E, 6)))
    if P4E.is_identity(e):
        return
    cert = separate(P4E, e, 64)
    assert cert.image


def test_reduce_examples():
    E = F2E
    assert E.fmt(E.parse("s x s^-1")) == "x"
    e = E.parse("y s y^-1 s^-1")
    assert e.n == 2 and not E.is_identity(e)
    e = E.parse("x s")
    assert e.n == 1 and E.fmt(e) in ("x s", "s x")
    assert E.parse("x s") == E.parse("s x")
    assert E.parse("y s") != E.parse("s y")
    assert P4E.parse("b x1") == P4E.parse("x1 b")
    assert P4E.parse("a c x1") == P4E.parse("x1 a c")
    assert P4E.parse("a x1") != P4E.parse("x1 a")


def test_json_round_trip():
    e = P4E.parse("d x1 b a x2^-1 c")
    assert P4E.from_json(P4E.to_json(e)) == e
    with pytest.raises(InputError):
        P4E.from_json(["a", "b"])


def test_extension_errors():
    with pytest.raises(NonAbelianCentralizer):
        extend(Raag(P4), "b", 1)
    with pytest.raises(InputError):
        extend(Raag(P4), "a", 1, ["a"])
    with pytest.raises(InputError):
        extend(Raag(P4), "a", 0)
    with pytest.raises(Unsupported):
        extend(F2E, "y s", 1)
    with pytest.raises(InputError):
        F2E.equals(F2E.identity(), P4E.identity())


def test_centralizer_cases():
    E = F2E
    c = E.centralizer_ext(E.parse("x"))
    assert c.kind == WHOLE_B and {E.fmt(x) for x in c.generators} == {"x", "s"}
    c = E.centralizer_ext(E.parse("y"))
    assert c.kind == BASE_CENTRALIZER and [E.fmt(x) for x in c.generators] == ["y"]
    c = E.centralizer_ext(E.parse("y s"))
    assert c.kind == CYCLIC_TIMES_OPRIME and E.fmt(c.z) == "y s" and not c.o_prime
    c = P4E.centralizer_ext(P4E.parse("b"))
    assert c.kind == Z_TIMES_OA and not c.abelian
    with pytest.raises(InputError):
        E.centralizer_ext(E.identity())


@pytest.mark.parametrize("E", [F2E, P4E])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_centralizer_generators_commute(E, data):
    v = E.parse_syllables(data.draw(words(E, 6)))
    if E.is_identity(v):
        return
    for x in E.centralizer_ext(v).generators:
        assert E.commute(x, v)


def test_nested_extension():
    E2 = extend(F2E, "y", 1, ["r"])
    e = E2.parse("r x s r^-1 y")
    assert E2.mul(e, E2.inv(e)) == E2.identity()
    assert E2.parse("r y") == E2.parse("y r")
    assert E2.parse("r x") != E2.parse("x r")
