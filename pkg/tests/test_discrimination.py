import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitraag.amalgam import extend
from limitraag.discrimination import (
    RetractionIndex,
    bp_scan,
    make_psi,
    retract,
    separate,
    separate_all,
    separate_to_base,
)
from limitraag.errors import BudgetExceeded, InputError
from limitraag.raag import Raag
from limitraag.words import parse

from corpus import F2, P4
from oracles import fast_reduce, retract_by_substitution

F2E = extend(Raag(F2), "x", 1, ["s"])
P4E = extend(Raag(P4), "a c", 2, ["x1", "x2"])

vectors = st.lists(
    st.lists(st.integers(-5, 5), min_size=3, max_size=3).filter(any), min_size=1, max_size=6
)


@settings(max_examples=300, deadline=None)
@given(vectors)
def test_make_psi_distinguishes_up_to_sign(vecs):
    psi = make_psi(vecs)
    vals = {}
    for v in vecs:
        d = sum(p * x for p, x in zip(psi, v))
        assert d != 0
        key = min(tuple(v), tuple(-x for x in v))
        assert vals.setdefault(abs(d), key) == key


def test_make_psi_examples():
    assert make_psi([(1, 0), (0, 1), (1, -1)]) == (1, 3)
    assert make_psi([(1, 1), (1, -1)]) == (1, 2)
    assert make_psi([(5,)]) == (1,)
    assert make_psi([]) == ()
    with pytest.raises(InputError):
        make_psi([(0, 0)])
    with pytest.raises(InputError):
        make_psi([(1,), (1, 2)])


def test_retract_examples():
    s = F2E.parse("s")
    assert str(retract(F2E, RetractionIndex((1,), 3), s)) == "x^3"
    comm = F2E.parse("y^-1 s^-1 y s")
    assert str(retract(F2E, RetractionIndex((1,), 1), comm)) == "y^-1 x^-1 y x"
    g = F2E.parse("y x y")
    assert retract(F2E, RetractionIndex((1,), 5), g) == parse(F2, "y x y")
    with pytest.raises(InputError):
        RetractionIndex((1,), 0)
    with pytest.raises(InputError):
        retract(P4E, RetractionIndex((1,), 1), P4E.parse("x1"))


@pytest.mark.parametrize("E", [F2E, P4E])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_retract_is_homomorphism(E, data):
    names = E.generator_names
    word = st.lists(st.tuples(st.sampled_from(names), st.sampled_from((1, -1))), max_size=6)
    a = E.parse_syllables(data.draw(word))
    b = E.parse_syllables(data.draw(word))
    psi = tuple(data.draw(st.integers(-3, 3)) for _ in range(E.a_rank))
    idx = RetractionIndex(psi, data.draw(st.integers(1, 4)))
    G = E.base
    assert retract(E, idx, E.mul(a, b)) == G.mul(retract(E, idx, a), retract(E, idx, b))
    assert retract(E, idx, a).letters == fast_reduce(E.base.graph, retract_by_substitution(E, a, psi, idx.m))


@pytest.mark.parametrize("E", [F2E, P4E])
def test_separate_random(E):
    rng = random.Random(11)
    done = 0
    while done < 40:
        e = E.random_element(rng, rng.randint(1, 6))
        if E.is_identity(e):
            continue
        cert = separate(E, e, 64)
        assert retract_by_substitution(E, e, cert.psi, cert.m) != ()
        assert cert.image == retract(E, cert.index, e)
        done += 1


def test_separate_examples():
    cert = separate(F2E, F2E.parse("y s y^-1 s^-1"), 16)
    assert cert.m == 1 and cert.image
    with pytest.raises(InputError):
        separate(F2E, F2E.identity())
    assert cert.to_json()["m"] == 1


def test_separate_budget():
    # an empty budget tries no m at all
    with pytest.raises(BudgetExceeded):
        separate(F2E, F2E.parse("y s y^-1 s^-1"), 0)


def test_separate_all():
    elems = [F2E.parse(t) for t in ("s", "s^2", "y s y^-1", "x y")]
    idx, images = separate_all(F2E, elems, 16)
    assert all(images) and len({str(i) for i in images}) == len(images)
    with pytest.raises(InputError):
        separate_all(F2E, [F2E.parse("s"), F2E.parse("s")])


def test_separate_to_base_nested():
    E2 = extend(F2E, "y", 1, ["r"])
    e = E2.parse("r s r^-1 s^-1")
    certs = separate_to_base(E2, e, 16)
    assert len(certs) == 2
    assert certs[-1].group is F2E.base
    assert certs[-1].image


def test_bp_scan():
    assert bp_scan(Raag(F2), ["x", "y"], 10) is None
    G = Raag(P4)
    for pair in (["a", "d"], ["b", "d"], ["a", "c"]):
        assert bp_scan(G, pair, 10) is None
    with pytest.raises(InputError):
        bp_scan(G, ["a", "b"], 10)
    with pytest.raises(InputError):
        bp_scan(G, ["a"], 10)
    assert bp_scan(F2E, ["y", "s"], 5) is None
