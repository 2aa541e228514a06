import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import Structure, class_sizes, corpus, nf_disagreements, profile_disagreements, random_sentence
from insep.janiczak.decide import Verdict, decide, decide_comb, normal_form
from insep.janiczak.evaluate import BoundError, SignatureError, evaluate, required_bound
from insep.janiczak.jx import (Enumerated, Finite, NotDecidable, Progression, JTheory, janiczak, jtheory_from_json,
                               jx_theory)
from insep.janiczak.profiles import BoolComb, ResourceError, SizeProfile, profile_conjunction, profiles
from insep.logic.parser import parse
from insep.logic.syntax import Not, SizeAtom


def test_profile_semantics_against_brute_force():
    checked, bad = profile_disagreements(corpus(60, seed=11))
    assert checked > 0 and bad == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_normal_form_is_equivalent(seed):
    s = random_sentence(random.Random(seed))
    assert not nf_disagreements([s])


@pytest.mark.parametrize("n", range(9))
def test_size_atoms_are_their_own_normal_form(n):
    assert normal_form(SizeAtom(n)) == BoolComb.atom(n)
    assert decide([], SizeAtom(n)).verdict is Verdict.NOT_PROVABLE
    assert decide([], Not(SizeAtom(n))).verdict is Verdict.NOT_PROVABLE


def test_brute_force_sees_size_atoms():
    st_ = Structure(class_sizes({1, 3}, 3))
    assert st_.holds(SizeAtom(0)) and not st_.holds(SizeAtom(1)) and st_.holds(SizeAtom(2))
    assert st_.holds(parse("exists x. forall y. E(x,y) -> x = y"))


def test_known_theorems_of_j():
    # E is an equivalence relation; no two classes share a finite size is not expressible at rank 2, but reflexivity is
    assert decide([], parse("forall x. E(x,x)")).verdict is Verdict.PROVABLE
    assert decide([], parse("forall x y. E(x,y) -> E(y,x)")).verdict is Verdict.PROVABLE
    assert decide([], parse("exists x y. ~E(x,y)")).verdict is Verdict.PROVABLE
    assert decide([SizeAtom(0)], parse("exists x. forall y. E(x,y) -> x = y")).verdict is Verdict.PROVABLE
    assert decide([SizeAtom(1), Not(SizeAtom(1))], SizeAtom(4)).verdict is Verdict.INCONSISTENT


def test_countermodel_refutes():
    d = decide([SizeAtom(2)], parse("A 1 | A 0"))
    assert d.verdict is Verdict.NOT_PROVABLE
    p = d.countermodel
    assert p.atom(2) and not p.atom(1) and not p.atom(0)


def test_evaluate_errors():
    with pytest.raises(BoundError):
        evaluate(SizeAtom(5), SizeProfile(3))
    with pytest.raises(SignatureError):
        evaluate(parse("exists x. E(x,x) & E'(x,x)"), SizeProfile(4))
    with pytest.raises(ValueError):
        SizeProfile(2, frozenset({3}))
    assert required_bound(parse("exists x y. E(x,y)")) == 3


def test_profiles_and_conjunctions():
    ps = profiles(3)
    assert len(ps) == 8 and len(set(ps)) == 8
    c = profile_conjunction(3, 0b101)
    assert c({0: True, 1: False, 2: True}) and not c({0: True, 1: True, 2: True})


def test_depth_limit(monkeypatch):
    monkeypatch.setenv("INSEP_DEPTH_LIMIT", "3")
    with pytest.raises(ResourceError):
        profiles(4)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**8 - 1), st.integers(0, 2**8 - 1))
def test_boolcomb_algebra(r1, r2):
    a = BoolComb((0, 1, 2), frozenset(r for k, r in enumerate(_rows3()) if r1 >> k & 1))
    b = BoolComb((1, 2, 3), frozenset(r for k, r in enumerate(_rows3()) if r2 >> k & 1))
    for vals in _assignments(4):
        assert (a & b)(vals) == (a(vals) and b(vals))
        assert (a | b)(vals) == (a(vals) or b(vals))
        assert (~a)(vals) == (not a(vals))
    assert BoolComb.from_json(a.to_json()) == a


def _rows3():
    from itertools import product

    return list(product((False, True), repeat=3))


def _assignments(n):
    from itertools import product

    for r in product((False, True), repeat=n):
        yield dict(enumerate(r))


def test_jx_theories():
    u = JTheory("E", Progression(4, 0), Progression(4, 2), name="U")
    assert u.proves(SizeAtom(8)) and u.proves(Not(SizeAtom(6)))
    assert not u.proves(SizeAtom(5)) and not u.proves(Not(SizeAtom(5)))
    assert jtheory_from_json(u.to_json()) == u
    x = Finite(frozenset({0, 2}))
    t = jx_theory(x, (BoolComb.atom(0) | BoolComb.atom(2),))
    assert t.proves(parse("A 0 | A 2"))
    with pytest.raises(ValueError):
        jx_theory(x, (BoolComb.atom(1),))
    assert janiczak("E'").proves(parse("forall x. E'(x,x)"))


def test_enumerated_needs_budget():
    from insep.recfun.core import halt_if_even, ReSet

    t = JTheory("E", Enumerated(ReSet(halt_if_even())), name="W")
    with pytest.raises(NotDecidable):
        t.fixed({2})
    assert t.fixed({2, 3}, 100) == {2: True}
    t2 = JTheory("E", Enumerated(ReSet(halt_if_even()), fuel=100), name="W")
    assert t2.proves(SizeAtom(4)) and not t2.proves(SizeAtom(3))


def test_decide_comb_fixed():
    assert decide_comb([], BoolComb.atom(3), {3: True}).verdict is Verdict.PROVABLE
