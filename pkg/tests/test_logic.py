import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import Structure, random_sentence
from insep.logic.enumerate import ORDER_VERSION, sentences, translations
from insep.logic.godel import godel, ungodel
from insep.logic.oplus import UndecidableByHook, oplus
from insep.logic.parser import ParseError, parse, to_text
from insep.logic.registry import NAMES, T_DEFAULT, base_by_name, base_theory, default_subject
from insep.logic.sets import prover_index, theory_from_sets
from insep.logic.syntax import Atom, Exists, SizeAtom, expand_size_atoms, is_sentence, quantifier_rank, size
from insep.logic.theory import TheoremStream, theorems
from insep.logic.translate import Clause, TranslationError, apply_translation, identity_translation


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_text_and_code_round_trip(seed):
    s = random_sentence(random.Random(seed))
    assert parse(to_text(s)) == s
    assert ungodel(godel(s)) == s


def test_non_codes():
    assert ungodel(0) is None
    assert ungodel(12345) is None
    assert ungodel(int.from_bytes(b"\x02exists", "big")) is None


@pytest.mark.parametrize("text", ["exists x", "E(x", "A 1 2", "x = ", "forall . true", "true &"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_shapes():
    assert parse("A[E'] 3") == SizeAtom(3, "E'")
    assert parse("exists x y. E(x,y)") == Exists("x", Exists("y", Atom("E", ("x", "y"))))
    assert to_text(parse("~A 2 -> (A 1 | A 0)")) == "~A 2 -> (A 1 | A 0)"


def test_sentence_enumeration_is_ordered_and_unique():
    prefix = sentences((("E", 2),)).prefix(3000)
    assert len(set(prefix)) == len(prefix)
    assert all(is_sentence(s) for s in prefix)
    sizes = [size(s) for s in prefix]
    assert sizes == sorted(sizes)
    assert ORDER_VERSION


def test_identity_translation_preserves_truth():
    tr = translations((("E", 2),), (("E", 2),))
    ident = tr[37]
    assert ident.to_json()["domain"]["formula"] == "true"
    rng = random.Random(3)
    st = Structure([1, 2, 3, 4])
    for _ in range(60):
        s = random_sentence(rng, rank=2, max_atom=2)
        assert st.holds(apply_translation(s, ident)) == st.holds(expand_size_atoms(s))


def test_translation_relativises_quantifiers():
    # domain = "x0 is not alone in its class": in that substructure there is no singleton class
    tr = identity_translation({"E": 2})
    dom = Clause(("x0",), parse("exists z. E(x0,z) & z != x0"))
    from insep.logic.translate import Translation

    rel = Translation(dom, tr.relations)
    st = Structure([1, 2, 3])
    assert st.holds(SizeAtom(0)) and not st.holds(apply_translation(SizeAtom(0), rel))
    assert quantifier_rank(apply_translation(SizeAtom(1), rel)) >= quantifier_rank(expand_size_atoms(SizeAtom(1)))
    with pytest.raises(TranslationError):
        Clause(("x0",), parse("E(x0,x1)"))


def test_registry():
    assert NAMES[base_by_name("U(+)V0")] == "U(+)V0"
    with pytest.raises(KeyError):
        base_by_name("nope")
    assert base_theory(99) is None


def test_oplus_decisions():
    t = base_theory(T_DEFAULT)
    assert t.proves(parse("P -> A 0"))
    assert t.proves(parse("~P -> ~A[E'] 2"))
    assert not t.proves(parse("A 0"))
    assert not t.proves(parse("A[E'] 0"))
    assert t.proves(parse("P | A[E'] 4"))
    assert t.refutes(parse("P & A 2"))
    with pytest.raises(UndecidableByHook):
        t.decide(parse("exists x y. E(x,y) & E'(x,y)"))
    with pytest.raises(Exception):
        oplus(default_subject(), default_subject())


def test_oplus_countermodel():
    d = base_theory(T_DEFAULT).decide(parse("A 0"))
    assert d.branch is False


def test_theorem_stream():
    u = default_subject()
    ts = TheoremStream(u)
    first = [ts[m] for m in range(20)]
    assert all(u.proves(s) for s in first)
    codes = theorems(u, 200)
    assert [godel(s) for s in first if godel(s) in codes] == [c for c in codes][: len([s for s in first if godel(s) in codes])]
    assert ts[0] == parse("true")


def test_sets_theory():
    t = theory_from_sets(prover_index(0, godel(parse("A 1"))), 0, 0)
    assert t.proves(parse("A 1"), budget=64)
    assert not t.proves(parse("A 2"), budget=64)
