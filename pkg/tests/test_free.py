import itertools

import pytest
from hypothesis import given, settings, strategies as st

from algaut.algebra import AlgebraError, FiniteAlgebra, Signature
from algaut.enumeration import enumerate_monoids
from algaut.free import (FreeBackend, VarietyError, elem_size, enumerate_elements, extend,
                         in_variety, op_apply, parse_backend, substitution, unit, variety_witness)

from builders import cyclic, left_zero, left_zero_monoid, u1

AB = FreeBackend.monoid("ab")


def letters_strategy(alphabet="ab", max_size=6):
    return st.text(alphabet=alphabet, max_size=max_size)


class TestConstruction:
    def test_unknown_kind(self):
        with pytest.raises(AlgebraError):
            FreeBackend("ring", ("a",))

    def test_duplicate_letters(self):
        with pytest.raises(AlgebraError):
            FreeBackend.monoid("aa")

    def test_bound_required(self):
        with pytest.raises(AlgebraError):
            FreeBackend("bounded", ("a",))

    def test_maction_needs_monoid(self):
        with pytest.raises(AlgebraError):
            FreeBackend("maction", ("x",))

    def test_maction_rejects_non_monoid(self):
        bad = FiniteAlgebra(FreeBackend.monoid("").signature, 2,
                            {"e": 1, "mul": [[0, 0], [0, 0]]})
        with pytest.raises(VarietyError):
            FreeBackend.maction(bad, "x")

    @pytest.mark.parametrize("text,kind,alphabet,bound", [
        ("monoid:ab", "monoid", ("a", "b"), None),
        ("semigroup:a", "semigroup", ("a",), None),
        ("group:xy", "group", ("x", "y"), None),
        ("bounded(3):ab", "bounded", ("a", "b"), 3),
        ("commutative:foo,bar", "commutative", ("foo", "bar"), None),
    ])
    def test_parse(self, text, kind, alphabet, bound):
        b = parse_backend(text)
        assert (b.kind, b.alphabet, b.bound) == (kind, alphabet, bound)

    @pytest.mark.parametrize("text", ["monoid", "ring:ab", "bounded(x):a", "bounded:a"])
    def test_parse_errors(self, text):
        with pytest.raises(AlgebraError):
            parse_backend(text)

    def test_spec_round_trip(self):
        for text in ["monoid:ab", "bounded(2):a", "group:xy"]:
            assert parse_backend(text).spec() == text


class TestCanonicalForms:
    def test_words_concatenate(self):
        assert str(op_apply(AB, "mul", [AB.word("ab"), AB.word("ba")])) == "abba"

    def test_empty_word(self):
        assert str(AB.word("")) == "ε" and AB.word("ε") == AB.identity()

    def test_semigroup_has_no_identity(self):
        with pytest.raises(AlgebraError):
            FreeBackend.semigroup("a").word("")

    def test_group_cancellation(self):
        g = FreeBackend.group("ab")
        assert g.word("abBA") == g.identity()
        assert str(g.word("aB")) == "a b⁻¹"

    def test_group_inverse(self):
        g = FreeBackend.group("ab")
        w = g.word("ab")
        assert op_apply(g, "mul", [w, op_apply(g, "inv", [w])]) == g.identity()

    def test_commutative_sorts(self):
        c = FreeBackend.commutative("ab")
        assert c.word("bab") == c.word("abb")
        assert str(c.word("bab")) == "a b^2"

    def test_bounded_caps_counts(self):
        b = FreeBackend.bounded_commutative(2, "a")
        assert b.word("aaaaa") == b.word("aa") != b.word("a")

    def test_maction_unit(self):
        b = FreeBackend.maction(cyclic(2), "x")
        assert unit(b, "x").form == (0, "x")
        assert op_apply(b, "act_1", [op_apply(b, "act_1", [unit(b, "x")])]) == unit(b, "x")

    def test_unknown_letter(self):
        with pytest.raises(AlgebraError):
            AB.word("c")

    def test_wrong_arity(self):
        with pytest.raises(AlgebraError):
            op_apply(AB, "mul", [AB.word("a")])


class TestEnumeration:
    def test_monoid_counts(self):
        assert len(enumerate_elements(AB, 3)) == 1 + 2 + 4 + 8

    def test_monoid_order(self):
        assert [str(w) for w in enumerate_elements(AB, 2)] == ["ε", "a", "b", "aa", "ab", "ba", "bb"]

    def test_semigroup_counts(self):
        assert len(enumerate_elements(FreeBackend.semigroup("ab"), 2)) == 6

    def test_group_reduced_words(self):
        # reduced words of length n over 2 generators: 4 * 3^(n-1)
        g = FreeBackend.group("ab")
        assert len(enumerate_elements(g, 3)) == 1 + 4 + 12 + 36

    def test_commutative_counts(self):
        assert len(enumerate_elements(FreeBackend.commutative("ab"), 3)) == 10

    def test_bounded_one_is_powerset(self):
        els = enumerate_elements(FreeBackend.bounded_commutative(1, "abc"), 10)
        assert len(els) == 8

    def test_maction_is_finite(self):
        assert len(enumerate_elements(FreeBackend.maction(cyclic(3), "xy"), 1)) == 6

    def test_sizes_are_bounded(self):
        for b in [AB, FreeBackend.group("a"), FreeBackend.commutative("ab")]:
            assert all(elem_size(w) <= 4 for w in enumerate_elements(b, 4))

    @pytest.mark.parametrize("b", [AB, FreeBackend.semigroup("ab"), FreeBackend.group("ab"),
                                   FreeBackend.commutative("ab"),
                                   FreeBackend.bounded_commutative(2, "ab")], ids=str)
    def test_no_duplicates(self, b):
        els = enumerate_elements(b, 4)
        assert len(set(els)) == len(els)


class TestVarietyMembership:
    def test_z2_is_a_group_like_monoid(self):
        assert in_variety(AB, cyclic(2))
        assert in_variety(FreeBackend.commutative("a"), cyclic(2))

    def test_left_zero_monoid_is_not_commutative(self):
        law, _ = variety_witness(FreeBackend.commutative("a"), left_zero_monoid())
        assert law == "x*y = y*x"

    def test_bounded(self):
        b1 = FreeBackend.bounded_commutative(1, "a")
        assert in_variety(b1, u1())
        assert not in_variety(b1, cyclic(2))

    def test_signature_mismatch(self):
        with pytest.raises(AlgebraError):
            in_variety(FreeBackend.semigroup("a"), cyclic(2))

    def test_semigroup(self):
        assert in_variety(FreeBackend.semigroup("a"), left_zero(3))

    def test_every_enumerated_monoid_is_a_monoid(self):
        for n in range(1, 5):
            assert all(in_variety(AB, a) for a in enumerate_monoids(n))


class TestUniversalProperty:
    def test_z3_counts_letters(self):
        h = extend(FreeBackend.monoid("a"), cyclic(3), {"a": 1})
        assert [h(FreeBackend.monoid("a").word("a" * k)) for k in range(5)] == [0, 1, 2, 0, 1]

    def test_missing_generator(self):
        with pytest.raises(AlgebraError):
            extend(AB, cyclic(2), {"a": 1})

    def test_out_of_variety(self):
        with pytest.raises(VarietyError):
            extend(FreeBackend.commutative("a"), left_zero_monoid(), {"a": 1})

    def test_group_inverse_maps_to_inverse(self):
        g = FreeBackend.group("a")
        z3 = FiniteAlgebra(g.signature, 3, {"e": 0, "mul": cyclic(3).table("mul"),
                                            "inv": [0, 2, 1]})
        assert extend(g, z3, {"a": 1})(g.word("A")) == 2

    def test_maction_evaluation(self):
        m = cyclic(2)
        b = FreeBackend.maction(m, "x")
        target = FiniteAlgebra(b.signature, 2, {"act_0": [0, 1], "act_1": [1, 0]})
        h = extend(b, target, {"x": 0})
        assert [h(w) for w in enumerate_elements(b, 1)] == [0, 1]

    @settings(max_examples=80, deadline=None)
    @given(letters_strategy(), letters_strategy())
    def test_evaluation_is_multiplicative(self, u, v):
        a = left_zero_monoid()
        h = extend(AB, a, {"a": 1, "b": 2})
        uv = op_apply(AB, "mul", [AB.word(u), AB.word(v)])
        assert h(uv) == a.op("mul", h(AB.word(u)), h(AB.word(v)))


class TestSubstitutions:
    def test_swap(self):
        s = substitution(AB, {"a": AB.word("b"), "b": AB.word("a")})
        assert str(s(AB.word("aab"))) == "bba"

    def test_erasing(self):
        s = substitution(AB, {"a": AB.word(""), "b": AB.word("bb")})
        assert str(s(AB.word("abab"))) == "bbbb"

    def test_missing_letter(self):
        with pytest.raises(AlgebraError):
            substitution(AB, {"a": AB.word("a")})

    def test_kind_mismatch(self):
        with pytest.raises(AlgebraError):
            substitution(AB, {"a": AB.word("a"), "b": AB.word("b")},
                         target=FreeBackend.commutative("ab"))

    def test_into_larger_alphabet(self):
        a = FreeBackend.monoid("a")
        abc = FreeBackend.monoid("abc")
        s = substitution(a, {"a": abc.word("bc")}, target=abc)
        assert str(s(a.word("aa"))) == "bcbc"

    @settings(max_examples=60, deadline=None)
    @given(letters_strategy(max_size=3), letters_strategy(max_size=3),
           letters_strategy(max_size=4), letters_strategy(max_size=4))
    def test_substitution_is_a_homomorphism(self, ia, ib, u, v):
        s = substitution(AB, {"a": AB.word(ia), "b": AB.word(ib)})
        uv = op_apply(AB, "mul", [AB.word(u), AB.word(v)])
        assert s(uv) == op_apply(AB, "mul", [s(AB.word(u)), s(AB.word(v))])

    def test_composition_with_evaluation(self):
        # evaluating after substituting = evaluating at the substituted images
        a = cyclic(3)
        h = extend(AB, a, {"a": 1, "b": 2})
        s = substitution(AB, {"a": AB.word("ab"), "b": AB.word("bb")})
        g = extend(AB, a, {"a": h(AB.word("ab")), "b": h(AB.word("bb"))})
        for w in enumerate_elements(AB, 4):
            assert h(s(w)) == g(w)

    def test_commutative_substitution(self):
        c = FreeBackend.commutative("ab")
        s = substitution(c, {"a": c.word("b"), "b": c.word("aa")})
        assert s(c.word("ab")) == c.word("aab")


def test_every_word_kind_is_hashable():
    for b in [AB, FreeBackend.group("a"), FreeBackend.commutative("a"),
              FreeBackend.maction(cyclic(2), "x")]:
        assert len({w for w in enumerate_elements(b, 2)}) == len(enumerate_elements(b, 2))


def test_signature_of_maction():
    b = FreeBackend.maction(cyclic(3), "x")
    assert b.signature == Signature.of(("act_0", 1), ("act_1", 1), ("act_2", 1))


def test_word_pairs_distinct():
    for u, v in itertools.combinations(enumerate_elements(AB, 3), 2):
        assert u != v
