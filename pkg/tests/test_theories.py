import itertools

import pytest
from hypothesis import given, settings, strategies as st

from algaut.algebra import (AlgebraError, Congruence, congruence_closure, find_isomorphism,
                            product)
from algaut.enumeration import enumerate_monoids, enumerate_quotients
from algaut.free import MONOID, FreeBackend, enumerate_elements, extend
from algaut.textio import parse_equations
from algaut.theories import (ALL, EventualIdentity, Generated, Identities, LocalTheory,
                             compose_quotient, factor_through, factors_through, is_fully_invariant,
                             kernel_witness, local_variety_free, ps_member, ps_upper_bound,
                             pv_member, relatively_free, satisfaction_witness, satisfies,
                             stabilization_index, subdirect_product, substitution_image)

import oracles
from builders import cyclic, left_zero_monoid, onto, trivial, u1

A = FreeBackend.monoid("a")
AB = FreeBackend.monoid("ab")
MONOIDS = [m for n in range(1, 5) for m in enumerate_monoids(n)]
QUOTIENTS_A = enumerate_quotients(A, 4)


def brute_factors(h, e, bound=6):
    """Kernel inclusion on all words up to ``bound``."""
    seen = {}
    for w in enumerate_elements(e.backend, bound):
        if seen.setdefault(e(w), h(w)) != h(w):
            return False
    return True


def brute_satisfies(a, e, bound=6):
    letters = e.backend.alphabet
    for images in itertools.product(range(a.size), repeat=len(letters)):
        h = extend(e.backend, a, dict(zip(letters, images)))
        if not brute_factors(h, e, bound):
            return False
    return True


class TestFactoring:
    def test_z6_onto_z3(self):
        e = onto("a", cyclic(6), {"a": 1})
        f = factor_through((cyclic(3), {"a": 1}), e)
        assert f and f.map == (0, 1, 2, 0, 1, 2)

    def test_z3_does_not_factor_through_z2(self):
        e = onto("a", cyclic(2), {"a": 1})
        f = factor_through((cyclic(3), {"a": 1}), e)
        assert not f
        u, v = f.witness
        assert (str(u), str(v)) == ("ε", "aa")

    def test_quotient_target(self):
        e6 = onto("a", cyclic(6), {"a": 1})
        e2 = onto("a", cyclic(2), {"a": 1})
        assert factors_through(e2, e6) and not factors_through(e6, e2)

    def test_backend_mismatch(self):
        with pytest.raises(AlgebraError):
            factor_through(onto("ab", cyclic(2), [1, 1]), onto("a", cyclic(2), [1]))

    def test_kernel_witness_is_least(self):
        pair = kernel_witness(A, (u1(), (1,)), (cyclic(3), (1,)))
        assert tuple(str(w) for w in pair) == ("a", "aa")

    @pytest.mark.parametrize("e", QUOTIENTS_A, ids=lambda e: f"q{e.size}")
    def test_matches_brute_force(self, e):
        for target in QUOTIENTS_A:
            assert factors_through(target, e) == brute_factors(target, e)


class TestSatisfaction:
    def test_small_examples(self):
        e = onto("ab", cyclic(2), {"a": 1, "b": 0})
        # U1 with both letters sent to its idempotent identifies ab and ba
        assert not satisfies(left_zero_monoid(), onto("ab", u1(), {"a": 1, "b": 1}))
        assert satisfies(trivial(), e)

    def test_witness(self):
        e = onto("a", cyclic(2), {"a": 1})
        f, (u, v) = satisfaction_witness(cyclic(3), e)
        assert f == {"a": 1} and (str(u), str(v)) == ("ε", "aa")

    @pytest.mark.parametrize("e", QUOTIENTS_A, ids=lambda e: f"q{e.size}")
    def test_matches_brute_force(self, e):
        for m in MONOIDS:
            assert satisfies(m, e) == brute_satisfies(m, e), (m, e)


class TestFullInvariance:
    def test_free_exponent_two_quotient(self):
        klein, _ = product([cyclic(2), cyclic(2)])
        assert is_fully_invariant(onto("ab", klein, {"a": 2, "b": 1}))

    def test_length_parity_is_not_invariant(self):
        # erasing a and renaming b to a separates a from b
        result = is_fully_invariant(onto("ab", cyclic(2), {"a": 1, "b": 1}))
        assert not result and tuple(map(str, result.pair)) == ("a", "b")

    def test_counting_a_only_is_not_invariant(self):
        result = is_fully_invariant(onto("ab", cyclic(2), {"a": 1, "b": 0}))
        assert not result
        u, v = result.pair
        e = onto("ab", cyclic(2), {"a": 1, "b": 0})
        assert e(u) == e(v)

    def test_every_quotient_on_one_letter(self):
        # over one letter, each quotient is determined by x^i = x^j, which is invariant
        for e in QUOTIENTS_A:
            assert is_fully_invariant(e)

    def test_matches_substitution_oracle(self):
        for e in enumerate_quotients(AB, 2):
            assert bool(is_fully_invariant(e)) == oracles.substitution_preserves_kernel(e)

    def test_equational_theory_requires_invariance(self):
        with pytest.raises(AlgebraError, match="not fully invariant"):
            LocalTheory.equational(onto("ab", cyclic(2), {"a": 1, "b": 0}))

    def test_equational_theory_models(self):
        t = LocalTheory.equational(onto("a", cyclic(2), {"a": 1}))
        assert t.models(cyclic(2)) and t.models(trivial()) and not t.models(cyclic(4))
        assert t.contains(onto("a", trivial(), {"a": 0}))


class TestConstructions:
    def test_compose_quotient(self):
        e = onto("a", cyclic(6), {"a": 1})
        c = congruence_closure(e.codomain, [(0, 3)])
        e3 = compose_quotient(e, c)
        assert e3.size == 3 and [str(w) for w in e3.section] == ["ε", "a", "aa"]

    def test_compose_size_mismatch(self):
        with pytest.raises(AlgebraError):
            compose_quotient(onto("a", cyclic(6), {"a": 1}), Congruence.identity(3))

    def test_substitution_image(self):
        e = onto("a", cyclic(6), {"a": 1})
        img = substitution_image(e, {"a": A.word("aa")})
        assert img.size == 3

    def test_substitution_image_changes_alphabet(self):
        e = onto("a", cyclic(6), {"a": 1})
        img = substitution_image(e, {"x": A.word("aaa"), "y": A.word("aa")})
        assert img.backend.alphabet == ("x", "y") and img.size == 6

    def test_subdirect_z2_z3(self):
        e = subdirect_product([onto("a", cyclic(2), {"a": 1}), onto("a", cyclic(3), {"a": 1})])
        assert e.size == 6

    def test_subdirect_diagonal(self):
        e = subdirect_product([onto("a", cyclic(2), {"a": 1})] * 3)
        assert e.size == 2

    def test_subdirect_empty(self):
        with pytest.raises(AlgebraError):
            subdirect_product([])

    def test_local_variety_free(self):
        gens = [onto("a", cyclic(2), {"a": 1}), onto("a", u1(), {"a": 1})]
        free = local_variety_free(gens)
        # a -> (1, 1) generates {(0,0), (1,1), (0,1)}
        assert free.size == 3
        assert all(factors_through(g, free) for g in gens)
        with pytest.raises(AlgebraError):
            local_variety_free([])

    def test_upper_bound(self):
        members = [onto("ab", cyclic(2), {"a": 1, "b": 0}), onto("ab", cyclic(2), {"a": 0, "b": 1})]
        bound = ps_upper_bound(members)
        assert bound.size == 4

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(QUOTIENTS_A), st.sampled_from(QUOTIENTS_A))
    def test_subdirect_is_least_upper_bound(self, e1, e2):
        s = subdirect_product([e1, e2])
        assert factors_through(e1, s) and factors_through(e2, s)
        for other in QUOTIENTS_A:
            if factors_through(e1, other) and factors_through(e2, other):
                assert factors_through(s, other)


class TestPseudovarieties:
    def test_all(self):
        assert all(pv_member(m, ALL) for m in MONOIDS)

    def test_commutative_identity(self):
        spec = Identities(tuple(parse_equations("x*y = y*x", MONOID)))
        assert pv_member(cyclic(3), spec)
        reason = spec.explain(left_zero_monoid())
        assert "fails at" in reason

    def test_aperiodic(self):
        spec = EventualIdentity()
        assert pv_member(u1(), spec) and not pv_member(cyclic(2), spec)
        assert "never stabilize" in spec.explain(cyclic(3))
        assert str(spec) == "aperiodic"

    def test_fixed_exponent(self):
        assert pv_member(u1(), EventualIdentity(1))
        assert not pv_member(onto("a", _nil3(), {"a": 1}).codomain, EventualIdentity(1))

    def test_stabilization_index(self):
        assert stabilization_index(u1()) == 1
        assert stabilization_index(_nil3()) == 2
        assert stabilization_index(cyclic(2)) == ("period", 1, 2)

    def test_conjunction(self):
        spec = EventualIdentity() & Identities(tuple(parse_equations("x*y=y*x", MONOID)))
        assert pv_member(u1(), spec)
        assert spec.explain(cyclic(2)).startswith("aperiodic:")

    def test_relatively_free_z2(self):
        free, gens = relatively_free([cyclic(2)], 2)
        assert free.size == 4

    def test_generated_guard(self):
        with pytest.raises(AlgebraError, match="coordinates"):
            # three generators need 5^3 coordinates
            Generated((cyclic(5),)).explain(product([cyclic(2)] * 3)[0])

    def test_generated_needs_generators(self):
        with pytest.raises(AlgebraError):
            Generated(())

    @pytest.mark.parametrize("gens", [(cyclic(2),), (u1(),), (cyclic(2), u1())],
                             ids=["Z2", "U1", "Z2,U1"])
    def test_generated_matches_product_search(self, gens):
        for m in MONOIDS:
            if len(_gens(m)) > 1:
                continue
            assert pv_member(m, Generated(gens)) == oracles.divides_power(m, list(gens), 3), m

    def test_ps_member(self):
        assert ps_member(onto("a", u1(), {"a": 1}), EventualIdentity())

    def test_pseudo_theory(self):
        t = LocalTheory.pseudo(A, EventualIdentity())
        assert t.models(u1()) and not t.models(cyclic(2))
        assert t.contains(onto("a", u1(), {"a": 1}))


def _gens(m):
    from algaut.algebra import generating_set
    return generating_set(m)


def _nil3():
    # {1, a, 0} with a*a = 0
    from algaut.algebra import FiniteAlgebra
    from algaut.free import MONOID
    return FiniteAlgebra(MONOID, 3, {"e": 0, "mul": [[0, 1, 2], [1, 2, 2], [2, 2, 2]]})


def test_isomorphic_quotients_have_isomorphic_codomains():
    for e in QUOTIENTS_A:
        assert find_isomorphism(e.codomain, onto("a", e.codomain, e.genmap).codomain) is not None
