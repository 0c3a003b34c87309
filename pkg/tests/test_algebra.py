import itertools

import pytest
from hypothesis import given, settings, strategies as st

from algaut.algebra import (AlgebraError, App, Congruence, ElementSubset, FiniteAlgebra,
                            Signature, Var, check_equations, coarsest_congruence_saturating,
                            congruence_closure, equation_witness, eval_term, find_isomorphism,
                            generated_subalgebra, is_homomorphism, permute, product, quotient,
                            validate_algebra)
from algaut.enumeration import enumerate_monoids, enumerate_semigroups
from algaut.free import MONOID

import oracles
from builders import cyclic, left_zero, trivial

x, y, z = Var("x"), Var("y"), Var("z")


def mul(s, t):
    return App("mul", (s, t))


SMALL = [a for n in range(1, 4) for a in enumerate_monoids(n)] + \
        [a for n in range(1, 4) for a in enumerate_semigroups(n)]


@st.composite
def small_algebras(draw):
    return draw(st.sampled_from(SMALL))


class TestSignatureAndValidation:
    def test_duplicate_symbols_rejected(self):
        with pytest.raises(AlgebraError):
            Signature.of(("f", 1), ("f", 2))

    def test_negative_arity_rejected(self):
        with pytest.raises(AlgebraError):
            Signature.of(("f", -1))

    def test_z2_is_well_formed(self):
        assert validate_algebra(cyclic(2)) == []

    def test_out_of_range_entry(self):
        a = FiniteAlgebra(MONOID, 2, {"e": 0, "mul": [[0, 1], [1, 5]]}, check=False)
        defects = validate_algebra(a)
        assert len(defects) == 1
        assert defects[0].kind == "range" and defects[0].where == (1, 1)

    def test_missing_table(self):
        a = FiniteAlgebra(MONOID, 2, {"e": 0}, check=False)
        defects = validate_algebra(a)
        assert [(d.symbol, d.kind) for d in defects] == [("mul", "missing")]

    def test_constructor_checks(self):
        with pytest.raises(AlgebraError, match="range"):
            FiniteAlgebra(MONOID, 2, {"e": 0, "mul": [[0, 1], [1, 2]]})

    def test_nullary_out_of_range(self):
        a = FiniteAlgebra(MONOID, 2, {"e": 3, "mul": [[0, 1], [1, 0]]}, check=False)
        assert validate_algebra(a)[0].symbol == "e"


class TestTerms:
    def test_z2_square(self):
        assert eval_term(cyclic(2), mul(x, x), {"x": 1}) == 0

    def test_variable(self):
        assert eval_term(cyclic(5), x, {"x": 3}) == 3

    def test_z3_walk(self):
        # (1 + 2) + 1 mod 3
        assert eval_term(cyclic(3), mul(mul(x, y), x), {"x": 1, "y": 2}) == 1

    def test_unassigned_variable(self):
        with pytest.raises(AlgebraError, match="unassigned"):
            eval_term(cyclic(2), mul(x, y), {"x": 1})

    def test_signature_mismatch(self):
        with pytest.raises(AlgebraError):
            eval_term(cyclic(2), App("inv", (x,)), {"x": 1})

    def test_arity_checked_at_construction(self):
        with pytest.raises(AlgebraError):
            eval_term(cyclic(2), App("mul", (x,)), {"x": 1})

    @settings(max_examples=60, deadline=None)
    @given(small_algebras(), st.data())
    def test_matches_recursive_oracle(self, a, data):
        term = mul(mul(x, mul(y, x)), mul(z, y))
        env = {v: data.draw(st.integers(0, a.size - 1)) for v in "xyz"}
        assert eval_term(a, term, env) == oracles.eval_term(a, term, env)


class TestEquations:
    def test_z2_commutative(self):
        assert check_equations(cyclic(2), [(mul(x, y), mul(y, x))])

    def test_left_zero_not_commutative(self):
        a = left_zero(2)
        assert not check_equations(a, [(mul(x, y), mul(y, x))])
        i, witness = equation_witness(a, [(mul(x, y), mul(y, x))])
        assert i == 0 and witness == {"x": 0, "y": 1}

    def test_trivial_equation(self):
        assert check_equations(left_zero(3), [(x, x)])

    @settings(max_examples=40, deadline=None)
    @given(small_algebras())
    def test_agrees_with_brute_force(self, a):
        eq = (mul(x, mul(y, x)), mul(mul(x, y), x))
        expected = all(oracles.eval_term(a, eq[0], {"x": p, "y": q}) ==
                       oracles.eval_term(a, eq[1], {"x": p, "y": q})
                       for p in range(a.size) for q in range(a.size))
        assert check_equations(a, [eq]) == expected


class TestCongruences:
    def test_z6_closure(self):
        c = congruence_closure(cyclic(6), [(0, 3)])
        assert c.classes() == [[0, 3], [1, 4], [2, 5]]

    def test_closure_contains_pairs(self):
        c = congruence_closure(cyclic(6), [(1, 5)])
        assert c.related(1, 5) and c.is_compatible(cyclic(6))
        # 1 ~ 5 forces 0 ~ 4 and 2 ~ 0, so everything collapses to Z2
        assert c.k == 2

    def test_empty_pairs_give_identity(self):
        assert congruence_closure(cyclic(4), []) == Congruence.identity(4)

    def test_coarsest_saturating(self):
        c = coarsest_congruence_saturating(cyclic(6), [0, 3])
        assert c.classes() == [[0, 3], [1, 4], [2, 5]]

    def test_coarsest_of_full_is_total(self):
        assert coarsest_congruence_saturating(cyclic(4), range(4)) == Congruence.total(4)

    def test_canonical_class_ids(self):
        assert Congruence([5, 5, 2, 7]).class_id == (0, 0, 1, 2)

    def test_from_classes_must_cover(self):
        with pytest.raises(AlgebraError):
            Congruence.from_classes(3, [[0, 1]])

    def test_quotient_rejects_incompatible(self):
        with pytest.raises(AlgebraError, match="not compatible"):
            quotient(cyclic(4), Congruence([0, 0, 1, 1]))

    @pytest.mark.parametrize("a", [a for n in range(1, 5) for a in enumerate_monoids(n)],
                             ids=lambda a: f"monoid{a.size}")
    def test_closure_and_refinement_match_brute_force(self, a):
        compat = [p for p in oracles.partitions(a.size) if oracles.compatible(a, p)]
        for pair in itertools.combinations(range(a.size), 2):
            got = congruence_closure(a, [pair])
            assert got.class_id == oracles.least_congruence_containing(a, [pair])
        for bits in itertools.product((0, 1), repeat=a.size):
            subset = [i for i, b in enumerate(bits) if b]
            got = coarsest_congruence_saturating(a, subset)
            assert got.class_id == oracles.coarsest_saturating(a, subset, compat)

    @settings(max_examples=40, deadline=None)
    @given(small_algebras(), st.data())
    def test_quotient_projection_is_surjective_homomorphism(self, a, data):
        pairs = data.draw(st.lists(st.tuples(st.integers(0, a.size - 1),
                                             st.integers(0, a.size - 1)), max_size=2))
        c = congruence_closure(a, pairs)
        q, proj = quotient(a, c)
        assert is_homomorphism(proj, a, q)
        assert set(proj) == set(range(q.size))


class TestProductsAndSubalgebras:
    def test_unary_product(self):
        p, _ = product([cyclic(2)])
        assert find_isomorphism(p, cyclic(2)) is not None

    def test_z2_times_z3_is_z6(self):
        p, projections = product([cyclic(2), cyclic(3)])
        assert p.size == 6
        assert find_isomorphism(p, cyclic(6)) is not None
        assert all(is_homomorphism(pr, p, f) for pr, f in zip(projections, [cyclic(2), cyclic(3)]))

    def test_trivial_factor(self):
        p, _ = product([trivial(), cyclic(3)])
        assert find_isomorphism(p, cyclic(3)) is not None

    def test_signature_mismatch(self):
        with pytest.raises(AlgebraError):
            product([cyclic(2), left_zero(2)])

    def test_unit_subalgebra(self):
        sub, inc = generated_subalgebra(cyclic(2), [])
        assert inc == (0,)

    def test_z6_generated_by_two(self):
        sub, inc = generated_subalgebra(cyclic(6), ElementSubset(6, frozenset({2})))
        assert inc == (0, 2, 4) and sub.size == 3

    def test_product_generated_by_diagonal_one(self):
        p, _ = product([cyclic(2), cyclic(3)])
        one = 1 * 3 + 1  # lexicographic index of (1, 1)
        assert generated_subalgebra(p, [one])[0].size == 6

    def test_semigroup_needs_seeds(self):
        with pytest.raises(AlgebraError):
            generated_subalgebra(left_zero(2), [])

    @settings(max_examples=50, deadline=None)
    @given(small_algebras(), st.data())
    def test_subalgebra_matches_oracle(self, a, data):
        seeds = data.draw(st.lists(st.integers(0, a.size - 1), min_size=1, max_size=2))
        sub, inc = generated_subalgebra(a, seeds)
        assert list(inc) == oracles.subalgebra_closure(a, seeds)
        assert is_homomorphism(inc, sub, a)
        assert len(set(inc)) == len(inc)


class TestIsomorphism:
    def test_identity(self):
        assert find_isomorphism(cyclic(2), cyclic(2)) == (0, 1)

    def test_z4_vs_klein(self):
        klein, _ = product([cyclic(2), cyclic(2)])
        assert find_isomorphism(cyclic(4), klein) is None
        assert not oracles.isomorphic(cyclic(4), klein)

    def test_size_guard(self):
        with pytest.raises(AlgebraError, match="64"):
            find_isomorphism(cyclic(65), cyclic(65))

    @settings(max_examples=40, deadline=None)
    @given(small_algebras(), st.permutations(range(3)), st.data())
    def test_finds_hidden_relabelling(self, a, _, data):
        order = data.draw(st.permutations(list(range(a.size))))
        b = permute(a, order)
        h = find_isomorphism(a, b)
        assert h is not None
        assert sorted(h) == list(range(a.size))
        inverse = [h.index(i) for i in range(a.size)]
        assert is_homomorphism(h, a, b) and is_homomorphism(inverse, b, a)

    def test_agrees_with_exhaustive_search(self):
        monoids = [a for n in (3, 4) for a in enumerate_monoids(n)]
        for a, b in itertools.combinations(monoids[:12], 2):
            assert (find_isomorphism(a, b) is not None) == oracles.isomorphic(a, b)
