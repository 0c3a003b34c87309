"""
From pseudovarieties to languages and back
==========================================

A class of finite monoids picks out the languages its members recognize; a
class of languages picks out the monoids whose recognized languages all lie
in it.  On small instances both round trips can be checked completely, and
this script prints the reports.

Run with ``python demos/eilenberg.py``.
"""
import numpy as np

from algaut import (MONOID, EventualIdentity, FiniteAlgebra, FreeBackend, FromPs, Generated,
                    close_under_preimages, from_regex, generated_coalgebra, lan_member,
                    quotient_of, roundtrip_lan, roundtrip_ps, subdirect_product,
                    union_decomposition_check)

Z2 = FiniteAlgebra(MONOID, 2, {"e": 0, "mul": np.array([[0, 1], [1, 0]])})

# %%
# Which languages does aperiodicity admit?  Star-free ones.

aperiodic = FromPs(EventualIdentity())
for pattern in ["a*b*", "(ab)*", "(aa)*", "(a|b)*aa(a|b)*", "((a|b)(a|b))*"]:
    print(f"{pattern:>16} recognized by an aperiodic monoid: "
          f"{lan_member(aperiodic, from_regex('ab', pattern))}")
print()

# %%
# Round trip starting from a class of monoids.

A = FreeBackend.monoid("a")
for spec in [EventualIdentity(), Generated((Z2,), "gen: Z2")]:
    print(roundtrip_ps(spec, A, 3).render())

# %%
# Round trip starting from a family of languages.  The family generated by
# (aa)* is closed under Boolean operations and derivatives; its atoms give a
# quotient of {a}*, and the languages that quotient recognizes are the family.

seed = [from_regex("a", "(aa)*")]
print(roundtrip_lan(seed, subst_bound=2).render())

# %%
# Preimages under substitutions can make a family larger.

AB = FreeBackend.monoid("ab")
swap = {"a": AB.word("b"), "b": AB.word("a")}
base = generated_coalgebra([from_regex("ab", "a*")])
closed = close_under_preimages([from_regex("ab", "a*")], [swap])
print(f"family of a* under Boolean operations and derivatives: {len(base)} languages")
print(f"adding preimages under a<->b: {len(closed)} languages")
print()

# %%
# A subset of a subdirect product is a union of intersections of subsets of
# the factors.

parity_a = quotient_of(AB, Z2, {"a": 1, "b": 0})
parity_b = quotient_of(AB, Z2, {"a": 0, "b": 1})
both = subdirect_product([parity_a, parity_b])
print(f"subdirect product of the two parities has {both.size} elements")
for subset in [[0], [1, 2], [0, 3], list(range(both.size))]:
    names = " ".join(str(both.section[s]) for s in subset)
    print(f"  {{{names}}} decomposes: {union_decomposition_check([parity_a, parity_b], subset)}")
