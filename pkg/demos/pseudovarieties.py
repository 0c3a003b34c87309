"""
Pseudovarieties, equations and local theories
=============================================

Three ways to describe a class of finite monoids: by identities, by an
eventual identity such as aperiodicity, and as the class generated by a few
algebras.  The second half works one level down, with quotients of the free
monoid on a fixed alphabet: a quotient is an equational theory exactly when
every substitution preserves its kernel.

Run with ``python demos/pseudovarieties.py``.
"""
import numpy as np

from algaut import (MONOID, EventualIdentity, FiniteAlgebra, FreeBackend, Generated,
                    check_equations, enumerate_monoids, enumerate_quotients, is_fully_invariant,
                    local_variety_free, product, pv_member, quotient_of, satisfies)
from algaut.textio import parse_equations, parse_pv_spec


def cyclic(n):
    idx = np.arange(n)
    return FiniteAlgebra(MONOID, n, {"e": 0, "mul": (idx[:, None] + idx[None, :]) % n})


U1 = FiniteAlgebra(MONOID, 2, {"e": 0, "mul": [[0, 1], [1, 1]]}, labels=["1", "a"])

# %%
# Membership with reasons.

specs = {
    "commutative": parse_pv_spec("commutative", MONOID),
    "aperiodic": EventualIdentity(),
    "idempotent": parse_pv_spec("id: x*x=x", MONOID),
    "generated by Z2": Generated((cyclic(2),), "gen: Z2"),
}
for name, algebra in [("Z2", cyclic(2)), ("Z3", cyclic(3)), ("Z4", cyclic(4)), ("U1", U1)]:
    print(f"{name}:")
    for label, spec in specs.items():
        reason = spec.explain(algebra)
        print(f"  {label:>16}: {'yes' if reason is None else 'no, ' + reason}")
print()

# %%
# How many small monoids are aperiodic and commutative?

both = EventualIdentity() & parse_pv_spec("commutative", MONOID)
for n in range(1, 5):
    ms = enumerate_monoids(n)
    print(f"size {n}: {len(ms):3d} monoids up to isomorphism, "
          f"{sum(pv_member(m, both) for m in ms):2d} aperiodic and commutative")
print()

# %%
# Quotients of {a,b}*.  Letter-swapping alone already breaks invariance for
# a quotient that only looks at the letter a.

AB = FreeBackend.monoid("ab")
count_a = quotient_of(AB, cyclic(2), {"a": 1, "b": 0})
verdict = is_fully_invariant(count_a)
u, v = verdict.pair
print("parity of the number of a's is fully invariant:", bool(verdict))
subst = ", ".join(f"{x}->{w}" for x, w in verdict.substitution.items())
print(f"  the substitution {subst} separates {u} and {v}")

length = quotient_of(AB, cyclic(2), {"a": 1, "b": 1})
print("parity of the length is fully invariant:", bool(is_fully_invariant(length)))

invariant = [e for e in enumerate_quotients(AB, 3) if is_fully_invariant(e)]
# the smallest non-trivial theory over two letters already needs 4 classes
print(f"{len(invariant)} of {len(enumerate_quotients(AB, 3))} quotients of {{a,b}}* with at most "
      "3 elements are fully invariant")
print()

# %%
# A local variety over {a}*: the monoids whose one-generated submonoids are
# built from Z2 and U1.

A = FreeBackend.monoid("a")
free = local_variety_free([quotient_of(A, cyclic(2), {"a": 1}), quotient_of(A, U1, {"a": 1})])
print(f"free object of the local variety generated by Z2 and U1 has {free.size} elements:",
      " ".join(str(w) for w in free.section))
klein, _ = product([cyclic(2), cyclic(2)])
for name, m in [("Z2", cyclic(2)), ("Z3", cyclic(3)), ("Z2 x Z2", klein), ("U1", U1)]:
    print(f"  {name:>7} satisfies it: {satisfies(m, free)}")
print("x^3 = x holds in it:", check_equations(free.codomain, parse_equations("x*x*x = x", MONOID)))
