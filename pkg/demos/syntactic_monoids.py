"""
Syntactic monoids of a few regular languages
============================================

A regular language is recognized by a finite monoid through a morphism from
the free monoid.  The smallest such monoid is the syntactic one.  This script
computes it for a handful of patterns, prints the multiplication tables, and
then looks at the same object from the language side: the family generated
by a language under Boolean operations and derivatives has exactly one atom
per syntactic class.

Run with ``python demos/syntactic_monoids.py``.
"""
from algaut import (atoms_congruence, find_isomorphism, from_regex, generated_coalgebra,
                    membership, ordered_syntactic, syntactic_quotient)
from algaut.textio import format_table

PATTERNS = ["(aa)*", "a(a|b)*", "(ab)*", "a*b*", "(a|b)*aa(a|b)*"]

# %%
# Tables.  Elements are named by their least representative word.

for pattern in PATTERNS:
    l = from_regex("ab", pattern)
    s = syntactic_quotient(l)
    print(f"--- {pattern}: syntactic monoid of size {s.size}")
    print("\n".join(format_table(s.quotient.codomain, "mul")))
    accepted = [str(s.quotient.section[i]) for i in sorted(s.accepting_image.members)]
    print("accepting classes:", " ".join(accepted) or "(none)")
    print()

# %%
# Sanity check against membership on short words: two words with the same
# image are accepted together.

l = from_regex("ab", "(ab)*")
s = syntactic_quotient(l)
for w in ["", "ab", "abab", "ba", "aab", "abb"]:
    print(f"{w or 'ε':>5} -> class {s.quotient.section[s.quotient(l.backend.word(w))]}, "
          f"in language: {membership(l, w)}")
print()

# %%
# Duality: the atoms of the generated family give back the syntactic monoid.

for pattern in PATTERNS:
    l = from_regex("ab", pattern)
    family = generated_coalgebra([l])
    atoms = atoms_congruence(family)
    same = find_isomorphism(atoms.codomain, syntactic_quotient(l).quotient.codomain) is not None
    print(f"{pattern:>16}: {len(family):4d} languages, {atoms.size} atoms, "
          f"isomorphic to syntactic monoid: {same}")
print()

# %%
# Ordered version.  The order says which class can replace which without
# leaving the language; the language is an up-set.

e = ordered_syntactic(from_regex("ab", "a(a|b)*"))
names = [str(w) for w in e.quotient.section]
print("order on the syntactic monoid of a(a|b)*:")
for i, j in e.order.hasse():
    print(f"  {names[i]} <= {names[j]}")
