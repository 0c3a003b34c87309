"""Finite algebras, recognizable languages and the correspondence between
pseudovarieties of algebras and varieties of languages, computed exhaustively
on small instances."""
from .algebra import (AlgebraError, App, Congruence, ElementSubset, FiniteAlgebra, Signature,
                      Var, check_equations, coarsest_congruence_saturating, congruence_closure,
                      eval_term, find_isomorphism, generated_subalgebra, is_homomorphism,
                      product, quotient, validate_algebra)
from .correspondence import (FromFamily, FromPs, Report, close_under_preimages, closure_check,
                             lan_member, ps_member_from_lan, roundtrip_lan, roundtrip_ps,
                             union_decomposition_check)
from .enumeration import enumerate_monoids, enumerate_quotients, enumerate_semigroups
from .free import (GROUP, MONOID, SEMIGROUP, FreeBackend, FreeElem, VarietyError,
                   enumerate_elements, extend, op_apply, parse_backend, substitution, unit)
from .languages import (LanguageFamily, RecognizableLanguage, complement, derivative,
                        distinct_derivatives, equal, from_regex, intersection, membership,
                        preimage, union)
from .ordered import (OrderedFiniteAlgebra, OrderedQuotient, Preorder, directed_kernel,
                      is_admissible, ordered_factor_through, ordered_quotient, ordered_syntactic,
                      recognized_lattice)
from .quotients import FiniteQuotient, quotient_of
from .syntactic import (SyntacticPresentation, atoms_congruence, check_syntactic_recognizes,
                        generated_coalgebra, recognized_family, syntactic_quotient)
from .theories import (ALL, Conjunction, EventualIdentity, Generated, Identities, LocalTheory,
                       PseudovarietySpec, compose_quotient, factor_through, is_fully_invariant,
                       local_variety_free, ps_member, ps_upper_bound, pv_member, satisfies,
                       subdirect_product, substitution_image)

__version__ = "0.1.0"
