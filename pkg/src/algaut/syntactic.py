"""Syntactic algebras, the finite coalgebra generated by a language, and the
duality checks between them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .algebra import (AlgebraError, Congruence, ElementSubset, coarsest_congruence_saturating,
                      quotient)
from .languages import (LanguageFamily, RecognizableLanguage,
                        derivative_closure_masks, equal, joint_recognizer, one_step_preimages)
from .quotients import FiniteQuotient, canonical, quotient_of

MAX_FAMILY = 1 << 16


@dataclass(frozen=True, eq=False)
class SyntacticPresentation:
    language: RecognizableLanguage
    quotient: FiniteQuotient
    accepting_image: ElementSubset
    congruence: Congruence  # on the language's recognizer

    @property
    def size(self) -> int:
        return self.quotient.size

    def accepts(self, w) -> bool:
        if isinstance(w, str):
            w = self.language.backend.word(w)
        return self.quotient(w) in self.accepting_image.members


def syntactic_quotient(l: RecognizableLanguage) -> SyntacticPresentation:
    """Minimal recognizer of ``l``: the recognizer modulo the coarsest
    congruence saturating the accepting set, with sections and labels in
    enumeration order."""
    theta = coarsest_congruence_saturating(l.recognizer, l.accepting)
    algebra, projection = quotient(l.recognizer, theta)
    q = canonical(quotient_of(l.backend, algebra, [projection[g] for g in l.genmap]))
    # canonical() renumbered the codomain; map old classes to new numbers
    relabel = {}
    for new, w in enumerate(q.section):
        relabel[projection[l.evaluator(w)]] = new
    image = frozenset(relabel[projection[x]] for x in l.accepting.members)
    labels = [str(w) for w in q.section]
    q = FiniteQuotient(q.backend, q.codomain.relabeled(labels), q.genmap, q.section)
    return SyntacticPresentation(l, q, ElementSubset(q.size, image),
                                 Congruence([relabel[c] for c in projection]))


def language_key(l: RecognizableLanguage):
    """Canonical form: equal keys iff equal languages."""
    # languages are immutable, so the key is cached on the instance
    key = l.__dict__.get("_key")
    if key is None:
        s = syntactic_quotient(l)
        key = l.__dict__["_key"] = (s.quotient.key, s.accepting_image.members)
    return key


def language_of(e: FiniteQuotient, accepting) -> RecognizableLanguage:
    return RecognizableLanguage(e.backend, e.codomain, e.genmap, accepting)


def check_syntactic_recognizes(l: RecognizableLanguage) -> bool:
    """``l`` is the union of the syntactic classes of its members."""
    s = syntactic_quotient(l)
    return equal(l, language_of(s.quotient, s.accepting_image))


# ---------------------------------------------------------------------------
# families


def _atoms(masks: Sequence[np.ndarray], size: int) -> np.ndarray:
    """Atom index per element: elements with identical membership vectors."""
    if not len(masks):
        return np.zeros(size, dtype=np.int64)
    _, atom = np.unique(np.stack(masks, axis=1), axis=0, return_inverse=True)
    return atom.reshape(-1)


def _unions_of_atoms(atom: np.ndarray, limit: int) -> List[np.ndarray]:
    k = int(atom.max()) + 1
    if 2 ** k > limit:
        raise AlgebraError(f"family would have 2^{k} languages, above the limit {limit}")
    out = []
    for bits in itertools.product((False, True), repeat=k):
        out.append(np.array(bits, dtype=bool)[atom])
    return sorted(out, key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))


def generated_coalgebra(seeds: Sequence[RecognizableLanguage], limit: int = MAX_FAMILY
                        ) -> LanguageFamily:
    """Least family containing ``seeds`` closed under derivatives and Boolean
    operations.

    Derivatives commute with Boolean operations, so this is the Boolean
    closure of the derivative closure; all members share the joint recognizer.
    """
    if not seeds:
        raise AlgebraError("need at least one seed language")
    algebra, genmap, elements = joint_recognizer(list(seeds))
    masks = [np.array([x[j] in l.accepting.members for x in elements])
             for j, l in enumerate(seeds)]
    closed = derivative_closure_masks(algebra, masks)
    atom = _atoms(closed, algebra.size)
    backend = seeds[0].backend
    langs = tuple(RecognizableLanguage(backend, algebra, genmap, np.flatnonzero(m).tolist())
                  for m in _unions_of_atoms(atom, limit))
    return LanguageFamily(backend, langs, "boolean", True)


def recognized_family(q: FiniteQuotient, limit: int = MAX_FAMILY) -> LanguageFamily:
    """Every language ``F ∘ e`` for ``F`` a subset of the codomain."""
    if 2 ** q.size > limit or q.size > 16:
        raise AlgebraError(f"codomain of size {q.size} has too many subsets to enumerate")
    langs = []
    for bits in itertools.product((False, True), repeat=q.size):
        langs.append(language_of(q, [i for i, b in enumerate(bits) if b]))
    langs.sort(key=lambda l: (len(l.accepting), sorted(l.accepting.members)))
    return LanguageFamily(q.backend, tuple(langs), "boolean", True)


@dataclass(frozen=True)
class Violation:
    operation: str
    detail: str
    missing: RecognizableLanguage

    def describe(self) -> str:
        s = syntactic_quotient(self.missing)
        return (f"{self.operation}: {self.detail} is missing "
                f"(syntactic size {s.size}, accepting {sorted(s.accepting_image.members)})")


def closure_violations(family: Sequence[RecognizableLanguage], mode: str = "boolean",
                       derivatives: bool = True,
                       preimages: Sequence[Tuple[str, object]] = (),
                       first_only: bool = False) -> List[Violation]:
    """Missing languages for closure under the mode's connectives, one-step
    derivatives and the given ``(name, substitution)`` preimages."""
    from .languages import complement, intersection, preimage, union

    if mode not in ("boolean", "lattice"):
        raise AlgebraError(f"unknown closure mode {mode!r}")
    family = list(family)
    if not family:
        return []
    keys = {language_key(l) for l in family}
    out: List[Violation] = []
    reported = set()
    seen = {}

    def need(l, operation, detail):
        # results over a shared recognizer repeat often; key them by accepting set
        raw = (id(l.recognizer), l.genmap, l.accepting.members)
        if raw not in seen:
            seen[raw] = (language_key(l), l.recognizer)  # holding it pins the id
        k = seen[raw][0]
        if k not in keys and (operation, k) not in reported:
            reported.add((operation, k))
            out.append(Violation(operation, detail, l))

    for i, l in enumerate(family):
        if mode == "boolean":
            need(complement(l), "complement", f"complement of member {i}")
        for j in range(i + 1, len(family)):
            need(union(l, family[j]), "union", f"union of members {i} and {j}")
            need(intersection(l, family[j]), "intersection", f"intersection of members {i} and {j}")
        if first_only and out:
            return out
    if derivatives:
        for i, l in enumerate(family):
            for row in one_step_preimages(l.recognizer, l.accepting.mask):
                d = RecognizableLanguage(l.backend, l.recognizer, l.genmap, np.flatnonzero(row).tolist())
                need(d, "derivative", f"a derivative of member {i}")
            if first_only and out:
                return out
    for name, subst in preimages:
        for i, l in enumerate(family):
            need(preimage(l, subst), "preimage", f"preimage of member {i} under {name}")
    return out


def atoms_congruence(family: LanguageFamily) -> FiniteQuotient:
    """Quotient of ``TX`` identifying elements that lie in the same members.

    The family must be closed under Boolean operations and derivatives; when
    its flags do not certify this, the closure is checked and a violation
    raises :class:`AlgebraError`.
    """
    langs = list(family)
    if not (family.closure == "boolean" and family.derivative_closed):
        bad = closure_violations(langs, "boolean", derivatives=True, first_only=True)
        if bad:
            raise AlgebraError("family is not closed: " + bad[0].describe())
    algebra, genmap, elements = joint_recognizer(langs)
    masks = [np.array([x[j] in l.accepting.members for x in elements]) for j, l in enumerate(langs)]
    theta = Congruence(_atoms(masks, algebra.size).tolist())
    if not theta.is_compatible(algebra):
        raise AlgebraError("atom partition is not a congruence; the family is not derivative closed")
    codomain, projection = quotient(algebra, theta)
    return canonical(quotient_of(family.backend, codomain, [projection[g] for g in genmap]))


def same_family(f1: Sequence[RecognizableLanguage], f2: Sequence[RecognizableLanguage]) -> bool:
    """Member-for-member equality of two families of languages."""
    k1 = {language_key(l) for l in f1}
    k2 = {language_key(l) for l in f2}
    return k1 == k2
