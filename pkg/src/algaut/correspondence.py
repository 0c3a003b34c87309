"""Translating between pseudovarieties and families of languages, and
checking that the two translations are mutually inverse on small instances."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .algebra import AlgebraError, generated_in_product
from .enumeration import enumerate_quotients
from .free import FreeBackend, FreeElem, enumerate_elements
from .languages import LanguageFamily, RecognizableLanguage, intersection, preimage, union
from .quotients import FiniteQuotient
from .syntactic import (MAX_FAMILY, _atoms, atoms_congruence, closure_violations,
                        generated_coalgebra, language_key, language_of, recognized_family,
                        syntactic_quotient)
from .theories import PseudovarietySpec, factor_through, pv_member, subdirect_product


@dataclass(frozen=True)
class Report:
    """Fixed-order text report; ``ok`` iff there are no violations."""

    title: str
    lines: Tuple[str, ...]
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def render(self) -> str:
        out = [self.title] + ["  " + s for s in self.lines]
        out += ["  violation: " + v for v in self.violations]
        out.append(f"{len(self.violations)} violations")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# predicates


class LanguagePredicate:
    boolean = False

    def __call__(self, l: RecognizableLanguage) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class FromPs(LanguagePredicate):
    """Languages whose syntactic algebra lies in the pseudovariety."""

    spec: PseudovarietySpec
    boolean = True

    def __call__(self, l):
        return pv_member(syntactic_quotient(l).quotient.codomain, self.spec)


class FromFamily(LanguagePredicate):
    """Membership in an explicit family."""

    def __init__(self, family: LanguageFamily):
        self.family = family
        self.boolean = family.closure == "boolean"
        self._keys = {language_key(l) for l in family}

    def __call__(self, l):
        if l.backend != self.family.backend:
            raise AlgebraError(f"language over {l.backend}, family over {self.family.backend}")
        return language_key(l) in self._keys


def lan_member(p: LanguagePredicate, l: RecognizableLanguage) -> bool:
    return p(l)


def ps_member_from_lan(p: LanguagePredicate, e: FiniteQuotient,
                       atoms_only: Optional[bool] = None) -> bool:
    """Every language recognized by ``e`` satisfies ``p``.

    For Boolean-closed predicates the single-class languages decide this;
    ``atoms_only=False`` forces the full check.
    """
    if atoms_only is None:
        atoms_only = p.boolean
    if atoms_only:
        return all(p(language_of(e, [q])) for q in range(e.size))
    return all(p(l) for l in recognized_family(e))


def recognized_by_member(spec: PseudovarietySpec, l: RecognizableLanguage, max_size: int
                         ) -> bool:
    """Search for a quotient of size at most ``max_size`` in the pseudovariety
    that recognizes ``l``."""
    s = syntactic_quotient(l).quotient
    return any(pv_member(e.codomain, spec) and factor_through(s, e)
               for e in enumerate_quotients(l.backend, max_size))


# ---------------------------------------------------------------------------
# round trips


def roundtrip_ps(spec: PseudovarietySpec, backend: FreeBackend, size_bound: int) -> Report:
    """Compare ``e ∈ Ps`` with ``e ∈ Ps_{Lan_Ps}`` on every quotient up to the bound."""
    quotients = enumerate_quotients(backend, size_bound)
    members = 0
    bad = []
    for e in quotients:
        direct = pv_member(e.codomain, spec)
        via = ps_member_from_lan(FromPs(spec), e, atoms_only=False)
        members += direct
        if direct != via:
            bad.append(f"quotient of size {e.size} with genmap {e.genmap_dict}: "
                       f"in Ps={direct}, in Ps_Lan={via}")
    lines = (f"spec: {spec}",
             f"backend: {backend}",
             f"codomain size <= {size_bound}",
             f"quotients checked: {len(quotients)}",
             f"members: {members}")
    return Report("round trip Ps = Ps_{Lan_Ps}", lines, tuple(bad))


def _substitutions(backend: FreeBackend, bound: int) -> List[Dict[str, FreeElem]]:
    images = enumerate_elements(backend, bound)
    return [dict(zip(backend.alphabet, combo))
            for combo in itertools.product(images, repeat=len(backend.alphabet))]


def _describe_subst(s: Mapping[str, FreeElem]) -> str:
    return ", ".join(f"{x}->{w}" for x, w in s.items())


class _BooleanFamily:
    """A Boolean family given by its atoms on a shared recognizer."""

    def __init__(self, seeds: Sequence[RecognizableLanguage], limit: int):
        family = generated_coalgebra(seeds, limit)
        self.family = family
        base = family[len(family) - 1]  # the full language carries the shared recognizer
        self.recognizer, self.genmap = base.recognizer, base.genmap
        self.atom = _atoms([l.accepting.mask for l in family], self.recognizer.size)
        self.backend = base.backend

    def __len__(self):
        return len(self.family)

    def __iter__(self):
        return iter(self.family)

    @property
    def atoms(self) -> List[RecognizableLanguage]:
        k = int(self.atom.max()) + 1
        return [RecognizableLanguage(self.backend, self.recognizer, self.genmap,
                                     np.flatnonzero(self.atom == i).tolist()) for i in range(k)]

    def contains(self, l: RecognizableLanguage) -> bool:
        """``l`` is a union of atoms: its membership is a function of the atom."""
        seeds = list(zip(self.genmap, l.genmap))
        _, elements = generated_in_product([self.recognizer, l.recognizer], seeds)
        verdict: Dict[int, bool] = {}
        for r, s in elements:
            v = s in l.accepting.members
            if verdict.setdefault(int(self.atom[r]), v) != v:
                return False
        return True


def close_under_preimages(seeds: Sequence[RecognizableLanguage], substitutions,
                          limit: int = MAX_FAMILY) -> _BooleanFamily:
    """Least Boolean, derivative-closed family containing ``seeds`` and closed
    under preimages along ``substitutions``."""
    seeds = list(seeds)
    current = _BooleanFamily(seeds, limit)
    while True:
        added = []
        for a in current.atoms:
            for s in substitutions:
                p = preimage(a, s, current.backend.alphabet)
                if not current.contains(p) and not any(language_key(p) == language_key(q)
                                                       for q in added):
                    added.append(p)
        if not added:
            return current
        seeds += added
        current = _BooleanFamily(seeds, limit)


def roundtrip_lan(seeds: Sequence[RecognizableLanguage], subst_bound: int = 2,
                  limit: int = MAX_FAMILY) -> Report:
    """Check ``Lan = Lan_{Ps_Lan}`` where ``Lan`` is generated by ``seeds``.

    ``Lan`` is closed under Boolean operations, derivatives and preimages along
    every substitution whose letter images have size at most ``subst_bound``.
    """
    if not seeds:
        raise AlgebraError("need at least one seed language")
    backend = seeds[0].backend
    substs = _substitutions(backend, subst_bound)
    lan = close_under_preimages(seeds, substs, limit)
    members = list(lan.family)
    bad = []
    # Lan ⊆ Lan_{Ps_Lan}: each member's syntactic quotient lies in Ps_Lan
    for i, l in enumerate(members):
        s = syntactic_quotient(l)
        for q in range(s.size):
            if not lan.contains(language_of(s.quotient, [q])):
                bad.append(f"member {i}: syntactic class {s.quotient.section[q]} is not in Lan")
                break
    # Lan_{Ps_Lan} ⊆ Lan: every Ps_Lan member factors through the atoms quotient,
    # whose recognized languages must all lie in Lan
    top = atoms_congruence(lan.family)
    for q in range(top.size):
        if not lan.contains(language_of(top, [q])):
            bad.append(f"class {top.section[q]} of the atoms quotient is not in Lan")
    for i, l in enumerate(members):
        if not factor_through(syntactic_quotient(l).quotient, top):
            bad.append(f"syntactic quotient of member {i} does not factor through the atoms quotient")
    # Ps_Lan is directed: pairwise upper bounds stay inside
    quotients = {}
    for l in members:
        s = syntactic_quotient(l).quotient
        quotients.setdefault(s.key, s)
    qs = list(quotients.values())
    for e1, e2 in itertools.combinations(qs, 2):
        bound = subdirect_product([e1, e2])
        if not all(lan.contains(language_of(bound, [q])) for q in range(bound.size)):
            bad.append(f"upper bound of syntactic quotients of sizes {e1.size} and {e2.size} "
                       f"leaves Lan")
    lines = (f"backend: {backend}",
             f"seeds: {len(seeds)}",
             f"substitutions (images of size <= {subst_bound}): {len(substs)}",
             "tested: " + "; ".join(_describe_subst(s) for s in substs),
             f"Lan: {len(members)} languages, {int(lan.atom.max()) + 1} atoms",
             f"distinct syntactic quotients: {len(qs)}",
             f"atoms quotient size: {top.size}")
    return Report("round trip Lan = Lan_{Ps_Lan}", lines, tuple(bad))


# ---------------------------------------------------------------------------
# union decomposition and closure


def union_decomposition_check(e_list: Sequence[FiniteQuotient], g) -> bool:
    """``g ∘ e = ⋃_{s ∈ g} ⋂_i h_{i,s} ∘ e_i`` where ``e`` is the subdirect
    product and ``h_{i,s}`` accepts the ``i``-th coordinate of ``s``."""
    e = subdirect_product(e_list)
    g = sorted({int(s) for s in g})
    lhs = language_of(e, g)
    rhs = language_of(e, [])
    for s in g:
        w = e.section[s]
        part = None
        for ei in e_list:
            piece = language_of(ei, [ei(w)])
            part = piece if part is None else intersection(part, piece)
        rhs = union(rhs, part)
    from .languages import equal
    return equal(lhs, rhs)


def closure_check(family: Sequence[RecognizableLanguage], mode: str = "boolean",
                  preimage_substs: Sequence[Mapping[str, FreeElem]] = (),
                  derivatives: bool = True):
    """Violations of closure under the mode's connectives, derivatives and the
    given preimages (letter images over the family's own alphabet)."""
    named = [(_describe_subst(s), dict(s)) for s in preimage_substs]
    return closure_violations(family, mode, derivatives, named)
