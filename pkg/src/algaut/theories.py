"""Finite quotients as theory atoms: factoring, full invariance, satisfaction,
subdirect products and pseudovariety membership."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union


from .algebra import (AlgebraError, Congruence, FiniteAlgebra, Term, equation_witness,
                      extend_map, generated_in_product, generating_set, is_homomorphism,
                      quotient)
from .free import (Evaluator, FreeBackend, FreeElem, extend, in_variety, require_variety,
                   sort_key)
from .quotients import FiniteQuotient, canonical, compute_sections, quotient_of

MAX_MAPS = 1_000_000
MAX_COORDINATES = 64
MAX_FREE = 1_000_000

Target = Union[FiniteQuotient, Tuple[FiniteAlgebra, Mapping[str, int]]]


def _target(h: Target, backend: FreeBackend) -> Tuple[FiniteAlgebra, Tuple[int, ...]]:
    if isinstance(h, FiniteQuotient):
        if h.backend != backend:
            raise AlgebraError(f"quotients over different backends: {h.backend} vs {backend}")
        return h.codomain, h.genmap
    algebra, genmap = h
    if not isinstance(genmap, Mapping):
        genmap = dict(zip(backend.alphabet, genmap))
    require_variety(backend, algebra)
    return algebra, tuple(int(genmap[x]) for x in backend.alphabet)


# ---------------------------------------------------------------------------
# factoring


@dataclass(frozen=True)
class Factoring:
    """Outcome of a factoring attempt.

    ``map`` is ``g'`` with ``g' ∘ e = ĥ`` when it exists; otherwise
    ``witness`` is a pair ``(u, v)`` identified by ``e`` but not by ``ĥ``.
    """

    map: Optional[Tuple[int, ...]]
    witness: Optional[Tuple[FreeElem, FreeElem]] = None

    def __bool__(self):
        return self.map is not None


def kernel_witness(backend: FreeBackend, first: Tuple[FiniteAlgebra, Sequence[int]],
                   second: Tuple[FiniteAlgebra, Sequence[int]]
                   ) -> Optional[Tuple[FreeElem, FreeElem]]:
    """Least pair ``(u, v)`` with ``first(u) = first(v)`` and ``second(u) != second(v)``.

    Works in the joint image of ``TX`` in the product of the two algebras;
    ``u`` and ``v`` are sections of joint elements.
    """
    (a, ga), (b, gb) = first, second
    seeds = list(zip(ga, gb))
    joint, elements = generated_in_product([a, b], seeds, MAX_FREE)
    index = {x: i for i, x in enumerate(elements)}
    ev = Evaluator(backend, joint, dict(zip(backend.alphabet, (index[s] for s in seeds))))
    sections = compute_sections(backend, ev, joint.size)
    seen: Dict[int, int] = {}
    best = None
    # visit joint elements by section so each class is first met at its least word
    for i in sorted(range(len(elements)), key=lambda i: sort_key(backend, sections[i])):
        p = elements[i][0]
        if p in seen:
            pair = tuple(sorted((sections[seen[p]], sections[i]), key=lambda w: sort_key(backend, w)))
            k = (sort_key(backend, pair[1]), sort_key(backend, pair[0]))
            if best is None or k < best[0]:
                best = (k, pair)
        else:
            seen[p] = i
    return None if best is None else best[1]


def factor_through(h: Target, e: FiniteQuotient) -> Factoring:
    """Find ``g'`` with ``g' ∘ e = ĥ``: define it on sections, then verify."""
    algebra, genmap = _target(h, e.backend)
    if algebra.signature != e.codomain.signature:
        raise AlgebraError("target and quotient have different signatures")
    hat = extend(e.backend, algebra, dict(zip(e.backend.alphabet, genmap)))
    g = tuple(hat(w) for w in e.section)
    if (is_homomorphism(g, e.codomain, algebra)
            and all(g[q] == a for q, a in zip(e.genmap, genmap))):
        return Factoring(g)
    return Factoring(None, kernel_witness(e.backend, (e.codomain, e.genmap), (algebra, genmap)))


def factors_through(h: Target, e: FiniteQuotient) -> bool:
    return bool(factor_through(h, e))


# ---------------------------------------------------------------------------
# full invariance and satisfaction


def _assignments(size: int, letters: int):
    if size ** letters > MAX_MAPS:
        raise AlgebraError(f"{size}^{letters} generator assignments exceed the limit {MAX_MAPS}")
    return itertools.product(range(size), repeat=letters)


@dataclass(frozen=True)
class Invariance:
    """Result of :func:`is_fully_invariant`.

    On failure, ``assignment`` is the letter map ``f: X -> Q`` whose extension
    does not factor, ``substitution`` lifts it to ``TX`` through sections and
    ``pair`` is ``(u, v)`` with ``e(u) = e(v)`` but ``e(σu) != e(σv)``.
    """

    holds: bool
    assignment: Optional[Dict[str, int]] = None
    substitution: Optional[Dict[str, FreeElem]] = None
    pair: Optional[Tuple[FreeElem, FreeElem]] = None

    def __bool__(self):
        return self.holds


def is_fully_invariant(e: FiniteQuotient) -> Invariance:
    """Check that every substitution preserves ``ker(e)``.

    A substitution ``σ`` only matters through ``x ↦ e(σ(x))``, so quantifying
    over the ``|Q|^|X|`` maps ``X -> Q`` covers all of them.
    """
    letters = e.backend.alphabet
    for images in _assignments(e.size, len(letters)):
        result = factor_through((e.codomain, images), e)
        if not result:
            f = dict(zip(letters, images))
            return Invariance(False, f, {x: e.section[q] for x, q in f.items()}, result.witness)
    return Invariance(True)


def satisfies(a: FiniteAlgebra, e: FiniteQuotient) -> bool:
    """Every homomorphism ``TX -> a`` factors through ``e``."""
    return satisfaction_witness(a, e) is None


def satisfaction_witness(a: FiniteAlgebra, e: FiniteQuotient):
    """``None`` if ``a`` satisfies ``e``, else ``(assignment, (u, v))``."""
    require_variety(e.backend, a)
    letters = e.backend.alphabet
    for images in _assignments(a.size, len(letters)):
        result = factor_through((a, images), e)
        if not result:
            return dict(zip(letters, images)), result.witness
    return None


# ---------------------------------------------------------------------------
# constructions on quotients


def compose_quotient(e: FiniteQuotient, c: Congruence) -> FiniteQuotient:
    """``TX ->> Q ->> Q/c``; each new section is the first old section in its class."""
    if c.n != e.size:
        raise AlgebraError(f"congruence on {c.n} elements, codomain has {e.size}")
    algebra, projection = quotient(e.codomain, c)
    first: Dict[int, FreeElem] = {}
    for q in sorted(range(e.size), key=lambda q: sort_key(e.backend, e.section[q])):
        first.setdefault(projection[q], e.section[q])
    section = tuple(first[k] for k in range(algebra.size))
    return canonical(FiniteQuotient(e.backend, algebra, tuple(projection[g] for g in e.genmap),
                                    section))


def substitution_image(e: FiniteQuotient, subst: Mapping[str, FreeElem],
                       alphabet: Optional[Sequence[str]] = None) -> FiniteQuotient:
    """Image factorization of ``e ∘ σ̂`` for ``σ: Y -> TX``.

    ``Y`` is ``alphabet`` if given, else the keys of ``subst`` in order.
    """
    letters = tuple(alphabet) if alphabet is not None else tuple(subst)
    source = e.backend.with_alphabet(letters)
    for y in letters:
        w = subst[y]
        if w.kind != e.backend.kind:
            raise AlgebraError(f"substitution image {w} is not a {e.backend.kind} element")
    images = [e(subst[y]) for y in letters]
    return canonical(quotient_of(source, e.codomain, images))


def subdirect_product(quotients: Sequence[FiniteQuotient], limit: int = MAX_FREE
                      ) -> FiniteQuotient:
    """Image of ``TX`` in the product of the codomains."""
    if not quotients:
        raise AlgebraError("subdirect product of an empty family")
    backend = quotients[0].backend
    for q in quotients[1:]:
        if q.backend != backend:
            raise AlgebraError(f"quotients over different backends: {q.backend} vs {backend}")
    seeds = [tuple(q.genmap[i] for q in quotients) for i in range(len(backend.alphabet))]
    algebra, elements = generated_in_product([q.codomain for q in quotients], seeds, limit)
    index = {x: i for i, x in enumerate(elements)}
    return canonical(quotient_of(backend, algebra, [index[s] for s in seeds]))


def local_variety_free(generators: Sequence[FiniteQuotient]) -> FiniteQuotient:
    """Free object of the local variety generated by ``generators``.

    Every quotient or ``X``-generated subquotient of a generator factors
    through the subdirect product of the generators, so that product is it.
    """
    if not generators:
        raise AlgebraError("a local variety needs at least one generator")
    return subdirect_product(generators)


def ps_upper_bound(members: Sequence[FiniteQuotient]) -> FiniteQuotient:
    """A quotient every member factors through (their subdirect product)."""
    bound = subdirect_product(members)
    for i, m in enumerate(members):
        if not factor_through(m, bound):
            raise AlgebraError(f"member {i} does not factor through the subdirect product")
    return bound


# ---------------------------------------------------------------------------
# pseudovarieties


class PseudovarietySpec:
    """Membership rule for a class of finite algebras."""

    def explain(self, a: FiniteAlgebra) -> Optional[str]:
        """``None`` if ``a`` is a member, otherwise the reason it is not."""
        raise NotImplementedError

    def __and__(self, other: "PseudovarietySpec") -> "Conjunction":
        return Conjunction((self, other))


@dataclass(frozen=True)
class Identities(PseudovarietySpec):
    """Finite algebras satisfying every listed equation."""

    equations: Tuple[Tuple[Term, Term], ...] = ()
    name: str = ""

    def explain(self, a):
        found = equation_witness(a, list(self.equations))
        if found is None:
            return None
        i, assignment = found
        lhs, rhs = self.equations[i]
        shown = ", ".join(f"{k}={v}" for k, v in assignment.items())
        return f"{lhs} = {rhs} fails at {shown}"

    def __str__(self):
        if self.name:
            return self.name
        return "id: " + " ; ".join(f"{l}={r}" for l, r in self.equations)


ALL = Identities((), "all")


@dataclass(frozen=True)
class EventualIdentity(PseudovarietySpec):
    """``x^n = x^(n+1)`` for some ``n`` (aperiodic), or for the given ``n``."""

    n: Optional[int] = None
    symbol: str = "mul"

    def explain(self, a):
        if self.n is not None:
            k, bad = self.n, None
            for x in range(a.size):
                if _power(a, x, k, self.symbol) != _power(a, x, k + 1, self.symbol):
                    bad = x
                    break
            return None if bad is None else f"x^{k} != x^{k + 1} at x={bad}"
        index = stabilization_index(a, self.symbol)
        if isinstance(index, int):
            return None
        return f"powers of {index[1]} never stabilize (period {index[2]})"

    def __str__(self):
        return "aperiodic" if self.n is None else f"x^{self.n}=x^{self.n + 1}"


def _power(a: FiniteAlgebra, x: int, k: int, symbol: str) -> int:
    mul = a.tables[symbol]
    out = x
    for _ in range(k - 1):
        out = int(mul[out, x])
    return out


def stabilization_index(a: FiniteAlgebra, symbol: str = "mul"):
    """Least ``n >= 1`` with ``x^n = x^(n+1)`` for every ``x``, or
    ``("period", x, p)`` naming an element whose powers cycle with period ``p > 1``."""
    mul = a.tables[symbol]
    worst = 1
    for x in range(a.size):
        seen = {x: 1}
        p, k = x, 1
        while True:
            p, k = int(mul[p, x]), k + 1
            if p in seen:
                period = k - seen[p]
                if period > 1:
                    return ("period", x, period)
                worst = max(worst, seen[p])
                break
            seen[p] = k
    return worst


@dataclass(frozen=True)
class Generated(PseudovarietySpec):
    """The pseudovariety generated by finitely many finite algebras."""

    generators: Tuple[FiniteAlgebra, ...]
    name: str = ""

    def __post_init__(self):
        if not self.generators:
            raise AlgebraError("Generated needs at least one algebra")
        sig = self.generators[0].signature
        if any(g.signature != sig for g in self.generators):
            raise AlgebraError("generators have different signatures")

    def explain(self, a):
        if a.signature != self.generators[0].signature:
            raise AlgebraError(f"signature mismatch: {a.signature} vs {self.generators[0].signature}")
        gens = generating_set(a)
        free, positions = relatively_free(self.generators, len(gens))
        if extend_map(free, a, positions, gens) is None:
            return (f"not a quotient of the {len(gens)}-generated relatively free algebra "
                    f"(size {free.size})")
        return None

    def __str__(self):
        if self.name:
            return self.name
        return "gen: " + " ".join(f"<{g.size}-element algebra>" for g in self.generators)


def relatively_free(generators: Sequence[FiniteAlgebra], k: int):
    """The ``k``-generated free algebra of the variety generated by ``generators``.

    It is the subalgebra of ``∏ B^(B^k)`` generated by the ``k`` projections.
    Returns the algebra and the indices of the free generators.
    """
    coords = [(b, assignment) for b in generators for assignment in
              itertools.product(range(b.size), repeat=k)]
    if len(coords) > MAX_COORDINATES:
        raise AlgebraError(f"relatively free algebra on {k} generators needs {len(coords)} "
                           f"coordinates (limit {MAX_COORDINATES}); use smaller generators")
    algebras = [b for b, _ in coords]
    seeds = [tuple(assignment[i] for _, assignment in coords) for i in range(k)]
    if not coords:
        raise AlgebraError("no coordinates")
    free, elements = generated_in_product(algebras, seeds, MAX_FREE)
    index = {x: i for i, x in enumerate(elements)}
    return free, [index[s] for s in seeds]


@dataclass(frozen=True)
class Conjunction(PseudovarietySpec):
    parts: Tuple[PseudovarietySpec, ...]

    def explain(self, a):
        for p in self.parts:
            reason = p.explain(a)
            if reason is not None:
                return f"{p}: {reason}"
        return None

    def __str__(self):
        return " & ".join(str(p) for p in self.parts)


def pv_member(a: FiniteAlgebra, spec: PseudovarietySpec) -> bool:
    return spec.explain(a) is None


def ps_member(e: FiniteQuotient, spec: PseudovarietySpec) -> bool:
    return pv_member(e.codomain, spec)


@dataclass(frozen=True)
class LocalTheory:
    """A local theory over one free backend.

    Either ``quotient`` is a fully invariant quotient (an equational theory),
    or ``spec`` gives the membership rule of a pseudoequational theory.
    """

    backend: FreeBackend
    quotient: Optional[FiniteQuotient] = None
    spec: Optional[PseudovarietySpec] = None

    @classmethod
    def equational(cls, e: FiniteQuotient) -> "LocalTheory":
        result = is_fully_invariant(e)
        if not result:
            u, v = result.pair
            raise AlgebraError(f"quotient is not fully invariant: substitution "
                               f"{ {x: str(w) for x, w in result.substitution.items()} } "
                               f"separates {u} and {v}")
        return cls(e.backend, quotient=e)

    @classmethod
    def pseudo(cls, backend: FreeBackend, spec: PseudovarietySpec) -> "LocalTheory":
        return cls(backend, spec=spec)

    def models(self, a: FiniteAlgebra) -> bool:
        if self.quotient is not None:
            return satisfies(a, self.quotient)
        return in_variety(self.backend, a) and pv_member(a, self.spec)

    def contains(self, e: FiniteQuotient) -> bool:
        """For a pseudoequational theory, whether ``e`` belongs to it; for an
        equational one, whether ``e`` is coarser than the theory."""
        if self.quotient is not None:
            return bool(factor_through(e, self.quotient))
        return ps_member(e, self.spec)
