"""Recognizable languages over a free backend.

A language is stored as ``(recognizer, genmap, accepting)``: membership of
``w`` is ``extend(recognizer, genmap)(w) in accepting``. Recognizers are kept
reachable (generated by the letter images and the constants).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .algebra import (AlgebraError, ElementSubset, FiniteAlgebra, generated_in_product,
                      generated_subalgebra)
from .free import (MONOID, Evaluator, FreeBackend, FreeElem, extend, require_variety,
                   substitution)
from .regex import minimize, parse_regex, to_dfa, transition_monoid


@dataclass(frozen=True, eq=False)
class RecognizableLanguage:
    backend: FreeBackend
    recognizer: FiniteAlgebra
    genmap: Tuple[int, ...]
    accepting: ElementSubset

    def __init__(self, backend: FreeBackend, recognizer: FiniteAlgebra,
                 genmap: Mapping[str, int], accepting: Iterable[int]):
        require_variety(backend, recognizer)
        if not isinstance(genmap, Mapping):
            genmap = dict(zip(backend.alphabet, genmap))
        images = [int(genmap[x]) for x in backend.alphabet]
        members = accepting.members if isinstance(accepting, ElementSubset) else accepting
        members = {int(x) for x in members}
        sub, inclusion = generated_subalgebra(recognizer, images)
        if sub.size != recognizer.size:
            back = {old: new for new, old in enumerate(inclusion)}
            recognizer = sub
            images = [back[x] for x in images]
            members = {back[x] for x in members if x in back}
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "recognizer", recognizer)
        object.__setattr__(self, "genmap", tuple(images))
        object.__setattr__(self, "accepting", ElementSubset(recognizer.size, frozenset(members)))

    @property
    def genmap_dict(self) -> Dict[str, int]:
        return dict(zip(self.backend.alphabet, self.genmap))

    @functools.cached_property
    def evaluator(self) -> Evaluator:
        return extend(self.backend, self.recognizer, self.genmap_dict)

    def __contains__(self, w) -> bool:
        return membership(self, w)

    def __repr__(self):
        return (f"RecognizableLanguage({self.backend}, size={self.recognizer.size}, "
                f"accepting={sorted(self.accepting.members)})")


def _as_elem(l: RecognizableLanguage, w) -> FreeElem:
    if isinstance(w, str):
        return l.backend.word(w)
    return w


def membership(l: RecognizableLanguage, w) -> bool:
    """``w`` may be a :class:`FreeElem` or, for word-like backends, a string."""
    return l.evaluator(_as_elem(l, w)) in l.accepting.members


def _same_setting(l1: RecognizableLanguage, l2: RecognizableLanguage) -> None:
    if l1.backend != l2.backend:
        raise AlgebraError(f"languages over different backends: {l1.backend} vs {l2.backend}")


def _same_setting_all(langs: Sequence[RecognizableLanguage]) -> None:
    for l in langs[1:]:
        _same_setting(langs[0], l)


def joint_recognizer(langs: Sequence[RecognizableLanguage]):
    """Reachable part of the product of the recognizers, with the tuples it contains."""
    _same_setting_all(langs)
    seeds = [tuple(l.genmap[i] for l in langs) for i in range(len(langs[0].backend.alphabet))]
    algebra, elements = generated_in_product([l.recognizer for l in langs], seeds)
    index = {x: i for i, x in enumerate(elements)}
    genmap = [index[s] for s in seeds]
    return algebra, genmap, elements


def boolean_combination(langs: Sequence[RecognizableLanguage],
                        rule: Callable[..., bool]) -> RecognizableLanguage:
    """Language accepting ``w`` iff ``rule(w in l_1, ..., w in l_k)``."""
    first = langs[0]
    if all(l.recognizer is first.recognizer and l.genmap == first.genmap for l in langs[1:]):
        _same_setting_all(langs)
        accepting = [x for x in range(first.recognizer.size)
                     if rule(*(x in l.accepting.members for l in langs))]
        return RecognizableLanguage(first.backend, first.recognizer, first.genmap, accepting)
    algebra, genmap, elements = joint_recognizer(langs)
    accepting = [i for i, x in enumerate(elements)
                 if rule(*(x[j] in l.accepting.members for j, l in enumerate(langs)))]
    return RecognizableLanguage(langs[0].backend, algebra, genmap, accepting)


def complement(l: RecognizableLanguage) -> RecognizableLanguage:
    return RecognizableLanguage(l.backend, l.recognizer, l.genmap, l.accepting.complement())


def union(l1: RecognizableLanguage, l2: RecognizableLanguage) -> RecognizableLanguage:
    return boolean_combination([l1, l2], lambda p, q: p or q)


def intersection(l1: RecognizableLanguage, l2: RecognizableLanguage) -> RecognizableLanguage:
    return boolean_combination([l1, l2], lambda p, q: p and q)


def equal(l1: RecognizableLanguage, l2: RecognizableLanguage) -> bool:
    """Decide ``l1 == l2`` on the reachable part of the product recognizer."""
    _same_setting(l1, l2)
    _, _, elements = joint_recognizer([l1, l2])
    a1, a2 = l1.accepting.members, l2.accepting.members
    return all((p in a1) == (q in a2) for p, q in elements)


def empty_language(backend: FreeBackend, recognizer: Optional[FiniteAlgebra] = None
                   ) -> RecognizableLanguage:
    return _constant_language(backend, False, recognizer)


def full_language(backend: FreeBackend, recognizer: Optional[FiniteAlgebra] = None
                  ) -> RecognizableLanguage:
    return _constant_language(backend, True, recognizer)


def _constant_language(backend, value, recognizer):
    if recognizer is None:
        sig = backend.signature
        recognizer = FiniteAlgebra(sig, 1, {name: np.zeros((1,) * arity, dtype=np.int64)
                                            for name, arity in sig})
    genmap = [0] * len(backend.alphabet)
    return RecognizableLanguage(backend, recognizer, genmap, range(recognizer.size) if value else [])


# ---------------------------------------------------------------------------
# derivatives


def _preimage_mask(a: FiniteAlgebra, symbol: str, position: int, context: Sequence[int],
                   mask: np.ndarray) -> np.ndarray:
    tab = a.tables[symbol]
    idx = list(context[:position]) + [slice(None)] + list(context[position:])
    return mask[tab[tuple(idx)]]


def derivative(l: RecognizableLanguage, symbol: str, position: int,
               args: Sequence[FreeElem] = ()) -> RecognizableLanguage:
    """``t ↦ l(g(t_1, .., t, .., t_k))`` with ``t`` at 1-based ``position``.

    For monoids, position 1 with argument ``u`` gives ``w ↦ l(wu)`` and
    position 2 gives ``w ↦ l(uw)``.
    """
    sig = l.backend.signature
    if symbol not in sig:
        raise AlgebraError(f"symbol {symbol!r} not in signature {sig}")
    arity = sig.arity(symbol)
    if not 1 <= position <= arity:
        raise AlgebraError(f"position {position} out of range for {symbol!r} of arity {arity}")
    if len(args) != arity - 1:
        raise AlgebraError(f"{symbol!r} derivative needs {arity - 1} arguments, got {len(args)}")
    context = [l.evaluator(_as_elem(l, t)) for t in args]
    mask = _preimage_mask(l.recognizer, symbol, position - 1, context, l.accepting.mask)
    return RecognizableLanguage(l.backend, l.recognizer, l.genmap, np.flatnonzero(mask).tolist())


def one_step_preimages(a: FiniteAlgebra, mask: np.ndarray) -> np.ndarray:
    """Every accepting mask obtained by one derivative, as rows (deduplicated)."""
    rows = []
    for name, arity in a.signature:
        if arity == 0:
            continue
        values = mask[a.tables[name]]
        for pos in range(arity):
            rows.append(np.moveaxis(values, pos, -1).reshape(-1, a.size))
    if not rows:
        return np.zeros((0, a.size), dtype=bool)
    return np.unique(np.concatenate(rows), axis=0)


def derivative_closure_masks(a: FiniteAlgebra, masks: Iterable[np.ndarray]) -> List[np.ndarray]:
    """Closure of accepting masks under derivatives (including the masks themselves)."""
    seen: Dict[bytes, np.ndarray] = {}
    queue = []
    for m in masks:
        m = np.asarray(m, dtype=bool)
        if m.tobytes() not in seen:
            seen[m.tobytes()] = m
            queue.append(m)
    while queue:
        m = queue.pop()
        for row in one_step_preimages(a, m):
            if row.tobytes() not in seen:
                seen[row.tobytes()] = row
                queue.append(row)
    return sorted(seen.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))


@dataclass(frozen=True)
class LanguageFamily:
    """A finite list of pairwise distinct languages with verified closure flags.

    ``closure`` is ``"boolean"``, ``"lattice"`` or ``"none"``.
    """

    backend: FreeBackend
    languages: Tuple[RecognizableLanguage, ...]
    closure: str = "none"
    derivative_closed: bool = False

    def __len__(self):
        return len(self.languages)

    def __iter__(self) -> Iterator[RecognizableLanguage]:
        return iter(self.languages)

    def __getitem__(self, i):
        return self.languages[i]

    def contains(self, l: RecognizableLanguage) -> bool:
        return any(equal(l, m) for m in self.languages)


def distinct_derivatives(l: RecognizableLanguage) -> LanguageFamily:
    """``l`` together with all its iterated derivatives.

    Derivative arguments only matter through their image in the recognizer,
    so they range over recognizer elements and the closure is finite.
    """
    masks = derivative_closure_masks(l.recognizer, [l.accepting.mask])
    langs = tuple(RecognizableLanguage(l.backend, l.recognizer, l.genmap, np.flatnonzero(m).tolist())
                  for m in masks)
    return LanguageFamily(l.backend, langs, "none", True)


def preimage(l: RecognizableLanguage, subst: Mapping[str, FreeElem],
             alphabet: Optional[Sequence[str]] = None) -> RecognizableLanguage:
    """``l ∘ σ`` for the homomorphism ``σ: TY -> TX`` given by letter images.

    ``Y`` is ``alphabet`` if given, else the keys of ``subst`` in order.
    """
    letters = tuple(alphabet) if alphabet is not None else tuple(subst)
    source = l.backend.with_alphabet(letters)
    sigma = substitution(source, subst, target=l.backend)
    genmap = [l.evaluator(sigma.images[y]) for y in letters]
    return RecognizableLanguage(source, l.recognizer, genmap, l.accepting)


# ---------------------------------------------------------------------------
# regular expressions


def from_regex(alphabet: Sequence[str], pattern: str, max_size: int = 10_000
               ) -> RecognizableLanguage:
    """Compile a pattern to its transition monoid (monoid backend only)."""
    alphabet = tuple(alphabet)
    dfa = minimize(to_dfa(parse_regex(pattern, alphabet), alphabet, max_size))
    elements, table, letters = transition_monoid(dfa, max_size)
    algebra = FiniteAlgebra(MONOID, len(elements), {"e": 0, "mul": table})
    accepting = [i for i, f in enumerate(elements) if f[dfa.initial] in dfa.final]
    return RecognizableLanguage(FreeBackend.monoid(alphabet), algebra, letters, accepting)
