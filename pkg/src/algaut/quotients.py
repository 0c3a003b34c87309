"""Finite quotients ``e: TX ->> Q`` of free algebras."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from .algebra import AlgebraError, FiniteAlgebra, generated_subalgebra, permute
from .free import (Evaluator, FreeBackend, FreeElem, enumerate_elements, extend, op_apply,
                   require_variety, sort_key, unit)


@dataclass(frozen=True, eq=False)
class FiniteQuotient:
    """A surjective homomorphism from ``TX`` onto a finite algebra.

    ``genmap[i]`` is the image of the ``i``-th letter and ``section[q]`` is
    the first free element (in enumeration order) mapped to ``q``.
    Build instances with :func:`quotient_of`.
    """

    backend: FreeBackend
    codomain: FiniteAlgebra
    genmap: Tuple[int, ...]
    section: Tuple[FreeElem, ...]

    @property
    def genmap_dict(self) -> Dict[str, int]:
        return dict(zip(self.backend.alphabet, self.genmap))

    @functools.cached_property
    def evaluator(self) -> Evaluator:
        return extend(self.backend, self.codomain, self.genmap_dict)

    def __call__(self, w: FreeElem) -> int:
        return self.evaluator(w)

    @property
    def size(self) -> int:
        return self.codomain.size

    @functools.cached_property
    def key(self):
        """Equal for two quotients iff they have the same kernel."""
        canon = canonical(self)
        return (self.backend, canon.codomain.key(), canon.genmap)

    def __repr__(self):
        return (f"FiniteQuotient({self.backend}, size={self.codomain.size}, "
                f"genmap={self.genmap_dict})")


def _successors(b: FreeBackend, w: FreeElem) -> List[FreeElem]:
    out = []
    for x in b.alphabet:
        g = unit(b, x)
        out.append(op_apply(b, "mul", [w, g]))
        if b.kind == "group":
            out.append(op_apply(b, "mul", [w, op_apply(b, "inv", [g])]))
    return out


def compute_sections(b: FreeBackend, evaluator, size: int) -> Tuple[FreeElem, ...]:
    """First free element (enumeration order) over each of ``size`` images."""
    found: Dict[int, FreeElem] = {}
    if b.kind == "maction":
        for w in enumerate_elements(b, 1):
            found.setdefault(evaluator(w), w)
    else:
        level = [b.identity()] if b.kind != "semigroup" else [unit(b, x) for x in b.alphabet]
        while level and len(found) < size:
            kept = []
            for w in sorted(set(level), key=lambda w: sort_key(b, w)):
                q = evaluator(w)
                if q not in found:
                    found[q] = w
                    kept.append(w)
            level = [s for w in kept for s in _successors(b, w)]
    if len(found) != size:
        raise AlgebraError("quotient map is not surjective")
    return tuple(found[q] for q in range(size))


def quotient_of(backend: FreeBackend, algebra: FiniteAlgebra, genmap) -> FiniteQuotient:
    """The quotient ``TX ->> A'`` where ``A'`` is the part of ``algebra``
    generated by the letter images."""
    require_variety(backend, algebra)
    if not isinstance(genmap, Mapping):
        genmap = dict(zip(backend.alphabet, genmap))
    images = [int(genmap[x]) for x in backend.alphabet]
    sub, inclusion = generated_subalgebra(algebra, images)
    back = {old: new for new, old in enumerate(inclusion)}
    images = [back[x] for x in images]
    ev = extend(backend, sub, dict(zip(backend.alphabet, images)))
    return FiniteQuotient(backend, sub, tuple(images), compute_sections(backend, ev, sub.size))


def canonical(e: FiniteQuotient) -> FiniteQuotient:
    """Renumber the codomain in the enumeration order of its sections."""
    order = sorted(range(e.size), key=lambda q: sort_key(e.backend, e.section[q]))
    position = {old: new for new, old in enumerate(order)}
    codomain = permute(e.codomain, order)
    return FiniteQuotient(e.backend, codomain, tuple(position[q] for q in e.genmap),
                          tuple(e.section[q] for q in order))


def same_kernel(e1: FiniteQuotient, e2: FiniteQuotient) -> bool:
    return e1.key == e2.key
