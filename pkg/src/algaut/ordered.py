"""Ordered algebras, admissible preorders and ordered syntactic quotients.

Orders and preorders are boolean ``n x n`` matrices with ``m[x, y]`` meaning
``x <= y``. Alphabets stay discrete; only codomains carry an order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .algebra import (AlgebraError, Congruence, FiniteAlgebra, generated_in_product,
                      is_homomorphism, quotient, _polynomial_images)
from .free import Evaluator, FreeBackend, FreeElem, extend, require_variety, sort_key
from .languages import LanguageFamily, RecognizableLanguage
from .quotients import FiniteQuotient, canonical, compute_sections, quotient_of


def _closure(mask: np.ndarray) -> np.ndarray:
    m = mask.copy()
    np.fill_diagonal(m, True)
    for k in range(len(m)):  # Warshall
        m |= m[:, k:k + 1] & m[k:k + 1, :]
    return m


@dataclass(frozen=True, eq=False)
class Preorder:
    """A reflexive, transitive relation on ``{0..n-1}``."""

    mask: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise AlgebraError("preorder mask must be square")
        if not m.diagonal().all():
            raise AlgebraError("preorder is not reflexive")
        if not np.array_equal(_closure(m), m):
            raise AlgebraError("preorder is not transitive")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Preorder":
        """Reflexive-transitive closure of ``pairs``."""
        m = np.zeros((n, n), dtype=bool)
        for x, y in pairs:
            m[x, y] = True
        return cls(_closure(m))

    @classmethod
    def discrete(cls, n: int) -> "Preorder":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def total(cls, n: int) -> "Preorder":
        return cls(np.ones((n, n), dtype=bool))

    @property
    def n(self) -> int:
        return len(self.mask)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.mask[x, y])

    def is_partial_order(self) -> bool:
        return not (self.mask & self.mask.T & ~np.eye(self.n, dtype=bool)).any()

    def equivalence(self) -> Congruence:
        """``⊑ ∩ ⊑⁻¹`` as a partition."""
        sym = self.mask & self.mask.T
        return Congruence(int(np.argmax(row)) for row in sym)

    def dual(self) -> "Preorder":
        return Preorder(self.mask.T)

    def hasse(self) -> List[Tuple[int, int]]:
        """Covering pairs ``x < y`` with nothing strictly between."""
        strict = self.mask & ~self.mask.T
        out = []
        for x, y in zip(*np.nonzero(strict)):
            between = strict[x] & strict[:, y]
            if not between.any():
                out.append((int(x), int(y)))
        return out

    def __eq__(self, other):
        return isinstance(other, Preorder) and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash(self.mask.tobytes())

    def __repr__(self):
        return f"Preorder(n={self.n}, pairs={[(int(x), int(y)) for x, y in zip(*np.nonzero(self.mask)) if x != y]})"


def _monotone_witness(a: FiniteAlgebra, order: np.ndarray):
    for name, arity in a.signature:
        if arity == 0:
            continue
        tab = a.tables[name]
        for pos in range(arity):
            rows = np.moveaxis(tab, pos, 0).reshape(a.size, -1)
            for x, y in zip(*np.nonzero(order)):
                bad = np.flatnonzero(~order[rows[x], rows[y]])
                if len(bad):
                    return name, pos, int(x), int(y)
    return None


@dataclass(frozen=True, eq=False)
class OrderedFiniteAlgebra:
    algebra: FiniteAlgebra
    order: Preorder

    def __post_init__(self):
        order = self.order if isinstance(self.order, Preorder) else Preorder(self.order)
        if order.n != self.algebra.size:
            raise AlgebraError("order size differs from the carrier")
        if not order.is_partial_order():
            raise AlgebraError("order is not antisymmetric")
        bad = _monotone_witness(self.algebra, order.mask)
        if bad is not None:
            name, pos, x, y = bad
            raise AlgebraError(f"{name!r} is not monotone in argument {pos + 1} "
                               f"(elements {x} <= {y})")
        object.__setattr__(self, "order", order)

    @classmethod
    def discrete(cls, a: FiniteAlgebra) -> "OrderedFiniteAlgebra":
        return cls(a, Preorder.discrete(a.size))

    @property
    def size(self) -> int:
        return self.algebra.size

    def leq(self, x: int, y: int) -> bool:
        return self.order.leq(x, y)


def is_admissible(a: OrderedFiniteAlgebra, p: Preorder) -> bool:
    """``p`` contains the order of ``a`` and every one-step polynomial is monotone for it."""
    if p.n != a.size:
        raise AlgebraError("preorder size differs from the carrier")
    if (a.order.mask & ~p.mask).any():
        return False
    return _monotone_witness(a.algebra, p.mask) is None


def ordered_quotient(a: OrderedFiniteAlgebra, p: Preorder
                     ) -> Tuple[OrderedFiniteAlgebra, Tuple[int, ...]]:
    """``(A/θ, ≤)`` where ``θ = ⊑ ∩ ⊑⁻¹`` and ``[x] <= [y]`` iff ``x ⊑ y``."""
    if not is_admissible(a, p):
        raise AlgebraError("preorder is not admissible")
    theta = p.equivalence()
    algebra, projection = quotient(a.algebra, theta)
    reps = [block[0] for block in theta.classes()]
    order = p.mask[np.ix_(reps, reps)]
    return OrderedFiniteAlgebra(algebra, Preorder(order)), projection


# ---------------------------------------------------------------------------
# ordered quotients of free algebras


@dataclass(frozen=True, eq=False)
class OrderedQuotient:
    """A quotient ``TX ->> Q`` together with a partial order on ``Q``."""

    quotient: FiniteQuotient
    order: Preorder

    def __post_init__(self):
        OrderedFiniteAlgebra(self.quotient.codomain, self.order)

    @property
    def backend(self) -> FreeBackend:
        return self.quotient.backend

    @property
    def size(self) -> int:
        return self.quotient.size

    @property
    def ordered_codomain(self) -> OrderedFiniteAlgebra:
        return OrderedFiniteAlgebra(self.quotient.codomain, self.order)

    def __call__(self, w: FreeElem) -> int:
        return self.quotient(w)


class DirectedKernel:
    """``{(u, v) | e(u) <= e(v)}`` as a decidable relation on free elements."""

    def __init__(self, e: OrderedQuotient):
        self.e = e

    def __call__(self, u: FreeElem, v: FreeElem) -> bool:
        return self.e.order.leq(self.e(u), self.e(v))

    def restrict(self, elements: Sequence[FreeElem]) -> np.ndarray:
        images = np.array([self.e(w) for w in elements], dtype=np.int64)
        return self.e.order.mask[np.ix_(images, images)]


def directed_kernel(e: OrderedQuotient) -> DirectedKernel:
    return DirectedKernel(e)


@dataclass(frozen=True)
class OrderedFactoring:
    map: Optional[Tuple[int, ...]]
    witness: Optional[Tuple[FreeElem, FreeElem]] = None

    def __bool__(self):
        return self.map is not None


def _ordered_target(h, backend):
    if isinstance(h, OrderedQuotient):
        return h.quotient.codomain, h.order, h.quotient.genmap
    algebra, genmap = h
    if isinstance(algebra, OrderedFiniteAlgebra):
        algebra, order = algebra.algebra, algebra.order
    else:
        order = Preorder.discrete(algebra.size)
    if not isinstance(genmap, Mapping):
        genmap = dict(zip(backend.alphabet, genmap))
    require_variety(backend, algebra)
    return algebra, order, tuple(int(genmap[x]) for x in backend.alphabet)


def ordered_factor_through(h, e: OrderedQuotient) -> OrderedFactoring:
    """Monotone ``g'`` with ``g' ∘ e = ĥ``, or a pair in ``→ker(e) ∖ →ker(ĥ)``."""
    backend = e.backend
    algebra, order, genmap = _ordered_target(h, backend)
    q = e.quotient
    hat = extend(backend, algebra, dict(zip(backend.alphabet, genmap)))
    g = tuple(hat(w) for w in q.section)
    ga = np.array(g)
    if (is_homomorphism(g, q.codomain, algebra)
            and all(g[x] == y for x, y in zip(q.genmap, genmap))
            and not (e.order.mask & ~order.mask[np.ix_(ga, ga)]).any()):
        return OrderedFactoring(g)
    seeds = list(zip(q.genmap, genmap))
    joint, elements = generated_in_product([q.codomain, algebra], seeds)
    index = {x: i for i, x in enumerate(elements)}
    ev = Evaluator(backend, joint, dict(zip(backend.alphabet, (index[s] for s in seeds))))
    sections = compute_sections(backend, ev, joint.size)
    best = None
    for i, (p1, a1) in enumerate(elements):
        for j, (p2, a2) in enumerate(elements):
            if e.order.leq(p1, p2) and not order.leq(a1, a2):
                pair = (sections[i], sections[j])
                k = (sort_key(backend, pair[0]), sort_key(backend, pair[1]))
                if best is None or k < best[0]:
                    best = (k, pair)
    return OrderedFactoring(None, best[1] if best else None)


def syntactic_preorder(a: FiniteAlgebra, accepting: Iterable[int], polarity: str = "up"
                       ) -> Preorder:
    """Coarsest admissible preorder for which ``accepting`` is an up-set
    (``polarity="up"``) or a down-set (``"down"``).

    Greatest fixpoint: start from the two-block preorder and drop pairs that
    some one-step polynomial maps outside the current relation.
    """
    if polarity not in ("up", "down"):
        raise AlgebraError(f"polarity must be 'up' or 'down', not {polarity!r}")
    f = np.zeros(a.size, dtype=bool)
    f[list(accepting)] = True
    if polarity == "up":
        rel = ~f[:, None] | f[None, :]   # x in F implies y in F
    else:
        rel = f[:, None] | ~f[None, :]   # y in F implies x in F
    polys = list(_polynomial_images(a))
    while True:
        new = rel.copy()
        for p in polys:
            # (x, y) survives iff (p(x)_c, p(y)_c) in rel for every context c
            new &= rel[p[:, None, :], p[None, :, :]].all(axis=2)
        if np.array_equal(new, rel):
            return Preorder(rel)
        rel = new


def ordered_syntactic(l: RecognizableLanguage, polarity: str = "up") -> OrderedQuotient:
    """Ordered syntactic quotient: ``[u] <= [v]`` iff every context sending
    ``u`` into ``l`` also sends ``v`` into ``l`` (``polarity="up"``, so ``l``
    is an up-set); ``polarity="down"`` gives the dual order."""
    p = syntactic_preorder(l.recognizer, l.accepting.members, polarity)
    algebra, projection = ordered_quotient(OrderedFiniteAlgebra.discrete(l.recognizer), p)
    q = canonical(quotient_of(l.backend, algebra.algebra, [projection[g] for g in l.genmap]))
    # canonical() renumbers; carry the order across through the sections
    old = [projection[l.evaluator(w)] for w in q.section]
    order = algebra.order.mask[np.ix_(old, old)]
    q = FiniteQuotient(q.backend, q.codomain.relabeled([str(w) for w in q.section]),
                       q.genmap, q.section)
    return OrderedQuotient(q, Preorder(order))


def _sets(order: Preorder, down: bool) -> List[Tuple[int, ...]]:
    n = order.n
    out = []
    for bits in itertools.product((False, True), repeat=n):
        s = np.array(bits, dtype=bool)
        m = order.mask
        # down-set: y in S and x <= y implies x in S
        closed = not (m & (s[None, :] if down else s[:, None])
                      & ~(s[:, None] if down else s[None, :])).any()
        if closed:
            out.append(tuple(np.flatnonzero(s).tolist()))
    return sorted(out, key=lambda t: (len(t), t))


def recognized_lattice(e: OrderedQuotient, down: bool = True, limit: int = 1 << 16
                       ) -> LanguageFamily:
    """Languages ``F ∘ e`` for ``F`` a down-set (or up-set) of the codomain."""
    if e.size > 16:
        raise AlgebraError(f"codomain of size {e.size} has too many subsets to enumerate")
    sets = _sets(e.order, down)
    if len(sets) > limit:
        raise AlgebraError(f"{len(sets)} languages exceed the limit {limit}")
    q = e.quotient
    langs = tuple(RecognizableLanguage(q.backend, q.codomain, q.genmap, s) for s in sets)
    return LanguageFamily(q.backend, langs, "lattice", True)
