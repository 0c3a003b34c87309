"""Finite algebras given by operation tables, and their congruences.

Carriers are always ``{0, ..., n-1}``; labels are only used for printing.
Operation tables are read-only numpy arrays of shape ``(n,) * arity``
(a nullary operation is a 0-d array).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np


class AlgebraError(ValueError):
    """Raised for malformed algebras, terms or incompatible arguments."""


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class Signature:
    """An ordered list of ``(name, arity)`` pairs."""

    symbols: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        names = [name for name, _ in symbols]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate symbol names in {names}")
        for name, arity in symbols:
            if arity < 0:
                raise AlgebraError(f"symbol {name!r} has negative arity")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def of(cls, *pairs: Tuple[str, int]) -> "Signature":
        return cls(tuple(pairs))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        for sym, arity in self.symbols:
            if sym == name:
                return arity
        raise AlgebraError(f"unknown symbol {name!r}")

    def __contains__(self, name) -> bool:
        return any(sym == name for sym, _ in self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def with_arity(self, arity: int) -> Tuple[str, ...]:
        return tuple(name for name, a in self.symbols if a == arity)

    def __str__(self):
        return " ".join(f"{name}/{arity}" for name, arity in self.symbols)


# ---------------------------------------------------------------------------
# finite algebras


@dataclass(frozen=True)
class Defect:
    symbol: str
    kind: str  # "missing", "shape", "range", "unknown"
    where: Optional[Tuple[int, ...]] = None
    detail: str = ""

    def __str__(self):
        loc = f" at {self.where}" if self.where is not None else ""
        return f"{self.symbol}: {self.kind}{loc}{': ' + self.detail if self.detail else ''}"


def _freeze(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class FiniteAlgebra:
    """A finite algebra over a :class:`Signature`.

    ``tables`` maps each symbol to its operation table. Construction checks
    the table invariants unless ``check=False`` (used to inspect broken
    input with :func:`validate_algebra`).
    """

    __slots__ = ("signature", "size", "tables", "labels", "_key", "_lists")

    def __init__(self, signature: Signature, size: int, tables: Mapping[str, object],
                 labels: Optional[Sequence[str]] = None, check: bool = True):
        self.signature = signature
        self.size = int(size)
        self.tables = {name: _freeze(tab) for name, tab in tables.items()}
        self.labels = tuple(str(s) for s in labels) if labels is not None else None
        self._key = None
        self._lists = None
        if check:
            defects = validate_algebra(self)
            if defects:
                raise AlgebraError("; ".join(str(d) for d in defects))

    # -- access ---------------------------------------------------------
    def table(self, name: str) -> np.ndarray:
        return self.tables[name]

    def op(self, name: str, *args: int) -> int:
        tab = self.tables[name]
        if tab.ndim == 0:
            return int(tab)
        return int(tab[tuple(args)])

    def constant(self, name: str) -> int:
        return int(self.tables[name])

    def constants(self) -> List[int]:
        return [int(self.tables[name]) for name in self.signature.with_arity(0)]

    def lists(self) -> Dict[str, object]:
        """Tables as nested python lists (fast scalar lookups in tight loops)."""
        if self._lists is None:
            self._lists = {name: tab.tolist() for name, tab in self.tables.items()}
        return self._lists

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    @property
    def elements(self) -> range:
        return range(self.size)

    def binary_symbol(self) -> str:
        binaries = self.signature.with_arity(2)
        if len(binaries) != 1:
            raise AlgebraError(f"expected exactly one binary symbol, got {binaries}")
        return binaries[0]

    def relabeled(self, labels: Optional[Sequence[str]]) -> "FiniteAlgebra":
        return FiniteAlgebra(self.signature, self.size, self.tables, labels, check=False)

    # -- identity -------------------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (self.signature, self.size,
                         tuple((name, self.tables[name].shape, self.tables[name].tobytes())
                               for name in self.signature.names if name in self.tables))
        return self._key

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FiniteAlgebra(size={self.size}, signature='{self.signature}')"


def validate_algebra(a: FiniteAlgebra) -> List[Defect]:
    """List every violated table invariant of ``a`` (empty when well formed)."""
    defects: List[Defect] = []
    if a.size < 1:
        defects.append(Defect("*", "size", detail=f"carrier size {a.size} < 1"))
        return defects
    for name in a.tables:
        if name not in a.signature:
            defects.append(Defect(name, "unknown", detail="table for undeclared symbol"))
    for name, arity in a.signature:
        tab = a.tables.get(name)
        if tab is None:
            defects.append(Defect(name, "missing", detail="no table given"))
            continue
        if tab.shape != (a.size,) * arity:
            defects.append(Defect(name, "shape",
                                  detail=f"expected shape {(a.size,) * arity}, got {tab.shape}"))
            continue
        bad = np.argwhere((tab < 0) | (tab >= a.size))
        for idx in bad:
            where = tuple(int(i) for i in idx)
            defects.append(Defect(name, "range", where,
                                  f"entry {int(tab[where])} outside 0..{a.size - 1}"))
    return defects


# ---------------------------------------------------------------------------
# element subsets


@dataclass(frozen=True)
class ElementSubset:
    """A subset of the carrier ``{0..n-1}``."""

    size: int
    members: frozenset

    def __post_init__(self):
        members = frozenset(int(x) for x in self.members)
        if any(x < 0 or x >= self.size for x in members):
            raise AlgebraError(f"subset {sorted(members)} not within 0..{self.size - 1}")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_mask(cls, mask) -> "ElementSubset":
        mask = np.asarray(mask, dtype=bool)
        return cls(len(mask), frozenset(np.flatnonzero(mask).tolist()))

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.size, dtype=bool)
        m[list(self.members)] = True
        return m

    def complement(self) -> "ElementSubset":
        return ElementSubset(self.size, frozenset(range(self.size)) - self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    symbol: str
    args: Tuple["Term", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        if not self.args:
            return self.symbol
        if self.symbol == "mul" and len(self.args) == 2:
            # infix, parenthesizing nested products
            parts = [f"({t})" if isinstance(t, App) and t.symbol == "mul" and len(t.args) == 2
                     else str(t) for t in self.args]
            return "*".join(parts)
        return f"{self.symbol}({', '.join(str(t) for t in self.args)})"


Term = Union[Var, App]


def term_variables(t: Term) -> List[str]:
    """Variables of ``t`` in order of first occurrence."""
    seen: List[str] = []

    def walk(u):
        if isinstance(u, Var):
            if u.name not in seen:
                seen.append(u.name)
        else:
            for s in u.args:
                walk(s)

    walk(t)
    return seen


def check_term(t: Term, signature: Signature) -> None:
    if isinstance(t, Var):
        return
    if t.symbol not in signature:
        raise AlgebraError(f"symbol {t.symbol!r} not in signature {signature}")
    if signature.arity(t.symbol) != len(t.args):
        raise AlgebraError(f"symbol {t.symbol!r} applied to {len(t.args)} arguments, "
                           f"arity is {signature.arity(t.symbol)}")
    for s in t.args:
        check_term(s, signature)


def eval_term(a: FiniteAlgebra, t: Term, assignment: Mapping[str, int]) -> int:
    check_term(t, a.signature)

    def ev(u):
        if isinstance(u, Var):
            if u.name not in assignment:
                raise AlgebraError(f"variable {u.name!r} is unassigned")
            return int(assignment[u.name])
        return a.op(u.symbol, *(ev(s) for s in u.args))

    return ev(t)


def _eval_grid(a: FiniteAlgebra, t: Term, grids: Mapping[str, np.ndarray]) -> np.ndarray:
    # every assignment at once: each variable is a broadcast index array
    if isinstance(t, Var):
        return grids[t.name]
    tab = a.tables[t.symbol]
    if not t.args:
        return tab
    return tab[tuple(_eval_grid(a, s, grids) for s in t.args)]


def equation_witness(a: FiniteAlgebra, eqs: Sequence[Tuple[Term, Term]],
                     variables: Optional[Sequence[str]] = None
                     ) -> Optional[Tuple[int, Dict[str, int]]]:
    """First failing ``(equation index, assignment)``, or ``None`` if all hold."""
    for i, (lhs, rhs) in enumerate(eqs):
        check_term(lhs, a.signature)
        check_term(rhs, a.signature)
        names = list(variables) if variables is not None else []
        for v in term_variables(lhs) + term_variables(rhs):
            if v not in names:
                names.append(v)
        if a.size ** len(names) > 50_000_000:
            raise AlgebraError(f"{a.size}^{len(names)} assignments is too many to check")
        shape = (a.size,) * len(names)
        grids = {}
        for k, v in enumerate(names):
            view = [1] * len(names)
            view[k] = a.size
            grids[v] = np.arange(a.size).reshape(view) if names else np.int64(0)
        left = np.broadcast_to(_eval_grid(a, lhs, grids), shape)
        right = np.broadcast_to(_eval_grid(a, rhs, grids), shape)
        bad = np.argwhere(left != right)
        if len(bad):
            idx = bad[0]
            return i, {v: int(idx[k]) for k, v in enumerate(names)}
    return None


def check_equations(a: FiniteAlgebra, eqs: Sequence[Tuple[Term, Term]],
                    variables: Optional[Sequence[str]] = None) -> bool:
    """True iff every equation holds under every assignment of its variables."""
    return equation_witness(a, eqs, variables) is None


# ---------------------------------------------------------------------------
# congruences


class Congruence:
    """A partition of ``{0..n-1}`` stored as canonical class ids.

    Class ids are numbered by first occurrence, so two congruences are equal
    exactly when they are the same partition.
    """

    __slots__ = ("class_id", "k")

    def __init__(self, class_id: Iterable[int]):
        relabel: Dict[int, int] = {}
        ids = []
        for c in class_id:
            c = int(c)
            if c not in relabel:
                relabel[c] = len(relabel)
            ids.append(relabel[c])
        self.class_id = tuple(ids)
        self.k = len(relabel)

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(range(n))

    @classmethod
    def total(cls, n: int) -> "Congruence":
        return cls([0] * n)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Congruence":
        ids = [-1] * n
        for i, block in enumerate(classes):
            for x in block:
                ids[x] = i
        if -1 in ids:
            raise AlgebraError("classes do not cover the carrier")
        return cls(ids)

    @property
    def n(self) -> int:
        return len(self.class_id)

    def classes(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.k)]
        for x, c in enumerate(self.class_id):
            out[c].append(x)
        return out

    def related(self, x: int, y: int) -> bool:
        return self.class_id[x] == self.class_id[y]

    def refines(self, other: "Congruence") -> bool:
        """True if every class of ``self`` lies inside a class of ``other``."""
        image: Dict[int, int] = {}
        for c, d in zip(self.class_id, other.class_id):
            if image.setdefault(c, d) != d:
                return False
        return True

    def saturates(self, subset: Iterable[int]) -> bool:
        subset = set(subset)
        return all((x in subset) == (self.class_id[x] in {self.class_id[y] for y in subset})
                   for x in range(self.n))

    def array(self) -> np.ndarray:
        return np.array(self.class_id, dtype=np.int64)

    def is_compatible(self, a: FiniteAlgebra) -> bool:
        return _incompatibility(a, self) is None

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.class_id == other.class_id

    def __hash__(self):
        return hash(self.class_id)

    def __repr__(self):
        return f"Congruence({self.classes()})"


def _incompatibility(a: FiniteAlgebra, c: Congruence):
    if c.n != a.size:
        raise AlgebraError(f"partition of {c.n} elements on an algebra of size {a.size}")
    cls = c.array()
    reps = np.array([block[0] for block in c.classes()])
    rep_of = reps[cls]
    for name, arity in a.signature:
        if arity == 0:
            continue
        mapped = cls[a.tables[name]]
        for pos in range(arity):
            moved = np.moveaxis(mapped, pos, 0)
            bad = np.flatnonzero((moved != moved[rep_of]).reshape(a.size, -1).any(axis=1))
            if len(bad):
                x = int(bad[0])
                return name, pos, x, int(rep_of[x])
    return None


def _polynomial_images(a: FiniteAlgebra):
    """Yield, per symbol and argument position, an ``(n, contexts)`` array whose
    row ``x`` lists ``g(c_1, .., x, .., c_k)`` over all contexts ``c``."""
    for name, arity in a.signature:
        if arity == 0:
            continue
        tab = a.tables[name]
        for pos in range(arity):
            yield np.moveaxis(tab, pos, 0).reshape(a.size, -1)


def congruence_closure(a: FiniteAlgebra, pairs: Iterable[Tuple[int, int]]) -> Congruence:
    """Least congruence of ``a`` containing ``pairs``."""
    parent = list(range(a.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    polys = [p.tolist() for p in _polynomial_images(a)]
    work = [(int(x), int(y)) for x, y in pairs]
    for x, y in work:
        if not (0 <= x < a.size and 0 <= y < a.size):
            raise AlgebraError(f"pair {(x, y)} out of range")
    work.reverse()
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        for poly in polys:
            for u, v in zip(poly[x], poly[y]):
                if u != v:
                    work.append((u, v))
    return Congruence(find(x) for x in range(a.size))


def coarsest_congruence_saturating(a: FiniteAlgebra, f: Union[ElementSubset, Iterable[int]]
                                   ) -> Congruence:
    """Largest congruence of ``a`` of which ``f`` is a union of classes.

    Moore-style refinement: start from ``{f, complement}`` and split by the
    classes reached under every one-step polynomial until stable.
    """
    members = f.members if isinstance(f, ElementSubset) else set(f)
    labels = np.zeros(a.size, dtype=np.int64)
    labels[list(members)] = 1
    _, labels = np.unique(labels, return_inverse=True)
    polys = list(_polynomial_images(a))
    count = len(np.unique(labels))
    while True:
        columns = [labels[:, None]] + [labels[p] for p in polys]
        rows = np.concatenate(columns, axis=1)
        _, new = np.unique(rows, axis=0, return_inverse=True)
        new = new.reshape(-1)
        new_count = int(new.max()) + 1
        labels = new
        if new_count == count:
            break
        count = new_count
    return Congruence(labels.tolist())


def quotient(a: FiniteAlgebra, c: Congruence) -> Tuple[FiniteAlgebra, Tuple[int, ...]]:
    """The quotient algebra ``a / c`` and the projection map."""
    bad = _incompatibility(a, c)
    if bad is not None:
        name, pos, x, y = bad
        raise AlgebraError(f"partition is not compatible with {name!r} "
                           f"(argument {pos + 1}: elements {y} and {x})")
    cls = c.array()
    reps = np.array([block[0] for block in c.classes()], dtype=np.int64)
    tables = {}
    for name, arity in a.signature:
        tab = a.tables[name]
        if arity == 0:
            tables[name] = cls[int(tab)]
        else:
            tables[name] = cls[tab[np.ix_(*([reps] * arity))]]
    labels = None
    if a.labels is not None:
        labels = ["[" + a.labels[int(r)] + "]" for r in reps]
    return FiniteAlgebra(a.signature, c.k, tables, labels), c.class_id


# ---------------------------------------------------------------------------
# products and subalgebras


def _require_same_signature(algebras: Sequence[FiniteAlgebra]) -> Signature:
    if not algebras:
        raise AlgebraError("need at least one algebra")
    sig = algebras[0].signature
    for b in algebras[1:]:
        if b.signature != sig:
            raise AlgebraError(f"signature mismatch: {sig} vs {b.signature}")
    return sig


def product(algebras: Sequence[FiniteAlgebra]) -> Tuple[FiniteAlgebra, List[Tuple[int, ...]]]:
    """Direct product with projections; elements are ordered lexicographically
    by their coordinate tuples (first factor most significant)."""
    sig = _require_same_signature(algebras)
    sizes = tuple(b.size for b in algebras)
    total = int(np.prod(sizes))
    for name, arity in sig:
        if total ** arity > 20_000_000:
            raise AlgebraError(f"product table for {name!r} would have {total}^{arity} entries")
    coords = np.unravel_index(np.arange(total), sizes)
    tables = {}
    for name, arity in sig:
        parts = []
        for i, b in enumerate(algebras):
            tab = b.tables[name]
            if arity == 0:
                parts.append(int(tab))
            else:
                parts.append(tab[np.ix_(*([coords[i]] * arity))])
        if arity == 0:
            tables[name] = int(np.ravel_multi_index(tuple(parts), sizes))
        else:
            tables[name] = np.ravel_multi_index(tuple(parts), sizes)
    labels = None
    if all(b.labels is not None for b in algebras):
        labels = ["(" + ",".join(algebras[i].labels[coords[i][x]] for i in range(len(algebras))) + ")"
                  for x in range(total)]
    projections = [tuple(int(v) for v in coords[i]) for i in range(len(algebras))]
    return FiniteAlgebra(sig, total, tables, labels), projections


def _closure(seeds: Iterable, operations: Sequence[Tuple[int, Callable]], limit: int) -> List:
    """Semi-naive closure of ``seeds`` under ``operations`` (arity, function).

    Returns elements in discovery order. Raises if more than ``limit`` appear.
    """
    found: Dict = {}
    order: List = []

    def add(x, frontier):
        if x not in found:
            found[x] = len(order)
            order.append(x)
            frontier.append(x)
            if len(order) > limit:
                raise AlgebraError(f"closure exceeded {limit} elements")

    frontier: List = []
    for arity, fn in operations:
        if arity == 0:
            add(fn(), frontier)
    for s in seeds:
        add(s, frontier)
    old_count = 0
    while frontier:
        new = frontier
        frontier = []
        old = order[:old_count]
        current = order[:old_count + len(new)]
        old_count += len(new)
        for arity, fn in operations:
            if arity == 0:
                continue
            # tuples with at least one new coordinate: old^j x new x all^(k-j-1)
            for j in range(arity):
                for args in itertools.product(*([old] * j + [new] + [current] * (arity - j - 1))):
                    add(fn(*args), frontier)
    return order


def generated_in_product(algebras: Sequence[FiniteAlgebra], seeds: Iterable[Tuple[int, ...]],
                         limit: int = 1_000_000) -> Tuple[FiniteAlgebra, List[Tuple[int, ...]]]:
    """Subalgebra of the product of ``algebras`` generated by ``seeds``, without
    building the full product. Elements are sorted coordinate tuples."""
    sig = _require_same_signature(algebras)
    lists = [b.lists() for b in algebras]
    m = len(algebras)
    operations = []
    for name, arity in sig:
        tabs = [lst[name] for lst in lists]
        if arity == 0:
            operations.append((0, lambda tabs=tabs: tuple(tabs)))
        elif arity == 1:
            operations.append((1, lambda x, tabs=tabs: tuple(tabs[i][x[i]] for i in range(m))))
        elif arity == 2:
            operations.append((2, lambda x, y, tabs=tabs: tuple(tabs[i][x[i]][y[i]] for i in range(m))))
        else:
            def fn(*xs, tabs=tabs):
                out = []
                for i in range(m):
                    v = tabs[i]
                    for x in xs:
                        v = v[x[i]]
                    out.append(v)
                return tuple(out)
            operations.append((arity, fn))
    elements = sorted(_closure((tuple(int(v) for v in s) for s in seeds), operations, limit))
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    tables = {}
    for (name, arity), (_, fn) in zip(sig, operations):
        if arity == 0:
            tables[name] = index[fn()]
        else:
            tab = np.empty((n,) * arity, dtype=np.int64)
            for idx in itertools.product(range(n), repeat=arity):
                tab[idx] = index[fn(*(elements[i] for i in idx))]
            tables[name] = tab
    labels = None
    if all(b.labels is not None for b in algebras):
        labels = ["(" + ",".join(algebras[i].labels[x[i]] for i in range(m)) + ")" for x in elements]
    return FiniteAlgebra(sig, n, tables, labels), elements


def generated_subalgebra(a: FiniteAlgebra, seeds: Union[ElementSubset, Iterable[int]]
                         ) -> Tuple[FiniteAlgebra, Tuple[int, ...]]:
    """Least subalgebra containing ``seeds`` and every constant.

    Returns the subalgebra (elements renumbered in increasing order) and the
    inclusion map into ``a``.
    """
    members = seeds.members if isinstance(seeds, ElementSubset) else seeds
    current = np.zeros(a.size, dtype=bool)
    current[[int(s) for s in members]] = True
    for c in a.constants():
        current[c] = True
    while True:
        idx = np.flatnonzero(current)
        grown = current.copy()
        for name, arity in a.signature:
            if arity == 0 or len(idx) == 0:
                continue
            grown[np.unique(a.tables[name][np.ix_(*([idx] * arity))])] = True
        if (grown == current).all():
            break
        current = grown
    idx = np.flatnonzero(current)
    renumber = np.full(a.size, -1, dtype=np.int64)
    renumber[idx] = np.arange(len(idx))
    if len(idx) == 0:
        raise AlgebraError("empty subalgebra (no seeds and no constants)")
    tables = {}
    for name, arity in a.signature:
        tab = a.tables[name]
        tables[name] = renumber[int(tab)] if arity == 0 else renumber[tab[np.ix_(*([idx] * arity))]]
    labels = [a.labels[i] for i in idx] if a.labels is not None else None
    return FiniteAlgebra(a.signature, len(idx), tables, labels), tuple(int(i) for i in idx)


def generating_set(a: FiniteAlgebra) -> List[int]:
    """A small generating set, chosen greedily in element order."""
    gens: List[int] = []
    covered = set(generated_subalgebra(a, [])[1]) if a.constants() else set()
    for x in range(a.size):
        if x not in covered:
            gens.append(x)
            covered = set(generated_subalgebra(a, gens)[1])
        if len(covered) == a.size:
            break
    return gens


# ---------------------------------------------------------------------------
# homomorphisms


def is_homomorphism(h: Sequence[int], a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """True iff ``h`` commutes with every operation of ``a`` and ``b``."""
    if a.signature != b.signature:
        raise AlgebraError(f"signature mismatch: {a.signature} vs {b.signature}")
    h = np.asarray(h, dtype=np.int64)
    if h.shape != (a.size,) or (h < 0).any() or (h >= b.size).any():
        return False
    for name, arity in a.signature:
        ta, tb = a.tables[name], b.tables[name]
        if arity == 0:
            if h[int(ta)] != int(tb):
                return False
        elif not np.array_equal(h[ta], tb[np.ix_(*([h] * arity))]):
            return False
    return True


def extend_map(a: FiniteAlgebra, b: FiniteAlgebra, gens: Sequence[int], images: Sequence[int]
               ) -> Optional[Tuple[int, ...]]:
    """The homomorphism ``a -> b`` sending ``gens`` to ``images``, if one exists.

    ``gens`` must generate ``a``. Returns ``None`` when the assignment does not
    extend (some element would need two images).
    """
    sig = _require_same_signature([a, b])
    la, lb = a.lists(), b.lists()
    image: Dict[int, int] = {}
    order: List[int] = []

    class _Clash(Exception):
        pass

    def put(x, y):
        old = image.get(x)
        if old is None:
            image[x] = y
            order.append(x)
            return True
        if old != y:
            raise _Clash
        return False

    try:
        for name in sig.with_arity(0):
            put(la[name], lb[name])
        for g, y in zip(gens, images):
            put(int(g), int(y))
        done = 0
        while done < len(order):
            # apply every operation to tuples involving at least one new element
            new = order[done:]
            old = order[:done]
            done = len(order)
            current = order[:done]
            for name, arity in sig:
                if arity == 0:
                    continue
                ta, tb = la[name], lb[name]
                for j in range(arity):
                    for args in itertools.product(*([old] * j + [new] + [current] * (arity - j - 1))):
                        va, vb = ta, tb
                        for x in args:
                            va = va[x]
                            vb = vb[image[x]]
                        put(va, vb)
    except _Clash:
        return None
    if len(image) != a.size:
        raise AlgebraError("generators do not generate the algebra")
    return tuple(image[x] for x in range(a.size))


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> Optional[Tuple[int, ...]]:
    """Some isomorphism ``a -> b`` or ``None``; backtracks over generator images."""
    if a.signature != b.signature:
        raise AlgebraError(f"signature mismatch: {a.signature} vs {b.signature}")
    if a.size > 64 or b.size > 64:
        raise AlgebraError("find_isomorphism is limited to algebras with at most 64 elements")
    if a.size != b.size:
        return None
    gens = generating_set(a)
    for images in itertools.permutations(range(b.size), len(gens)):
        h = extend_map(a, b, gens, images)
        if h is not None and len(set(h)) == b.size:
            return h
    return None


def permute(a: FiniteAlgebra, order: Sequence[int]) -> FiniteAlgebra:
    """Renumber ``a`` so that new element ``i`` is old element ``order[i]``."""
    order = np.asarray(order, dtype=np.int64)
    if sorted(order.tolist()) != list(range(a.size)):
        raise AlgebraError("order is not a permutation of the carrier")
    inverse = np.empty_like(order)
    inverse[order] = np.arange(a.size)
    tables = {}
    for name, arity in a.signature:
        tab = a.tables[name]
        tables[name] = inverse[int(tab)] if arity == 0 else inverse[tab[np.ix_(*([order] * arity))]]
    labels = [a.labels[i] for i in order] if a.labels is not None else None
    return FiniteAlgebra(a.signature, a.size, tables, labels)
