"""Exhaustive enumeration of small algebras and of the finite quotients of a
free algebra, each up to isomorphism."""
from __future__ import annotations

import functools
import itertools
from typing import Dict, List, Tuple

import numpy as np

from .algebra import AlgebraError, FiniteAlgebra, Signature, generated_subalgebra
from .free import GROUP, MONOID, SEMIGROUP, FreeBackend, in_variety
from .quotients import FiniteQuotient, canonical, quotient_of


def _associative_tables(n: int, identity: bool) -> List[Tuple[Tuple[int, ...], ...]]:
    """Every associative ``n x n`` table (identity at 0 if requested), by backtracking."""
    T = [[-1] * n for _ in range(n)]
    if identity:
        for x in range(n):
            T[0][x] = T[x][0] = x
    cells = [(i, j) for i in range(n) for j in range(n) if T[i][j] < 0]
    out = []

    def consistent(i, j, v):
        row_i, row_j = T[i], T[j]
        for z in range(n):
            # (i j) z  vs  i (j z)
            jz = row_j[z]
            if jz >= 0:
                left, right = T[v][z], row_i[jz]
                if left >= 0 and right >= 0 and left != right:
                    return False
        for x in range(n):
            # (x i) j  vs  x (i j)
            xi = T[x][i]
            if xi >= 0:
                left, right = T[xi][j], T[x][v]
                if left >= 0 and right >= 0 and left != right:
                    return False
        for x in range(n):
            for y in range(n):
                # (x y) j with x y = i   vs  x (y j)
                if T[x][y] == i:
                    yj = T[y][j]
                    if yj >= 0 and T[x][yj] >= 0 and T[x][yj] != v:
                        return False
                # (i y) z with y z = j   vs  i (y z)
                if T[x][y] == j:
                    iy = row_i[x]
                    if iy >= 0 and T[iy][y] >= 0 and T[iy][y] != v:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            out.append(tuple(tuple(r) for r in T))
            return
        i, j = cells[k]
        for v in range(n):
            T[i][j] = v
            if consistent(i, j, v):
                fill(k + 1)
        T[i][j] = -1

    fill(0)
    return out


def _canonical_table(table, perms) -> Tuple[Tuple[int, ...], ...]:
    best = None
    for p in perms:  # p[new] = old
        inv = [0] * len(p)
        for new, old in enumerate(p):
            inv[old] = new
        t = tuple(tuple(inv[table[p[r]][p[c]]] for c in range(len(p))) for r in range(len(p)))
        if best is None or t < best:
            best = t
    return best


@functools.lru_cache(maxsize=None)
def _tables(n: int, identity: bool) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    if identity:
        perms = [(0,) + p for p in itertools.permutations(range(1, n))]
    else:
        perms = list(itertools.permutations(range(n)))
    classes = {_canonical_table(t, perms) for t in _associative_tables(n, identity)}
    return tuple(sorted(classes))


def enumerate_monoids(n: int) -> List[FiniteAlgebra]:
    """All monoids with ``n`` elements up to isomorphism (identity is element 0)."""
    if n < 1:
        return []
    return [FiniteAlgebra(MONOID, n, {"e": 0, "mul": np.array(t)}) for t in _tables(n, True)]


def enumerate_semigroups(n: int) -> List[FiniteAlgebra]:
    if n < 1:
        return []
    return [FiniteAlgebra(SEMIGROUP, n, {"mul": np.array(t)}) for t in _tables(n, False)]


def enumerate_groups(n: int) -> List[FiniteAlgebra]:
    out = []
    for m in enumerate_monoids(n):
        mul = m.tables["mul"]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if mul[x, y] == 0 and mul[y, x] == 0]
            if not ys:
                break
            inv.append(ys[0])
        else:
            out.append(FiniteAlgebra(GROUP, n, {"e": 0, "mul": mul, "inv": np.array(inv)}))
    return out


def _actions(acting: FiniteAlgebra, n: int) -> List[FiniteAlgebra]:
    """All actions of the monoid ``acting`` on ``{0..n-1}`` (labelled, not deduplicated)."""
    sig = Signature(tuple((f"act_{m}", 1) for m in range(acting.size)))
    out = []
    for funcs in itertools.product(itertools.product(range(n), repeat=n), repeat=acting.size):
        a = FiniteAlgebra(sig, n, {f"act_{m}": np.array(f) for m, f in enumerate(funcs)})
        out.append(a)
    return out


def algebras_for(backend: FreeBackend, n: int) -> List[FiniteAlgebra]:
    """Candidate codomains of size ``n`` in the backend's variety."""
    kind = backend.kind
    if kind == "semigroup":
        cands = enumerate_semigroups(n)
    elif kind == "group":
        cands = enumerate_groups(n)
    elif kind == "maction":
        if (n ** n) ** backend.acting.size > 100_000:
            raise AlgebraError(f"too many candidate actions on {n} elements")
        cands = _actions(backend.acting, n)
    else:
        cands = enumerate_monoids(n)
    return [a for a in cands if in_variety(backend, a)]


def enumerate_quotients(backend: FreeBackend, max_size: int) -> List[FiniteQuotient]:
    """Every quotient of ``TX`` with at most ``max_size`` elements, one per kernel.

    Ordered by codomain size, then by canonical key.
    """
    found: Dict[object, FiniteQuotient] = {}
    letters = len(backend.alphabet)
    for n in range(1, max_size + 1):
        batch = {}
        for a in algebras_for(backend, n):
            for images in itertools.product(range(n), repeat=letters):
                if len(generated_subalgebra(a, images)[1]) != n:
                    continue
                q = canonical(quotient_of(backend, a, images))
                if q.key not in found and q.key not in batch:
                    batch[q.key] = q
        for k in sorted(batch, key=repr):
            found[k] = batch[k]
    return list(found.values())
