"""Extended regular expressions compiled through Brzozowski derivatives.

Grammar (whitespace is ignored)::

    alt  := and ('|' and)*
    and  := cat ('&' cat)*
    cat  := unary unary*
    unary:= '~' unary | atom '*'*
    atom := letter | '()' | '[]' | '(' alt ')'

``()`` is the empty word, ``[]`` the empty language and ``~`` complement.
Expressions are kept in a normal form (flattened, sorted and deduplicated
``|`` and ``&``; unit and zero laws for concatenation) so that the set of
derivatives is finite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .algebra import AlgebraError


class RegexError(AlgebraError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class Regex:
    __slots__ = ()

    def key(self) -> str:
        return repr(self)


@dataclass(frozen=True, repr=False)
class Empty(Regex):
    def __repr__(self):
        return "[]"


@dataclass(frozen=True, repr=False)
class Eps(Regex):
    def __repr__(self):
        return "()"


@dataclass(frozen=True, repr=False)
class Sym(Regex):
    letter: str

    def __repr__(self):
        return self.letter


@dataclass(frozen=True, repr=False)
class Cat(Regex):
    items: Tuple[Regex, ...]

    def __repr__(self):
        return "(" + "".join(repr(r) for r in self.items) + ")"


@dataclass(frozen=True, repr=False)
class Alt(Regex):
    items: Tuple[Regex, ...]

    def __repr__(self):
        return "(" + "|".join(repr(r) for r in self.items) + ")"


@dataclass(frozen=True, repr=False)
class And(Regex):
    items: Tuple[Regex, ...]

    def __repr__(self):
        return "(" + "&".join(repr(r) for r in self.items) + ")"


@dataclass(frozen=True, repr=False)
class Not(Regex):
    body: Regex

    def __repr__(self):
        return "~" + repr(self.body)


@dataclass(frozen=True, repr=False)
class Star(Regex):
    body: Regex

    def __repr__(self):
        return repr(self.body) + "*"


EMPTY, EPS = Empty(), Eps()
FULL = Not(EMPTY)


def cat(*items: Regex) -> Regex:
    flat: List[Regex] = []
    for r in items:
        if isinstance(r, Empty):
            return EMPTY
        if isinstance(r, Eps):
            continue
        flat.extend(r.items if isinstance(r, Cat) else [r])
    if not flat:
        return EPS
    return flat[0] if len(flat) == 1 else Cat(tuple(flat))


def alt(*items: Regex) -> Regex:
    found: Dict[str, Regex] = {}
    for r in items:
        for s in (r.items if isinstance(r, Alt) else [r]):
            if isinstance(s, Empty):
                continue
            if s == FULL:
                return FULL
            found[s.key()] = s
    if not found:
        return EMPTY
    rs = tuple(found[k] for k in sorted(found))
    return rs[0] if len(rs) == 1 else Alt(rs)


def conj(*items: Regex) -> Regex:
    found: Dict[str, Regex] = {}
    for r in items:
        for s in (r.items if isinstance(r, And) else [r]):
            if isinstance(s, Empty):
                return EMPTY
            if s == FULL:
                continue
            found[s.key()] = s
    if not found:
        return FULL
    rs = tuple(found[k] for k in sorted(found))
    return rs[0] if len(rs) == 1 else And(rs)


def neg(r: Regex) -> Regex:
    return r.body if isinstance(r, Not) else Not(r)


def star(r: Regex) -> Regex:
    if isinstance(r, (Empty, Eps)):
        return EPS
    if isinstance(r, Star):
        return r
    return Star(r)


def nullable(r: Regex) -> bool:
    if isinstance(r, (Eps, Star)):
        return True
    if isinstance(r, (Empty, Sym)):
        return False
    if isinstance(r, Cat):
        return all(nullable(s) for s in r.items)
    if isinstance(r, Alt):
        return any(nullable(s) for s in r.items)
    if isinstance(r, And):
        return all(nullable(s) for s in r.items)
    return not nullable(r.body)


def derivative(r: Regex, a: str) -> Regex:
    """Brzozowski derivative: the words ``w`` with ``a w`` in ``r``."""
    if isinstance(r, (Empty, Eps)):
        return EMPTY
    if isinstance(r, Sym):
        return EPS if r.letter == a else EMPTY
    if isinstance(r, Cat):
        head, rest = r.items[0], cat(*r.items[1:])
        d = cat(derivative(head, a), rest)
        return alt(d, derivative(rest, a)) if nullable(head) else d
    if isinstance(r, Alt):
        return alt(*(derivative(s, a) for s in r.items))
    if isinstance(r, And):
        return conj(*(derivative(s, a) for s in r.items))
    if isinstance(r, Not):
        return neg(derivative(r.body, a))
    return cat(derivative(r.body, a), r)


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str, alphabet: Sequence[str]):
        self.tokens = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.pos = 0
        self.alphabet = set(alphabet)
        self.end = len(text)

    def peek(self):
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else None

    def where(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else self.end

    def take(self, ch):
        if self.peek() != ch:
            found = self.peek()
            raise RegexError(f"expected {ch!r}, found {found!r}" if found else f"expected {ch!r}",
                             self.where())
        self.pos += 1

    def parse(self) -> Regex:
        r = self.alt()
        if self.peek() is not None:
            raise RegexError(f"unexpected {self.peek()!r}", self.where())
        return r

    def alt(self):
        items = [self.conj()]
        while self.peek() == "|":
            self.pos += 1
            items.append(self.conj())
        return alt(*items)

    def conj(self):
        items = [self.cat()]
        while self.peek() == "&":
            self.pos += 1
            items.append(self.cat())
        return conj(*items)

    def cat(self):
        items = [self.unary()]
        while self.peek() is not None and self.peek() not in "|&)":
            items.append(self.unary())
        return cat(*items)

    def unary(self):
        if self.peek() == "~":
            self.pos += 1
            return neg(self.unary())
        r = self.atom()
        while self.peek() == "*":
            self.pos += 1
            r = star(r)
        return r

    def atom(self):
        ch = self.peek()
        if ch is None:
            raise RegexError("unexpected end of pattern", self.where())
        if ch == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return EPS
            r = self.alt()
            self.take(")")
            return r
        if ch == "[":
            self.pos += 1
            self.take("]")
            return EMPTY
        if ch in self.alphabet:
            self.pos += 1
            return Sym(ch)
        raise RegexError(f"unexpected {ch!r}", self.where())


def parse_regex(pattern: str, alphabet: Sequence[str]) -> Regex:
    for x in alphabet:
        if len(x) != 1 or x in "()[]|&~* ":
            raise AlgebraError(f"regex letters must be single ordinary characters, got {x!r}")
    return _Parser(pattern, alphabet).parse()


# ---------------------------------------------------------------------------
# automata


@dataclass(frozen=True)
class DFA:
    alphabet: Tuple[str, ...]
    delta: np.ndarray  # (states, letters)
    initial: int
    final: frozenset

    @property
    def states(self) -> int:
        return self.delta.shape[0]

    def accepts(self, word: Sequence[str]) -> bool:
        q = self.initial
        for x in word:
            q = int(self.delta[q, self.alphabet.index(x)])
        return q in self.final


def to_dfa(r: Regex, alphabet: Sequence[str], max_states: int = 10_000) -> DFA:
    alphabet = tuple(alphabet)
    index = {r.key(): 0}
    states = [r]
    rows: List[List[int]] = []
    i = 0
    while i < len(states):
        row = []
        for a in alphabet:
            d = derivative(states[i], a)
            k = d.key()
            if k not in index:
                index[k] = len(states)
                states.append(d)
                if len(states) > max_states:
                    raise AlgebraError(f"automaton exceeded {max_states} states")
            row.append(index[k])
        rows.append(row)
        i += 1
    final = frozenset(i for i, s in enumerate(states) if nullable(s))
    delta = np.array(rows, dtype=np.int64).reshape(len(states), len(alphabet))
    return DFA(alphabet, delta, 0, final)


def minimize(dfa: DFA) -> DFA:
    """Moore refinement of a (fully reachable) DFA."""
    labels = np.array([q in dfa.final for q in range(dfa.states)], dtype=np.int64)
    count = len(np.unique(labels))
    while True:
        rows = np.concatenate([labels[:, None], labels[dfa.delta]], axis=1)
        _, labels = np.unique(rows, axis=0, return_inverse=True)
        labels = labels.reshape(-1)
        if labels.max() + 1 == count:
            break
        count = int(labels.max()) + 1
    # renumber so that the initial state's block comes first, in BFS order
    order: Dict[int, int] = {}
    queue = [int(labels[dfa.initial])]
    rep = {}
    for q in range(dfa.states):
        rep.setdefault(int(labels[q]), q)
    order[queue[0]] = 0
    while queue:
        block = queue.pop(0)
        for j in range(len(dfa.alphabet)):
            nxt = int(labels[dfa.delta[rep[block], j]])
            if nxt not in order:
                order[nxt] = len(order)
                queue.append(nxt)
    delta = np.zeros((len(order), len(dfa.alphabet)), dtype=np.int64)
    for block, i in order.items():
        for j in range(len(dfa.alphabet)):
            delta[i, j] = order[int(labels[dfa.delta[rep[block], j]])]
    final = frozenset(order[int(labels[q])] for q in dfa.final if int(labels[q]) in order)
    return DFA(dfa.alphabet, delta, 0, final)


def transition_monoid(dfa: DFA, max_size: int = 10_000):
    """Transformations induced by words, as ``(elements, mul table, letter images)``.

    Element 0 is the identity; ``(f * g)(q) = g(f(q))`` (read ``f`` first).
    """
    identity = tuple(range(dfa.states))
    letters = [tuple(int(v) for v in dfa.delta[:, j]) for j in range(len(dfa.alphabet))]
    index = {identity: 0}
    elements = [identity]
    i = 0
    while i < len(elements):
        f = elements[i]
        for g in letters:
            h = tuple(g[q] for q in f)
            if h not in index:
                index[h] = len(elements)
                elements.append(h)
                if len(elements) > max_size:
                    raise AlgebraError(f"transition monoid exceeded {max_size} elements")
        i += 1
    E = np.array(elements, dtype=np.int64)
    n = len(elements)
    composed = E[np.arange(n)[None, :, None], E[:, None, :]]  # composed[f, g, q] = g[f[q]]
    keys = {e.tobytes(): k for k, e in enumerate(E)}
    table = np.array([[keys[composed[f, g].tobytes()] for g in range(n)] for f in range(n)],
                     dtype=np.int64)
    return elements, table, [index[g] for g in letters]
