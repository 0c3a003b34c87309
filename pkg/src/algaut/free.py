"""Concrete free algebras ``TX`` with canonical forms.

Supported kinds (``FreeBackend.kind``):

========== ============================== =====================================
kind       algebras                       canonical form of an element
========== ============================== =====================================
monoid     monoids                        tuple of letters
semigroup  semigroups                     nonempty tuple of letters
group      groups                         reduced tuple of ``(letter, +1|-1)``
commutative commutative monoids           sorted ``(letter, count)`` pairs
bounded    commutative monoids with       same, counts capped at the bound
           ``x^n = x^(n+1)``
maction    actions of a fixed finite      ``(monoid element, letter)``
           monoid ``M``
========== ============================== =====================================
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import (AlgebraError, App, FiniteAlgebra, Signature, Var,
                      equation_witness)

MONOID = Signature.of(("e", 0), ("mul", 2))
SEMIGROUP = Signature.of(("mul", 2))
GROUP = Signature.of(("e", 0), ("mul", 2), ("inv", 1))

KINDS = ("monoid", "semigroup", "group", "commutative", "bounded", "maction")
WORD_KINDS = ("monoid", "semigroup")
COUNT_KINDS = ("commutative", "bounded")


class VarietyError(AlgebraError):
    """An algebra violates the defining laws of a backend's variety."""

    def __init__(self, law: str, assignment: Mapping[str, int]):
        self.law = law
        self.assignment = dict(assignment)
        shown = ", ".join(f"{k}={v}" for k, v in self.assignment.items())
        super().__init__(f"law {law} fails at {shown}")


@dataclass(frozen=True)
class FreeElem:
    kind: str
    form: tuple

    def __str__(self):
        if self.kind in WORD_KINDS:
            return "".join(self.form) if self.form else "ε"
        if self.kind == "group":
            if not self.form:
                return "ε"
            return " ".join(x if s > 0 else x + "⁻¹" for x, s in self.form)
        if self.kind in COUNT_KINDS:
            if not self.form:
                return "0"
            return " ".join(x if c == 1 else f"{x}^{c}" for x, c in self.form)
        m, x = self.form
        return f"({m},{x})"

    def __repr__(self):
        return f"FreeElem({self.kind}, {self})"


@dataclass(frozen=True)
class FreeBackend:
    """A free-algebra monad instance on a fixed alphabet."""

    kind: str
    alphabet: Tuple[str, ...]
    bound: Optional[int] = None
    acting: Optional[FiniteAlgebra] = field(default=None, compare=True)

    def __post_init__(self):
        alphabet = tuple(str(x) for x in self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        if self.kind not in KINDS:
            raise AlgebraError(f"unknown backend kind {self.kind!r}")
        if len(set(alphabet)) != len(alphabet):
            raise AlgebraError(f"duplicate letters in alphabet {alphabet}")
        if self.kind in ("group", "maction") and not alphabet:
            raise AlgebraError(f"{self.kind} backend needs a nonempty alphabet")
        if self.kind == "bounded":
            if self.bound is None or self.bound < 1:
                raise AlgebraError("bounded backend needs a bound n >= 1")
        elif self.bound is not None:
            raise AlgebraError(f"{self.kind} backend takes no bound")
        if self.kind == "maction":
            if self.acting is None:
                raise AlgebraError("maction backend needs an acting monoid")
            if self.acting.signature != MONOID:
                raise AlgebraError("acting monoid must have signature e/0 mul/2")
            witness = variety_witness(FreeBackend("monoid", ()), self.acting)
            if witness is not None:
                raise VarietyError(*witness)
        elif self.acting is not None:
            raise AlgebraError(f"{self.kind} backend takes no acting monoid")

    # -- constructors -------------------------------------------------------
    @classmethod
    def monoid(cls, alphabet: Iterable[str]) -> "FreeBackend":
        return cls("monoid", tuple(alphabet))

    @classmethod
    def semigroup(cls, alphabet: Iterable[str]) -> "FreeBackend":
        return cls("semigroup", tuple(alphabet))

    @classmethod
    def group(cls, alphabet: Iterable[str]) -> "FreeBackend":
        return cls("group", tuple(alphabet))

    @classmethod
    def commutative(cls, alphabet: Iterable[str]) -> "FreeBackend":
        return cls("commutative", tuple(alphabet))

    @classmethod
    def bounded_commutative(cls, n: int, alphabet: Iterable[str]) -> "FreeBackend":
        return cls("bounded", tuple(alphabet), bound=n)

    @classmethod
    def maction(cls, monoid: FiniteAlgebra, alphabet: Iterable[str]) -> "FreeBackend":
        return cls("maction", tuple(alphabet), acting=monoid)

    def with_alphabet(self, alphabet: Iterable[str]) -> "FreeBackend":
        return FreeBackend(self.kind, tuple(alphabet), self.bound, self.acting)

    def same_kind(self, other: "FreeBackend") -> bool:
        return (self.kind, self.bound, self.acting) == (other.kind, other.bound, other.acting)

    # -- structure ----------------------------------------------------------
    @property
    def signature(self) -> Signature:
        return _signature_for(self.kind, self.acting)

    def letter_index(self, x: str) -> int:
        try:
            return self.alphabet.index(x)
        except ValueError:
            raise AlgebraError(f"letter {x!r} not in alphabet {self.alphabet}") from None

    def spec(self) -> str:
        letters = "".join(self.alphabet) if all(len(x) == 1 for x in self.alphabet) \
            else ",".join(self.alphabet)
        if self.kind == "bounded":
            return f"bounded({self.bound}):{letters}"
        if self.kind == "maction":
            return f"maction(<{self.acting.size}-element monoid>):{letters}"
        return f"{self.kind}:{letters}"

    def __str__(self):
        return self.spec()

    def elem(self, form) -> FreeElem:
        return FreeElem(self.kind, tuple(form))

    def word(self, text: str = "") -> FreeElem:
        """Parse a word such as ``"aab"`` (single-character letters).

        ``"ε"`` or ``""`` is the empty word; for groups an upper-case letter
        stands for the inverse of its lower-case letter.
        """
        text = text.replace("ε", "")
        result = self.identity() if self.kind != "semigroup" or not text else None
        for ch in text:
            if self.kind == "group" and ch.isupper() and ch not in self.alphabet:
                g = op_apply(self, "inv", [unit(self, ch.lower())])
            else:
                g = unit(self, ch)
            result = g if result is None else op_apply(self, "mul", [result, g])
        if result is None:
            raise AlgebraError("semigroups have no empty word")
        return result

    def identity(self) -> FreeElem:
        if self.kind in ("semigroup", "maction"):
            raise AlgebraError(f"{self.kind} backend has no identity element")
        return FreeElem(self.kind, ())


def parse_backend(text: str, load_algebra: Optional[Callable[[str], FiniteAlgebra]] = None
                  ) -> FreeBackend:
    """Parse strings such as ``monoid:ab``, ``bounded(3):ab``, ``maction(m.alg):xy``.

    Letters are single characters unless separated by commas.
    """
    head, sep, letters = text.strip().rpartition(":")
    if not sep:
        raise AlgebraError(f"backend spec {text!r} lacks ':<alphabet>'")
    alphabet = tuple(x for x in letters.split(",") if x) if "," in letters else tuple(letters)
    head = head.strip()
    if head.startswith("bounded(") and head.endswith(")"):
        try:
            n = int(head[len("bounded("):-1])
        except ValueError:
            raise AlgebraError(f"bad bound in {head!r}") from None
        return FreeBackend("bounded", alphabet, bound=n)
    if head.startswith("maction(") and head.endswith(")"):
        if load_algebra is None:
            raise AlgebraError("maction backend needs an algebra loader")
        return FreeBackend("maction", alphabet, acting=load_algebra(head[len("maction("):-1]))
    if head not in KINDS or head in ("bounded", "maction"):
        raise AlgebraError(f"unknown backend kind {head!r}")
    return FreeBackend(head, alphabet)


def _signature_for(kind: str, acting: Optional[FiniteAlgebra]) -> Signature:
    if kind == "semigroup":
        return SEMIGROUP
    if kind == "group":
        return GROUP
    if kind == "maction":
        return Signature(tuple((f"act_{m}", 1) for m in range(acting.size)))
    return MONOID


# ---------------------------------------------------------------------------
# variety laws


def _mul(s, t):
    return App("mul", (s, t))


_X, _Y, _Z = Var("x"), Var("y"), Var("z")
_E = App("e")
_ASSOC = ("(x*y)*z = x*(y*z)", _mul(_mul(_X, _Y), _Z), _mul(_X, _mul(_Y, _Z)))
_LEFT_UNIT = ("e*x = x", _mul(_E, _X), _X)
_RIGHT_UNIT = ("x*e = x", _mul(_X, _E), _X)
_COMM = ("x*y = y*x", _mul(_X, _Y), _mul(_Y, _X))


def _power(t, k):
    out = t
    for _ in range(k - 1):
        out = _mul(out, t)
    return out


def variety_laws(backend: FreeBackend) -> List[Tuple[str, object, object]]:
    """Defining equations ``(name, lhs, rhs)`` of the backend's variety.

    The ``maction`` laws are not equations over a common signature and are
    checked separately by :func:`variety_witness`.
    """
    return _laws(backend.kind, backend.bound)


def _laws(kind: str, bound: Optional[int]) -> List[Tuple[str, object, object]]:
    if kind == "semigroup":
        return [_ASSOC]
    laws = [_ASSOC, _LEFT_UNIT, _RIGHT_UNIT]
    if kind == "group":
        laws += [("x*inv(x) = e", _mul(_X, App("inv", (_X,))), _E),
                 ("inv(x)*x = e", _mul(App("inv", (_X,)), _X), _E)]
    if kind in COUNT_KINDS:
        laws.append(_COMM)
    if kind == "bounded":
        n = bound
        laws.append((f"x^{n} = x^{n + 1}", _power(_X, n), _power(_X, n + 1)))
    if kind == "maction":
        return []
    return laws


@functools.lru_cache(maxsize=4096)
def _variety_witness_cached(kind, bound, acting, a: FiniteAlgebra):
    expected = _signature_for(kind, acting)
    if a.signature != expected:
        raise AlgebraError(f"algebra signature {a.signature} differs from {expected}")
    if kind == "maction":
        m = acting
        identity = m.constant("e")
        mul = m.lists()["mul"]
        lst = a.lists()
        for x in range(a.size):
            if lst[f"act_{identity}"][x] != x:
                return ("act_e(x) = x", {"x": x})
        for p in range(m.size):
            for q in range(m.size):
                pq = mul[p][q]
                for x in range(a.size):
                    if lst[f"act_{p}"][lst[f"act_{q}"][x]] != lst[f"act_{pq}"][x]:
                        return (f"act_{p}(act_{q}(x)) = act_{pq}(x)", {"x": x})
        return None
    laws = _laws(kind, bound)
    found = equation_witness(a, [(lhs, rhs) for _, lhs, rhs in laws])
    if found is None:
        return None
    i, assignment = found
    return (laws[i][0], assignment)


def variety_witness(backend: FreeBackend, a: FiniteAlgebra) -> Optional[Tuple[str, Dict[str, int]]]:
    """``None`` if ``a`` lies in the backend's variety, else ``(law, assignment)``."""
    return _variety_witness_cached(backend.kind, backend.bound, backend.acting, a)


def in_variety(backend: FreeBackend, a: FiniteAlgebra) -> bool:
    return variety_witness(backend, a) is None


def require_variety(backend: FreeBackend, a: FiniteAlgebra) -> None:
    witness = variety_witness(backend, a)
    if witness is not None:
        raise VarietyError(*witness)


# ---------------------------------------------------------------------------
# free operations


def unit(b: FreeBackend, x: str) -> FreeElem:
    """The generator ``η(x)``."""
    b.letter_index(x)
    if b.kind in WORD_KINDS:
        return FreeElem(b.kind, (x,))
    if b.kind == "group":
        return FreeElem(b.kind, ((x, 1),))
    if b.kind in COUNT_KINDS:
        return FreeElem(b.kind, ((x, 1),))
    return FreeElem(b.kind, (b.acting.constant("e"), x))


def _check_elem(b: FreeBackend, w: FreeElem) -> None:
    if not isinstance(w, FreeElem) or w.kind != b.kind:
        raise AlgebraError(f"{w!r} is not an element of a {b.kind} backend")


def _reduce(form) -> tuple:
    out: List[Tuple[str, int]] = []
    for x, s in form:
        if out and out[-1][0] == x and out[-1][1] == -s:
            out.pop()
        else:
            out.append((x, s))
    return tuple(out)


def _count_form(b: FreeBackend, counts: Mapping[str, int]) -> tuple:
    cap = b.bound if b.kind == "bounded" else None
    pairs = []
    for x in b.alphabet:
        c = counts.get(x, 0)
        if cap is not None:
            c = min(cap, c)
        if c:
            pairs.append((x, c))
    return tuple(pairs)


def op_apply(b: FreeBackend, symbol: str, args: Sequence[FreeElem]) -> FreeElem:
    """Apply a free operation to canonical elements, returning a canonical element."""
    sig = b.signature
    if symbol not in sig:
        raise AlgebraError(f"symbol {symbol!r} not in the {b.kind} signature {sig}")
    if len(args) != sig.arity(symbol):
        raise AlgebraError(f"{symbol!r} takes {sig.arity(symbol)} arguments, got {len(args)}")
    for w in args:
        _check_elem(b, w)
    kind = b.kind
    if symbol == "e":
        return FreeElem(kind, ())
    if kind in WORD_KINDS:
        return FreeElem(kind, args[0].form + args[1].form)
    if kind == "group":
        if symbol == "inv":
            return FreeElem(kind, tuple((x, -s) for x, s in reversed(args[0].form)))
        return FreeElem(kind, _reduce(args[0].form + args[1].form))
    if kind in COUNT_KINDS:
        counts: Dict[str, int] = {}
        for w in args:
            for x, c in w.form:
                counts[x] = counts.get(x, 0) + c
        return FreeElem(kind, _count_form(b, counts))
    m = int(symbol[len("act_"):])
    n, x = args[0].form
    return FreeElem(kind, (b.acting.op("mul", m, n), x))


def elem_size(w: FreeElem) -> int:
    if w.kind in WORD_KINDS or w.kind == "group":
        return len(w.form)
    if w.kind in COUNT_KINDS:
        return sum(c for _, c in w.form)
    return 1


def sort_key(b: FreeBackend, w: FreeElem):
    """Enumeration order: by size, then lexicographically in alphabet order."""
    if w.kind in WORD_KINDS:
        return (len(w.form), tuple(b.letter_index(x) for x in w.form))
    if w.kind == "group":
        return (len(w.form), tuple(2 * b.letter_index(x) + (s < 0) for x, s in w.form))
    if w.kind in COUNT_KINDS:
        word = []
        for x, c in w.form:
            word += [b.letter_index(x)] * c
        return (len(word), tuple(word))
    m, x = w.form
    return (1, (b.letter_index(x), m))


def enumerate_elements(b: FreeBackend, size_bound: int) -> List[FreeElem]:
    """All canonical elements of size at most ``size_bound``, in enumeration order.

    Every ``maction`` element has size 1, so bound >= 1 lists the whole
    (finite) free action.
    """
    kind = b.kind
    out: List[FreeElem] = []
    if kind in WORD_KINDS:
        start = 1 if kind == "semigroup" else 0
        for n in range(start, size_bound + 1):
            out += [FreeElem(kind, w) for w in itertools.product(b.alphabet, repeat=n)]
    elif kind == "group":
        signed = [(x, s) for x in b.alphabet for s in (1, -1)]
        level = [()]
        out.append(FreeElem(kind, ()))
        for _ in range(size_bound):
            level = [w + (g,) for w in level for g in signed
                     if not (w and w[-1][0] == g[0] and w[-1][1] == -g[1])]
            out += [FreeElem(kind, w) for w in level]
    elif kind in COUNT_KINDS:
        cap = b.bound if kind == "bounded" else None
        for n in range(size_bound + 1):
            for combo in itertools.combinations_with_replacement(b.alphabet, n):
                counts: Dict[str, int] = {}
                for x in combo:
                    counts[x] = counts.get(x, 0) + 1
                if cap is not None and any(c > cap for c in counts.values()):
                    continue
                out.append(FreeElem(kind, _count_form(b, counts)))
    else:
        if size_bound >= 1:
            out = [FreeElem(kind, (m, x)) for x in b.alphabet for m in range(b.acting.size)]
    return sorted(out, key=lambda w: sort_key(b, w))


# ---------------------------------------------------------------------------
# universal property


def _fold(b: FreeBackend, w: FreeElem, gen: Callable, mul: Callable, one, inv=None, act=None):
    kind = b.kind
    if kind in WORD_KINDS:
        if not w.form:
            return one
        acc = gen(w.form[0])
        for x in w.form[1:]:
            acc = mul(acc, gen(x))
        return acc
    if kind == "group":
        acc = one
        for x, s in w.form:
            g = gen(x)
            acc = mul(acc, g if s > 0 else inv(g))
        return acc
    if kind in COUNT_KINDS:
        acc = one
        for x, c in w.form:
            g = gen(x)
            for _ in range(c):
                acc = mul(acc, g)
        return acc
    m, x = w.form
    return act(m, gen(x))


class Evaluator:
    """The homomorphic extension ``TX -> A`` of a generator assignment."""

    def __init__(self, backend: FreeBackend, algebra: FiniteAlgebra, genmap: Mapping[str, int]):
        self.backend = backend
        self.algebra = algebra
        self.genmap = {x: int(genmap[x]) for x in backend.alphabet}
        lst = algebra.lists()
        self._mul = lst.get("mul")
        self._inv = lst.get("inv")
        self._one = algebra.constant("e") if "e" in algebra.signature else None
        self._lst = lst

    def __call__(self, w: FreeElem) -> int:
        _check_elem(self.backend, w)
        mul, inv, lst = self._mul, self._inv, self._lst
        return _fold(self.backend, w, self.genmap.__getitem__,
                     lambda p, q: mul[p][q], self._one,
                     inv=(lambda p: inv[p]) if inv is not None else None,
                     act=lambda m, v: lst[f"act_{m}"][v])


def extend(b: FreeBackend, a: FiniteAlgebra, genmap: Mapping[str, int]) -> Evaluator:
    """Unique homomorphism ``TX -> a`` extending ``genmap``.

    Raises :class:`VarietyError` if ``a`` is not in the backend's variety.
    """
    require_variety(b, a)
    missing = [x for x in b.alphabet if x not in genmap]
    if missing:
        raise AlgebraError(f"generator map lacks letters {missing}")
    for x in b.alphabet:
        if not 0 <= int(genmap[x]) < a.size:
            raise AlgebraError(f"image of {x!r} out of range")
    return Evaluator(b, a, genmap)


class Substitution:
    """Homomorphism ``TX -> TY`` determined by letter images in ``TY``."""

    def __init__(self, source: FreeBackend, target: FreeBackend, images: Mapping[str, FreeElem]):
        self.source = source
        self.target = target
        self.images = {x: images[x] for x in source.alphabet}

    def __call__(self, w: FreeElem) -> FreeElem:
        _check_elem(self.source, w)
        t = self.target
        one = FreeElem(t.kind, ()) if t.kind not in ("semigroup", "maction") else None
        return _fold(self.source, w, self.images.__getitem__,
                     lambda p, q: op_apply(t, "mul", [p, q]), one,
                     inv=lambda p: op_apply(t, "inv", [p]),
                     act=lambda m, v: op_apply(t, f"act_{m}", [v]))


def substitution(b: FreeBackend, subst: Mapping[str, FreeElem],
                 target: Optional[FreeBackend] = None) -> Substitution:
    """Extend letter images to an endomorphism (or a map into ``target``).

    When ``target`` is omitted the images are assumed to live over the same
    alphabet as ``b``.
    """
    target = target or b
    if not b.same_kind(target):
        raise AlgebraError(f"cannot substitute between {b.kind} and {target.kind} backends")
    missing = [x for x in b.alphabet if x not in subst]
    if missing:
        raise AlgebraError(f"substitution lacks letters {missing}")
    for x in b.alphabet:
        w = subst[x]
        _check_elem(target, w)
        _check_letters(target, w)
    return Substitution(b, target, subst)


def _check_letters(b: FreeBackend, w: FreeElem) -> None:
    if w.kind in WORD_KINDS:
        letters = w.form
    elif w.kind in ("group", "commutative", "bounded"):
        letters = [x for x, _ in w.form]
    else:
        letters = [w.form[1]]
    for x in letters:
        b.letter_index(x)
