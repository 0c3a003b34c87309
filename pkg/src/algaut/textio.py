"""Line-based text formats for algebras, languages and quotients, plus parsers
for terms and pseudovariety specs.

Algebra files::

    # comments run to end of line
    signature: e/0 mul/2
    size: 2
    op e = 0
    op mul:
    0 1
    1 0
    labels: even odd        (optional)
    order:                  (optional, ordered algebras)
    0 <= 1

An operation of arity ``k >= 1`` takes ``n^(k-1)`` rows of ``n`` entries, the
rows in lexicographic order of the leading arguments.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import AlgebraError, App, FiniteAlgebra, Signature, Term, Var, validate_algebra
from .free import FreeBackend, parse_backend, variety_witness
from .languages import RecognizableLanguage, from_regex
from .ordered import OrderedFiniteAlgebra, Preorder
from .quotients import FiniteQuotient, canonical, quotient_of


class InputError(AlgebraError):
    """Malformed input, located by file and line."""

    def __init__(self, message: str, path: str = "<input>", line: Optional[int] = None):
        self.path, self.line = path, line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(fields: Sequence[str], path: str, no: int) -> List[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise InputError(f"expected integers, got {' '.join(fields)!r}", path, no) from None


# ---------------------------------------------------------------------------
# algebras


@dataclass
class _Parsed:
    algebra: FiniteAlgebra
    order: Optional[Preorder]


def _parse_algebra(text: str, path: str) -> _Parsed:
    lines = list(_lines(text))
    sig = None
    size = None
    tables: Dict[str, object] = {}
    table_line: Dict[str, int] = {}
    labels = None
    order_pairs: Optional[List[Tuple[int, int]]] = None
    i = 0
    while i < len(lines):
        no, line = lines[i]
        i += 1
        if line.startswith("signature:"):
            if sig is not None:
                raise InputError("duplicate signature", path, no)
            pairs = []
            for item in line[len("signature:"):].split():
                name, sep, arity = item.partition("/")
                if not sep or not name or not arity.isdigit():
                    raise InputError(f"bad symbol {item!r}; expected name/arity", path, no)
                pairs.append((name, int(arity)))
            try:
                sig = Signature(tuple(pairs))
            except AlgebraError as exc:
                raise InputError(str(exc), path, no) from None
        elif line.startswith("size:"):
            if size is not None:
                raise InputError("duplicate size", path, no)
            fields = line[len("size:"):].split()
            if len(fields) != 1:
                raise InputError("size takes one integer", path, no)
            size = _ints(fields, path, no)[0]
            if size < 1:
                raise InputError("size must be positive", path, no)
        elif line.startswith("op "):
            if sig is None or size is None:
                raise InputError("op before signature and size", path, no)
            m = re.fullmatch(r"op\s+(\S+)\s*(=\s*(\S+)|:)", line)
            if not m:
                raise InputError(f"bad op line {line!r}", path, no)
            name = m.group(1)
            if name not in sig:
                raise InputError(f"unknown symbol {name!r}", path, no)
            if name in tables:
                raise InputError(f"duplicate table for {name!r}", path, no)
            arity = sig.arity(name)
            table_line[name] = no
            if m.group(3) is not None:
                if arity != 0:
                    raise InputError(f"{name!r} has arity {arity}; use 'op {name}:' and rows", path, no)
                tables[name] = _ints([m.group(3)], path, no)[0]
            else:
                if arity == 0:
                    raise InputError(f"{name!r} is nullary; use 'op {name} = <value>'", path, no)
                rows = []
                for _ in range(size ** (arity - 1)):
                    if i >= len(lines):
                        raise InputError(f"table {name!r} needs {size ** (arity - 1)} rows", path, no)
                    rno, row = lines[i]
                    i += 1
                    vals = _ints(row.split(), path, rno)
                    if len(vals) != size:
                        raise InputError(f"row has {len(vals)} entries, expected {size}", path, rno)
                    for v in vals:
                        if not 0 <= v < size:
                            raise InputError(f"entry {v} out of range 0..{size - 1}", path, rno)
                    rows.append(vals)
                tables[name] = np.array(rows, dtype=np.int64).reshape((size,) * arity)
        elif line.startswith("labels:"):
            labels = line[len("labels:"):].split()
            if size is not None and len(labels) != size:
                raise InputError(f"{len(labels)} labels for {size} elements", path, no)
        elif line == "order:":
            order_pairs = []
            while i < len(lines) and "<=" in lines[i][1]:
                rno, row = lines[i]
                i += 1
                left, _, right = row.partition("<=")
                x, y = _ints([left.strip(), right.strip()], path, rno)
                if size is None or not (0 <= x < size and 0 <= y < size):
                    raise InputError(f"order pair {x} <= {y} out of range", path, rno)
                order_pairs.append((x, y))
        else:
            key = line.split(":", 1)[0] if ":" in line else line.split()[0]
            raise InputError(f"unknown key {key!r}", path, no)
    if sig is None:
        raise InputError("missing 'signature:'", path)
    if size is None:
        raise InputError("missing 'size:'", path)
    for name, arity in sig:
        if name not in tables:
            raise InputError(f"missing table for {name!r}", path)
        if arity == 0 and not 0 <= tables[name] < size:
            raise InputError(f"value {tables[name]} out of range 0..{size - 1}", path, table_line[name])
    algebra = FiniteAlgebra(sig, size, tables, labels, check=False)
    defects = validate_algebra(algebra)
    if defects:
        d = defects[0]
        raise InputError(str(d), path, table_line.get(getattr(d, "symbol", None)))
    algebra = FiniteAlgebra(sig, size, tables, labels)
    order = None
    if order_pairs is not None:
        order = Preorder.from_pairs(size, order_pairs)
        if not order.is_partial_order():
            raise InputError("order is not antisymmetric", path)
    return _Parsed(algebra, order)


def parse_algebra(text: str, path: str = "<input>") -> FiniteAlgebra:
    return _parse_algebra(text, path).algebra


def parse_ordered_algebra(text: str, path: str = "<input>"
                          ) -> Union[FiniteAlgebra, OrderedFiniteAlgebra]:
    parsed = _parse_algebra(text, path)
    if parsed.order is None:
        return parsed.algebra
    try:
        return OrderedFiniteAlgebra(parsed.algebra, parsed.order)
    except AlgebraError as exc:
        raise InputError(str(exc), path) from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", path) from None


def load_algebra(path: str) -> FiniteAlgebra:
    return parse_algebra(_read(path), path)


def load_ordered_algebra(path: str):
    return parse_ordered_algebra(_read(path), path)


def format_algebra(a: FiniteAlgebra, order: Optional[Preorder] = None) -> str:
    out = ["signature: " + " ".join(f"{n}/{k}" for n, k in a.signature), f"size: {a.size}"]
    for name, arity in a.signature:
        tab = a.tables[name]
        if arity == 0:
            out.append(f"op {name} = {int(tab)}")
            continue
        out.append(f"op {name}:")
        width = len(str(a.size - 1))
        for row in tab.reshape(-1, a.size):
            out.append(" ".join(str(int(v)).rjust(width) for v in row))
    if a.labels is not None:
        out.append("labels: " + " ".join(a.labels))
    if order is not None:
        out.append("order:")
        out += [f"{x} <= {y}" for x, y in order.hasse()]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# languages and quotients


def format_table(a: FiniteAlgebra, name: str) -> List[str]:
    """Lines showing operation ``name`` of ``a`` with element labels."""
    tab = a.tables[name]
    labels = [a.label(x) for x in range(a.size)]
    arity = tab.ndim
    if arity == 0:
        return [f"op {name} = {labels[int(tab)]}"]
    width = max(len(s) for s in labels)
    out = [f"op {name}:"]
    if arity == 1:
        for x in range(a.size):
            out.append(f"  {labels[x].rjust(width)} -> {labels[int(tab[x])]}")
        return out
    out.append("  " + " " * width + " | " + " ".join(s.rjust(width) for s in labels))
    for idx in range(a.size ** (arity - 1)):
        lead = []
        rest = idx
        for _ in range(arity - 1):
            lead.append(rest % a.size)
            rest //= a.size
        lead.reverse()
        row = tab[tuple(lead)]
        head = ",".join(labels[i] for i in lead)
        out.append("  " + head.rjust(width) + " | " + " ".join(labels[int(v)].rjust(width) for v in row))
    return out


def _resolve(base: str, ref: str) -> str:
    return ref if os.path.isabs(ref) else os.path.join(os.path.dirname(base), ref)


def _keyed(text: str, path: str, allowed: Sequence[str]) -> Dict[str, Tuple[int, str]]:
    out: Dict[str, Tuple[int, str]] = {}
    for no, line in _lines(text):
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in allowed:
            raise InputError(f"unknown key {key!r}; expected one of {', '.join(allowed)}", path, no)
        if key in out:
            raise InputError(f"duplicate {key!r}", path, no)
        out[key] = (no, value.strip())
    return out


def _backend(fields, path) -> FreeBackend:
    if "backend" not in fields:
        raise InputError("missing 'backend:'", path)
    no, value = fields["backend"]
    try:
        return parse_backend(value, lambda ref: load_algebra(_resolve(path, ref)))
    except InputError:
        raise
    except AlgebraError as exc:
        raise InputError(str(exc), path, no) from None


def _genmap(fields, path, backend: FreeBackend, size: int) -> Dict[str, int]:
    if "genmap" not in fields:
        raise InputError("missing 'genmap:'", path)
    no, value = fields["genmap"]
    out = {}
    for item in value.split():
        x, sep, v = item.partition("->")
        if not sep:
            raise InputError(f"bad genmap item {item!r}; expected letter->element", path, no)
        if x not in backend.alphabet:
            raise InputError(f"letter {x!r} not in alphabet", path, no)
        (val,) = _ints([v], path, no)
        if not 0 <= val < size:
            raise InputError(f"image {val} of {x!r} out of range", path, no)
        out[x] = val
    missing = [x for x in backend.alphabet if x not in out]
    if missing:
        raise InputError(f"genmap lacks letters {missing}", path, no)
    return out


def _in_variety(backend, algebra, path, no):
    try:
        bad = variety_witness(backend, algebra)
    except AlgebraError as exc:
        raise InputError(str(exc), path, no) from None
    if bad is not None:
        law, assignment = bad
        shown = ", ".join(f"{k}={v}" for k, v in assignment.items())
        raise InputError(f"algebra violates {law} at {shown}", path, no)


def parse_language(text: str, path: str = "<input>") -> RecognizableLanguage:
    fields = _keyed(text, path, ("backend", "recognizer", "genmap", "accepting", "regex"))
    backend = _backend(fields, path)
    if "regex" in fields:
        no, pattern = fields["regex"]
        extra = [k for k in ("recognizer", "genmap", "accepting") if k in fields]
        if extra:
            raise InputError(f"'regex:' cannot be combined with {extra}", path, no)
        if backend.kind != "monoid":
            raise InputError("regular expressions need a monoid backend", path, fields["backend"][0])
        try:
            return from_regex(backend.alphabet, pattern)
        except AlgebraError as exc:
            raise InputError(str(exc), path, no) from None
    for key in ("recognizer", "accepting"):
        if key not in fields:
            raise InputError(f"missing '{key}:'", path)
    no, ref = fields["recognizer"]
    algebra = load_algebra(_resolve(path, ref))
    _in_variety(backend, algebra, path, no)
    genmap = _genmap(fields, path, backend, algebra.size)
    ano, accepting = fields["accepting"]
    members = _ints(accepting.split(), path, ano)
    for m in members:
        if not 0 <= m < algebra.size:
            raise InputError(f"accepting element {m} out of range", path, ano)
    return RecognizableLanguage(backend, algebra, genmap, members)


def load_language(path: str) -> RecognizableLanguage:
    return parse_language(_read(path), path)


def parse_quotient(text: str, path: str = "<input>") -> FiniteQuotient:
    fields = _keyed(text, path, ("backend", "algebra", "genmap"))
    backend = _backend(fields, path)
    if "algebra" not in fields:
        raise InputError("missing 'algebra:'", path)
    no, ref = fields["algebra"]
    algebra = load_algebra(_resolve(path, ref))
    _in_variety(backend, algebra, path, no)
    genmap = _genmap(fields, path, backend, algebra.size)
    return canonical(quotient_of(backend, algebra, genmap))


def load_quotient(path: str) -> FiniteQuotient:
    return parse_quotient(_read(path), path)


# ---------------------------------------------------------------------------
# terms and pseudovariety specs

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def parse_term(text: str, signature: Signature) -> Term:
    """Terms over ``signature``: ``x*y``, ``x^3``, ``inv(x)``, ``x^-1``, ``1``.

    ``*`` is the binary ``mul`` symbol and ``1`` (or ``e``, when it is a
    nullary symbol) the unit; any other symbol is written ``name(args)``.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(0).strip():
            tokens.append((m.start(m.lastindex), m.group(m.lastindex), m.lastindex))
        pos = m.end()
    k = 0

    def err(msg):
        where = tokens[k][0] if k < len(tokens) else len(text)
        raise AlgebraError(f"{msg} at position {where} in {text!r}")

    def peek():
        return tokens[k][1] if k < len(tokens) else None

    def expr():
        nonlocal k
        t = power()
        while peek() == "*":
            k += 1
            if "mul" not in signature:
                err("'*' needs a binary 'mul' symbol")
            t = App("mul", (t, power()))
        return t

    def power():
        nonlocal k
        t = atom()
        while peek() == "^":
            k += 1
            neg = False
            if peek() == "-":
                k += 1
                neg = True
            if k >= len(tokens) or tokens[k][2] != 1:
                err("expected an exponent")
            n = int(tokens[k][1])
            k += 1
            if neg:
                if n != 1 or "inv" not in signature:
                    err("only ^-1 is supported, and it needs 'inv'")
                t = App("inv", (t,))
                continue
            if n < 1:
                err("exponent must be at least 1")
            base = t
            for _ in range(n - 1):
                t = App("mul", (t, base))
        return t

    def atom():
        nonlocal k
        tok = peek()
        if tok is None:
            err("unexpected end of term")
        kind = tokens[k][2]
        if tok == "(":
            k += 1
            t = expr()
            if peek() != ")":
                err("expected ')'")
            k += 1
            return t
        if kind == 1:
            if tok != "1":
                err(f"unexpected number {tok}")
            k += 1
            if "e" not in signature or signature.arity("e") != 0:
                err("'1' needs a nullary 'e' symbol")
            return App("e")
        if kind == 2:
            k += 1
            if peek() == "(" and tok in signature:
                k += 1
                args = [expr()]
                while peek() == ",":
                    k += 1
                    args.append(expr())
                if peek() != ")":
                    err("expected ')'")
                k += 1
                if len(args) != signature.arity(tok):
                    err(f"{tok!r} takes {signature.arity(tok)} arguments")
                return App(tok, tuple(args))
            if tok in signature and signature.arity(tok) == 0:
                return App(tok)
            return Var(tok)
        err(f"unexpected {tok!r}")

    t = expr()
    if k != len(tokens):
        err(f"unexpected {peek()!r}")
    return t


def parse_equations(text: str, signature: Signature) -> Tuple[Tuple[Term, Term], ...]:
    """``lhs = rhs`` equations separated by ``;``."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.count("=") != 1:
            raise AlgebraError(f"expected one '=' in {part!r}")
        lhs, rhs = part.split("=")
        out.append((parse_term(lhs, signature), parse_term(rhs, signature)))
    if not out:
        raise AlgebraError("no equations given")
    return tuple(out)


def parse_pv_spec(text: str, signature: Signature,
                  load: Callable[[str], FiniteAlgebra] = load_algebra):
    """Specs such as ``id: x*y=y*x ; x*x=x``, ``gen: z2.alg``, ``aperiodic``,
    ``commutative``, ``all``, joined with ``&``."""
    from .theories import ALL, Conjunction, EventualIdentity, Generated, Identities

    parts = []
    for piece in text.split("&"):
        piece = piece.strip()
        if piece == "all":
            parts.append(ALL)
        elif piece == "aperiodic":
            parts.append(EventualIdentity())
        elif piece == "commutative":
            parts.append(Identities(parse_equations("x*y=y*x", signature), "commutative"))
        elif piece == "idempotent":
            parts.append(Identities(parse_equations("x*x=x", signature), "idempotent"))
        elif piece.startswith("id:"):
            parts.append(Identities(parse_equations(piece[3:], signature), piece))
        elif piece.startswith("gen:"):
            files = piece[4:].split()
            if not files:
                raise AlgebraError("'gen:' needs at least one algebra file")
            gens = tuple(load(f) for f in files)
            for f, g in zip(files, gens):
                if g.signature != signature:
                    raise AlgebraError(f"{f}: signature {g.signature} differs from {signature}")
            parts.append(Generated(gens, piece))
        else:
            raise AlgebraError(f"unknown pseudovariety spec {piece!r}")
    if not parts:
        raise AlgebraError("empty pseudovariety spec")
    return parts[0] if len(parts) == 1 else Conjunction(tuple(parts))
