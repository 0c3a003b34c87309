"""Command-line interface.

Exit codes: 0 success (no violations, or membership holds), 1 violations or
a negative answer, 2 input errors.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from .algebra import AlgebraError, equation_witness
from .correspondence import closure_check, roundtrip_lan, roundtrip_ps
from .free import (FreeBackend, enumerate_elements, parse_backend, variety_witness)
from .languages import from_regex
from .ordered import ordered_syntactic
from .quotients import FiniteQuotient
from .syntactic import MAX_FAMILY, generated_coalgebra, syntactic_quotient
from .textio import (InputError, format_table, load_algebra, load_language, load_quotient, parse_equations,
                     parse_pv_spec)
from .theories import subdirect_product

MAX_CARRIER = 10_000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message, self.prog)


def _cayley_dot(q: FiniteQuotient, name: str = "cayley") -> str:
    """Right Cayley graph: ``s -> s·x`` for each letter ``x``."""
    a = q.codomain
    lines = [f"digraph {name} {{"]
    for x in range(a.size):
        lines.append(f'  n{x} [label="{a.label(x)}"];')
    binary = [n for n, k in a.signature if k == 2]
    for s in range(a.size):
        for letter, g in zip(q.backend.alphabet, q.genmap):
            if binary:
                t = int(a.tables[binary[0]][s, g])
                lines.append(f'  n{s} -> n{t} [label="{letter}"];')
    if not binary:
        for name_, arity in a.signature:
            if arity == 1:
                for s in range(a.size):
                    lines.append(f'  n{s} -> n{int(a.tables[name_][s])} [label="{name_}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _languages(args) -> list:
    langs = [load_language(p) for p in (args.lang or [])]
    if args.regex:
        if not args.backend:
            raise InputError("--regex needs --backend", "argv")
        backend = parse_backend(args.backend, load_algebra)
        if backend.kind != "monoid":
            raise InputError("--regex needs a monoid backend", "argv")
        langs += [from_regex(backend.alphabet, r, args.max_carrier) for r in args.regex]
    if not langs:
        raise InputError("no languages given (use --lang or --regex)", "argv")
    return langs


def _add_language_options(p):
    p.add_argument("--lang", action="append", metavar="FILE", help="language file (repeatable)")
    p.add_argument("--regex", action="append", metavar="PATTERN", help="regular expression (repeatable)")
    p.add_argument("--backend", metavar="SPEC", help="backend for --regex, e.g. monoid:ab")
    p.add_argument("--max-carrier", type=int, default=MAX_CARRIER,
                   help="largest transition monoid built from a regex (default %(default)s)")


def _parse_subst(text: str, backend: FreeBackend):
    out = {}
    for item in text.split(","):
        x, sep, w = item.strip().partition("->")
        if not sep or x not in backend.alphabet:
            raise InputError(f"bad substitution item {item!r}; expected letter->word", "argv")
        out[x] = backend.word(w)
    missing = [x for x in backend.alphabet if x not in out]
    if missing:
        raise InputError(f"substitution lacks letters {missing}", "argv")
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, out: TextIO) -> int:
    a = load_algebra(args.file)
    out.write(f"{args.file}: size {a.size}, signature {a.signature}\n")
    if args.variety:
        backend = parse_backend(args.variety + ":x", load_algebra)
        bad = variety_witness(backend, a)
        if bad is not None:
            law, assignment = bad
            shown = ", ".join(f"{k}={v}" for k, v in assignment.items())
            out.write(f"violation: {law} fails at {shown}\n")
            return 1
        out.write(f"in variety {args.variety}\n")
    out.write("ok\n")
    return 0


def cmd_syntactic(args, out: TextIO) -> int:
    langs = _languages(args)
    if len(langs) != 1:
        raise InputError("give exactly one language", "argv")
    l = langs[0]
    s = syntactic_quotient(l)
    q = s.quotient
    if args.format == "dot":
        out.write(_cayley_dot(q))
        return 0
    a = q.codomain
    out.write(f"syntactic algebra over {l.backend}\n")
    out.write(f"size: {a.size}\n")
    for name, _ in a.signature:
        out.write("\n".join(format_table(a, name)) + "\n")
    out.write("accepting: " + " ".join(a.label(x) for x in sorted(s.accepting_image.members)) + "\n")
    out.write("representatives: " + " ".join(str(w) for w in q.section) + "\n")
    if args.ordered:
        o = ordered_syntactic(l, "down" if args.flip else "up")
        pairs = o.order.hasse()
        out.write(f"order ({'accepting set is a down-set' if args.flip else 'accepting set is an up-set'}):\n")
        if not pairs:
            out.write("  (discrete)\n")
        for x, y in pairs:
            out.write(f"  {a.label(x)} <= {a.label(y)}\n")
    return 0


def cmd_check_identity(args, out: TextIO) -> int:
    a = load_algebra(args.file)
    eqs = parse_equations(args.eq, a.signature)
    found = equation_witness(a, list(eqs))
    if found is None:
        out.write(f"holds: {args.eq}\n")
        return 0
    i, assignment = found
    lhs, rhs = eqs[i]
    shown = ", ".join(f"{k}={a.label(v)}" for k, v in assignment.items())
    out.write(f"fails: {lhs} = {rhs} at {shown}\n")
    return 1


def cmd_pv_member(args, out: TextIO) -> int:
    a = load_algebra(args.file)
    spec = parse_pv_spec(args.spec, a.signature)
    reason = spec.explain(a)
    if reason is None:
        out.write(f"member of {spec}\n")
        return 0
    out.write(f"not a member of {spec}: {reason}\n")
    return 1


def cmd_subdirect(args, out: TextIO) -> int:
    qs = [load_quotient(p) for p in args.quotients]
    e = subdirect_product(qs)
    out.write(f"subdirect product of {len(qs)} quotients over {e.backend}\n")
    out.write(f"size: {e.size}\n")
    labelled = e.codomain.relabeled([str(w) for w in e.section])
    for name, _ in labelled.signature:
        out.write("\n".join(format_table(labelled, name)) + "\n")
    out.write("genmap: " + " ".join(f"{x}->{e.section[q]}" for x, q in e.genmap_dict.items()) + "\n")
    return 0


def cmd_free(args, out: TextIO) -> int:
    backend = parse_backend(args.backend, load_algebra)
    elems = enumerate_elements(backend, args.bound)
    out.write(f"{len(elems)} elements of {backend} with size <= {args.bound}\n")
    for w in elems:
        out.write(f"{w}\n")
    return 0


def cmd_lan_check(args, out: TextIO) -> int:
    langs = _languages(args)
    substs = [_parse_subst(s, langs[0].backend) for s in (args.subst or [])]
    bad = closure_check(langs, args.mode, substs, derivatives=not args.no_derivatives)
    out.write(f"family of {len(langs)} languages, mode {args.mode}, "
              f"derivatives {'off' if args.no_derivatives else 'on'}, "
              f"{len(substs)} substitutions\n")
    for v in bad:
        out.write("violation: " + v.describe() + "\n")
    out.write(f"{len(bad)} violations\n")
    return 1 if bad else 0


def cmd_roundtrip_ps(args, out: TextIO) -> int:
    backend = parse_backend(f"{args.kind}:{args.alphabet}", load_algebra)
    spec = parse_pv_spec(args.spec, backend.signature)
    report = roundtrip_ps(spec, backend, args.max_size)
    out.write(report.render())
    return 0 if report.ok else 1


def cmd_roundtrip_lan(args, out: TextIO) -> int:
    langs = _languages(args)
    report = roundtrip_lan(langs, args.subst_bound, args.max_family)
    out.write(report.render())
    return 0 if report.ok else 1


def cmd_closure(args, out: TextIO) -> int:
    langs = _languages(args)
    family = generated_coalgebra(langs, args.max_family)
    out.write(f"generated family: {len(family)} languages\n")
    if args.list:
        for i, l in enumerate(family):
            s = syntactic_quotient(l)
            reps = [str(s.quotient.section[q]) for q in sorted(s.accepting_image.members)]
            out.write(f"  {i}: syntactic size {s.size}, accepting classes of "
                      f"{{{', '.join(reps)}}}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="algaut", description="finite algebras, recognizable languages "
                                                "and their correspondences")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check an algebra file")
    p.add_argument("file")
    p.add_argument("--variety", metavar="KIND", help="also check the laws of monoid, group, bounded(n), ...")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("syntactic", help="syntactic algebra of a language")
    _add_language_options(p)
    p.add_argument("--ordered", action="store_true", help="print the syntactic order")
    p.add_argument("--flip", action="store_true", help="order making the accepting set a down-set")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(run=cmd_syntactic)

    p = sub.add_parser("check-identity", help="check equations on an algebra")
    p.add_argument("file")
    p.add_argument("--eq", required=True, help="equations such as 'x*y=y*x ; x*x=x'")
    p.set_defaults(run=cmd_check_identity)

    p = sub.add_parser("pv-member", help="pseudovariety membership of an algebra")
    p.add_argument("file")
    p.add_argument("--spec", required=True, help="e.g. 'aperiodic & commutative', 'gen: z2.alg'")
    p.set_defaults(run=cmd_pv_member)

    p = sub.add_parser("subdirect", help="subdirect product of quotient files")
    p.add_argument("quotients", nargs="+", metavar="FILE")
    p.set_defaults(run=cmd_subdirect)

    p = sub.add_parser("free", help="enumerate elements of a free algebra")
    p.add_argument("--backend", required=True, metavar="SPEC")
    p.add_argument("--bound", type=int, default=2)
    p.set_defaults(run=cmd_free)

    p = sub.add_parser("lan-check", help="closure check for a family of languages")
    _add_language_options(p)
    p.add_argument("--mode", choices=("boolean", "lattice"), default="boolean")
    p.add_argument("--subst", action="append", metavar="MAP",
                   help="preimage substitution such as 'a->ab,b->b' (repeatable)")
    p.add_argument("--no-derivatives", action="store_true")
    p.set_defaults(run=cmd_lan_check)

    p = sub.add_parser("eilenberg-roundtrip-ps", help="check Ps = Ps_{Lan_Ps} exhaustively")
    p.add_argument("--spec", required=True)
    p.add_argument("--alphabet", required=True)
    p.add_argument("--kind", default="monoid", help="backend kind (default monoid)")
    p.add_argument("--max-size", type=int, default=3)
    p.set_defaults(run=cmd_roundtrip_ps)

    p = sub.add_parser("eilenberg-roundtrip-lan", help="check Lan = Lan_{Ps_Lan} for seeds")
    _add_language_options(p)
    p.add_argument("--subst-bound", type=int, default=2)
    p.add_argument("--max-family", type=int, default=MAX_FAMILY)
    p.set_defaults(run=cmd_roundtrip_lan)

    p = sub.add_parser("closure", help="family generated under derivatives and Boolean operations")
    _add_language_options(p)
    p.add_argument("--max-family", type=int, default=MAX_FAMILY)
    p.add_argument("--list", action="store_true", help="describe every member")
    p.set_defaults(run=cmd_closure)
    return parser


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
        err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except AlgebraError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
