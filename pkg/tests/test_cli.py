import io
import subprocess
import sys
from pathlib import Path

import pytest

from algaut.cli import run

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "demos" / "data"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate():
    code, out, _ = cli("validate", DATA / "z2.alg", "--variety", "monoid")
    assert code == 0
    assert out.splitlines()[1:] == ["in variety monoid", "ok"]


def test_validate_violation():
    code, out, _ = cli("validate", DATA / "flipflop.alg", "--variety", "commutative")
    assert code == 1
    assert out.splitlines()[-1] == "violation: x*y = y*x fails at x=1, y=2"


def test_syntactic_even_a():
    code, out, _ = cli("syntactic", "--lang", DATA / "even_a.lang")
    assert code == 0
    assert out == """\
syntactic algebra over monoid:ab
size: 2
op e = ε
op mul:
    | ε a
  ε | ε a
  a | a ε
accepting: ε
representatives: ε a
"""


def test_syntactic_ordered():
    code, out, _ = cli("syntactic", "--lang", DATA / "starts_with_a.lang", "--ordered")
    assert code == 0
    assert out.endswith("""\
accepting: a
representatives: ε a b
order (accepting set is an up-set):
  ε <= a
  b <= ε
""")


def test_syntactic_ordered_flip():
    _, out, _ = cli("syntactic", "--backend", "monoid:a", "--regex", "()", "--ordered", "--flip")
    assert out.endswith("order (accepting set is a down-set):\n  ε <= a\n")


def test_syntactic_empty_word_order():
    _, out, _ = cli("syntactic", "--backend", "monoid:a", "--regex", "()", "--ordered")
    assert out.endswith("  a <= ε\n")


def test_syntactic_dot():
    code, out, _ = cli("syntactic", "--backend", "monoid:a", "--regex", "(aa)*", "--format", "dot")
    assert code == 0
    assert out == """\
digraph cayley {
  n0 [label="ε"];
  n1 [label="a"];
  n0 -> n1 [label="a"];
  n1 -> n0 [label="a"];
}
"""


def test_check_identity():
    code, out, _ = cli("check-identity", DATA / "flipflop.alg", "--eq", "x*(y*z)=(x*y)*z; x*y=y*x")
    assert (code, out) == (1, "fails: x*y = y*x at x=p, y=q\n")
    code, out, _ = cli("check-identity", DATA / "z3.alg", "--eq", "x*y=y*x")
    assert (code, out) == (0, "holds: x*y=y*x\n")


def test_pv_member():
    code, out, _ = cli("pv-member", DATA / "u1.alg", "--spec", "aperiodic & commutative")
    assert (code, out) == (0, "member of aperiodic & commutative\n")
    code, out, _ = cli("pv-member", DATA / "z2.alg", "--spec", "aperiodic")
    assert code == 1 and out.startswith("not a member of aperiodic: powers of 1 never stabilize")


def test_pv_member_generated():
    code, out, _ = cli("pv-member", DATA / "z3.alg", "--spec", f"gen: {DATA / 'z2.alg'}")
    assert code == 1 and "relatively free algebra (size 2)" in out


def test_subdirect():
    code, out, _ = cli("subdirect", DATA / "parity_a.quot", DATA / "parity_b.quot")
    assert code == 0
    assert out == """\
subdirect product of 2 quotients over monoid:ab
size: 4
op e = ε
op mul:
     |  ε  a  b ab
   ε |  ε  a  b ab
   a |  a  ε ab  b
   b |  b ab  ε  a
  ab | ab  b  a  ε
genmap: a->a b->b
"""


def test_free():
    code, out, _ = cli("free", "--backend", "bounded(1):a")
    assert (code, out) == (0, "2 elements of bounded(1):a with size <= 2\n0\na\n")


def test_lan_check_reports_preimage():
    code, out, _ = cli("lan-check", "--backend", "monoid:ab", "--regex", "a*", "--regex", "b*",
                       "--subst", "a->b,b->a", "--no-derivatives", "--mode", "lattice")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "family of 2 languages, mode lattice, derivatives off, 1 substitutions"
    assert lines[-1] == f"{len(lines) - 2} violations"
    assert any(line.startswith("violation: union: union of members 0 and 1") for line in lines)


def test_lan_check_bad_subst():
    code, _, err = cli("lan-check", "--backend", "monoid:ab", "--regex", "a*", "--subst", "a->b")
    assert code == 2 and "lacks letters" in err


def test_roundtrip_ps():
    code, out, _ = cli("eilenberg-roundtrip-ps", "--spec", "aperiodic", "--alphabet", "a")
    assert code == 0
    assert out == """\
round trip Ps = Ps_{Lan_Ps}
  spec: aperiodic
  backend: monoid:a
  codomain size <= 3
  quotients checked: 6
  members: 3
0 violations
"""


def test_roundtrip_lan():
    code, out, _ = cli("eilenberg-roundtrip-lan", "--backend", "monoid:a", "--regex", "(aa)*",
                       "--subst-bound", "1")
    assert code == 0
    assert "  tested: a->ε; a->a\n" in out
    assert out.endswith("atoms quotient size: 2\n0 violations\n")


def test_closure_list():
    code, out, _ = cli("closure", "--backend", "monoid:a", "--regex", "(aa)*", "--list")
    assert code == 0
    assert out == """\
generated family: 4 languages
  0: syntactic size 1, accepting classes of {}
  1: syntactic size 2, accepting classes of {ε}
  2: syntactic size 2, accepting classes of {a}
  3: syntactic size 1, accepting classes of {ε}
"""


@pytest.mark.parametrize("argv,message", [
    (["bogus"], "invalid choice"),
    (["syntactic"], "no languages given"),
    (["syntactic", "--regex", "a"], "--regex needs --backend"),
    (["syntactic", "--backend", "group:a", "--regex", "a"], "needs a monoid backend"),
    (["syntactic", "--backend", "monoid:a", "--regex", "(a"], "position 2"),
    (["validate", "/nonexistent.alg"], "cannot read"),
    (["free", "--backend", "ring:a"], "unknown backend kind"),
])
def test_input_errors_exit_2(argv, message):
    code, _, err = cli(*argv)
    assert code == 2
    assert err.startswith("error: ") and message in err


def test_bad_file_reports_location(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("signature: e/0 mul/2\nsize: 2\nop e = 0\nop mul:\n0 1\n1 7\n")
    code, _, err = cli("validate", bad)
    assert code == 2 and f"{bad}:6: entry 7 out of range" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "algaut", "free", "--backend", "monoid:a",
                           "--bound", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2 elements of monoid:a with size <= 1\nε\na\n"
