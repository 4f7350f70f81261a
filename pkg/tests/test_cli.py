import io
import json
import subprocess
import sys

import pytest

from golden_cases import FIXTURES, GOLDEN, ROOT, cases, render
from thcarrows.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, InputError, parse_document, run

FAST = [c for c in cases() if c[0] != "thc_finset3"]


def call(args, text=None, fixture=None):
    out, err = io.StringIO(), io.StringIO()
    if fixture is not None:
        args = [*args, "--input", str(FIXTURES / f"{fixture}.thc")]
    if text is not None:
        stdin = sys.stdin
        sys.stdin = io.StringIO(text)
        try:
            code = run(args, out, err)
        finally:
            sys.stdin = stdin
    else:
        code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,args,fixture", FAST, ids=[c[0] for c in FAST])
def test_golden(name, args, fixture, monkeypatch):
    monkeypatch.chdir(ROOT)
    assert render(args, fixture) == (GOLDEN / f"{name}.out").read_text()


def test_exit_codes_of_examples():
    assert call(["verify-thc"], fixture="thc_finset2")[0] == EXIT_OK
    code, out, _ = call(["verify-thc"], fixture="thc_corrupt")
    assert code == EXIT_FAIL and "FAIL bijection-left[P,P,D]" in out
    assert call(["verify-thc"], fixture="thc_empty")[0] == EXIT_OK
    code, _, err = call(["leibniz"], fixture="bad_table")
    assert code == EXIT_INPUT and err.startswith("input error: line 6:")


def test_corner_report():
    code, out, _ = call(["leibniz"], fixture="leibniz_corner")
    assert code == 0
    assert "domain: po[3] size 3" in out and "codomain: (2x2) size 4" in out


def test_identity_flagged_and_empty_domain():
    assert "isomorphism: yes" in call(["leibniz"], fixture="leibniz_identity")[1]
    assert "empty domain" in call(["leibniz"], fixture="leibniz_empty")[1]


def test_machine_records():
    code, out, _ = call(["lift", "--machine"], fixture="lift_equiv")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(records) == 64
    assert all(set(r) == {"check", "status", "witness"} and r["status"] == "pass" for r in records)


def test_param_override_and_instance_flag():
    code, out, _ = call(["leibniz", "--param", "which=rhom", "--param", "g=f"], fixture="leibniz_corner")
    assert code == 0 and "pullback-rhom" in out
    code, out, _ = call(["leibniz", "--instance", "poset"], fixture="leibniz_corner")
    assert code == 0 and "universal property against 2 test objects: ok" in out


def test_stdin_input():
    text = (FIXTURES / "saturate_empty.thc").read_text()
    code, out, _ = call(["saturate"], text=text)
    assert code == 0 and "members: 4" in out


@pytest.mark.parametrize(
    "text,needle",
    [
        ("OBJECTS\nA 1\n", "missing FORMAT"),
        ("FORMAT 2\n", "line 1: unsupported format 2"),
        ("FORMAT 1\nA 1\n", "line 2: 'A' appears before any section header"),
        ("FORMAT 1\nOBJECTS\nA x\n", "line 3: object size must be an integer"),
        ("FORMAT 1\nOBJECTS\nA 1\nA 2\n", "line 4: object 'A' declared twice"),
        ("FORMAT 1\nOBJECTS\nA 2 0<1\n", "line 3: order pairs are only allowed for posets"),
        ("FORMAT 1\nOBJECTS\nA 1\nMORPHISMS\nf A B 0\n", "line 5: morphism 'f' refers to unknown object 'B'"),
        ("FORMAT 1\nOBJECTS\nA 1\nMORPHISMS\nf A A 0 0\n", "line 5: morphism 'f': table of length 2"),
        ("FORMAT 1\nOBJECTS\nA 1\nCLASSES\nK nope\n", "line 5: class 'K' refers to unknown member 'nope'"),
        ("FORMAT 1\nINSTANCE groups\n", "unknown instance 'groups'"),
        ("FORMAT 1\nINSTANCE poset\nOBJECTS\nA 2 0<5\n", "line 4: order pair 0<5 is outside 0..1"),
    ],
)
def test_parse_errors_are_line_precise(text, needle):
    with pytest.raises(InputError) as info:
        parse_document(text)
    assert needle in str(info.value)


def test_command_errors_exit_two():
    doc = "FORMAT 1\nOBJECTS\nA 1\nMORPHISMS\nf A A 0\nCOMMANDPARAMS\nwhich sideways\nf f\nu f\n"
    code, _, err = call(["leibniz"], text=doc)
    assert code == EXIT_INPUT and "line 7: which must be prod, lhom or rhom" in err
    code, _, err = call(["leibniz"], text=doc.replace("which sideways\n", ""))
    assert code == EXIT_INPUT and "missing command parameter 'which'" in err
    code, _, err = call(["lift"], fixture="lift_noncommuting")
    assert code == EXIT_INPUT and "does not commute" in err
    code, _, err = call(["closure"], fixture="closure_strict")
    assert code == EXIT_INPUT and err.startswith("universe escape:")
    code, _, err = call(["saturate", "--input", "/nonexistent/doc.thc"])
    assert code == EXIT_INPUT and "cannot read" in err


def test_self_referential_class():
    doc = "FORMAT 1\nOBJECTS\nA 1\nCLASSES\nK L\nL K\nCOMMANDPARAMS\nclass K\n"
    code, _, err = call(["saturate"], text=doc)
    assert code == EXIT_INPUT and "defined in terms of itself" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "thcarrows", "wfs", "--input", str(FIXTURES / "wfs_iso_all.thc")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.endswith("status: pass\n")
