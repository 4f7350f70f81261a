"""Golden-file cases for the command line; run as a script to regenerate the files."""

import io
import sys
from pathlib import Path

from thcarrows.cli import run

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"
FIXTURES = ROOT / "fixtures"


def cases():
    out = []
    for line in (GOLDEN / "MANIFEST").read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, args, fixture = (part.strip() for part in line.split("|"))
        out.append((name, args.split(), FIXTURES / f"{fixture}.thc"))
    return out


def render(args, fixture) -> str:
    out, err = io.StringIO(), io.StringIO()
    code = run([*args, "--input", str(fixture.relative_to(ROOT))], out, err)
    return f"exit {code}\n{out.getvalue()}{err.getvalue()}"


if __name__ == "__main__":
    import os

    os.chdir(ROOT)
    wanted = set(sys.argv[1:])
    for name, args, fixture in cases():
        if wanted and name not in wanted:
            continue
        (GOLDEN / f"{name}.out").write_text(render(args, fixture))
        print("wrote", name)
