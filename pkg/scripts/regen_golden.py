"""Rewrite tests/golden/expected/ from the current CLI.

Review the diff before committing; the golden test trusts these files.

    python scripts/regen_golden.py
"""

import os
from pathlib import Path

from possprob.cli import capture

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def cases():
    for line in (GOLDEN / "cases.txt").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            name, args = (part.strip() for part in line.split("|", 1))
            yield name, args.split()


def render(argv) -> str:
    out, err, code = capture(argv)
    text = out
    if err:
        text += "--- stderr ---\n" + err
    return text + f"--- exit {code} ---\n"


def main():
    os.chdir(GOLDEN)
    for name, argv in cases():
        (GOLDEN / "expected" / f"{name}.txt").write_text(render(argv), encoding="utf-8")
        print(name)


if __name__ == "__main__":
    main()
