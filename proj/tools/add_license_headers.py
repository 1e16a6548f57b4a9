#!/usr/bin/env python3
"""Prepends "// <relpath>" and the license header to every C++ source."""

import argparse
import pathlib

ROOTS = ("include", "src", "tests", "tools")
SUFFIXES = {".h", ".cc"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repo", default=pathlib.Path(__file__).resolve().parent.parent, type=pathlib.Path)
    ap.add_argument("--header", default=None, type=pathlib.Path)
    ap.add_argument("--check", action="store_true", help="list files missing a header and exit nonzero")
    args = ap.parse_args()
    header = (args.header or args.repo / "tools" / "license_header.txt").read_text().rstrip("\n") + "\n"
    missing = []
    for root in ROOTS:
        for path in sorted((args.repo / root).rglob("*")):
            if path.suffix not in SUFFIXES or not path.is_file():
                continue
            rel = path.relative_to(args.repo).as_posix()
            text = path.read_text()
            stamp = f"// {rel}\n\n{header}\n"
            if text.startswith(stamp):
                continue
            missing.append(rel)
            if not args.check:
                path.write_text(stamp + text)
    if args.check:
        for rel in missing:
            print(rel)
        raise SystemExit(1 if missing else 0)


if __name__ == "__main__":
    main()
