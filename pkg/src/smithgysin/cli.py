"""Command-line front end.

::

    smithgysin check FILE|-         run the checks declared in a diagram file
    smithgysin catalog              verify every shipped action instance
    smithgysin verify NAME          verify one instance (catalog or --file)
    smithgysin splice NAME --pivot E|F

Every command takes ``--format text|structured``.  Exit status is 0 when
all checks pass, 1 when some check fails and 2 on parse or structural errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fileformat import Check, DiagramFile, FormatError, parse_file, parse_text, serialize
from .instances import catalog
from .runner import Report, error_report, run


def _load(path: str) -> DiagramFile:
    if path == "-":
        return parse_text(sys.stdin.read(), "<stdin>")
    return parse_file(path)


def _emit(report: Report, fmt: str) -> int:
    if fmt == "structured":
        sys.stdout.write(json.dumps(report.as_dict(), indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(report.text())
    return report.exit_code


def _run_file(path: str | None, checks: list[Check], source: str) -> Report:
    """Run ``checks`` against the objects of ``path`` (or no objects)."""
    if path is None:
        return run(DiagramFile({}, checks, source=source))
    diagram = _load(path)
    return run(DiagramFile(diagram.objects, checks, source=diagram.source))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smithgysin", description="Exact verification of cohomology "
                                     "long exact sequences, braids and Smith-Gysin sequences.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "structured"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[fmt], help="run the checks declared in a diagram file")
    p.add_argument("file", help="path to a YAML/JSON diagram file, or - for standard input")

    p = sub.add_parser("catalog", parents=[fmt], help="verify every shipped action instance")
    p.add_argument("--export", action="store_true", help="print the catalog as a diagram file instead")

    p = sub.add_parser("verify", parents=[fmt], help="verify one action instance")
    p.add_argument("name")
    p.add_argument("--file", help="look the instance up in this diagram file instead of the catalog")

    p = sub.add_parser("splice", parents=[fmt], help="splice a braid into a long sequence and check it")
    p.add_argument("name", help="a braid, double-ses or action instance")
    p.add_argument("--pivot", choices=("E", "F"), required=True)
    p.add_argument("--file", help="look the braid up in this diagram file instead of the catalog")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    source = getattr(args, "file", None) or args.command
    try:
        if args.command == "check":
            report = run(_load(args.file))
        elif args.command == "catalog":
            if args.export:
                objects = {inst.name: inst for inst in catalog()}
                checks = [Check("verify-instance", name) for name in objects]
                fmt = "json" if args.format == "structured" else "yaml"
                sys.stdout.write(serialize(objects, checks, fmt))
                return 0
            report = _run_file(None, [Check("catalog")], "catalog")
        elif args.command == "verify":
            report = _run_file(args.file, [Check("verify-instance", args.name)], source)
        else:
            report = _run_file(args.file, [Check("braid-splice", args.name, {"pivot": args.pivot})], source)
    except (OSError, FormatError) as e:
        report = error_report(source, e)
    return _emit(report, args.format)


if __name__ == "__main__":
    sys.exit(main())
