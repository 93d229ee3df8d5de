"""Command-line entry point.

    lnlab check <scene.json> [--report PATH] [--format text|table]
    lnlab lift <scene.json> <object>
    lnlab examples list
    lnlab examples show <name>
    lnlab examples run <name> [--format text|table]

Global flags: --max-degree N bounds monomial growth, --seed N seeds the
randomized property checks.  Exit codes: 0 all verdicts pass, 1 some verdict
failed, 2 malformed input, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .poly import GrowthLimitError, PolyError, set_degree_limit
from .forms import VForm
from .gder import GenDer
from .lifts import cotangent_lift, linearize, tangent_lift
from .catalog import example_names, example_source
from .scene import Report, SceneError, parse_scene, render, run

__all__ = ["main"]

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lnlab",
        description="Exact verification of bracket identities from scene files.")
    parser.add_argument("--version", action="version", version=f"lnlab {__version__}")
    parser.add_argument("--max-degree", type=int, default=None, metavar="N",
                        help="bound on monomial total degree")
    parser.add_argument("--seed", type=int, default=0, metavar="N",
                        help="seed for randomized property checks")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the checks declared in a scene file")
    check.add_argument("scene", help="path to a scene file")
    check.add_argument("--report", metavar="PATH", default=None,
                       help="also write the rendered report to a file")
    check.add_argument("--format", choices=("text", "table"), default="text")

    lift = sub.add_parser("lift", help="print the lift of a scene object")
    lift.add_argument("scene", help="path to a scene file")
    lift.add_argument("object", help="name of an endomorphism or derivation")

    ex = sub.add_parser("examples", help="browse the shipped scene catalog")
    ex.add_argument("action", choices=("list", "show", "run"))
    ex.add_argument("name", nargs="?", default=None)
    ex.add_argument("--format", choices=("text", "table"), default="text")
    return parser


def _emit(report: Report, fmt: str, report_path: str | None) -> int:
    text = render(report, fmt)
    sys.stdout.write(text)
    if report_path is not None:
        with open(report_path, "w") as fh:
            fh.write(text)
    if report.resource_errors:
        return EXIT_RESOURCE
    return EXIT_PASS if report.passed else EXIT_FAIL


def _load_scene(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise SceneError(f"cannot read scene file: {e}") from e
    return parse_scene(text)


def _do_lift(args) -> int:
    scene = _load_scene(args.scene)
    if args.object not in scene.objects:
        raise SceneError(f"scene has no object named '{args.object}'")
    obj = scene.objects[args.object]
    if isinstance(obj, VForm) and obj.degree == 1 and obj.vals == scene.chart.dim:
        for label, lifted in (("tangent lift", tangent_lift(obj)),
                              ("cotangent lift", cotangent_lift(obj))):
            names = lifted.total.chart.coords
            frame = [f"@{c}" for c in names]
            print(f"{label} on chart {names}:")
            print(f"  {lifted.form.render(frame)}")
    elif isinstance(obj, GenDer):
        lifted = linearize(obj)
        names = lifted.total.chart.coords
        frame = [f"@{c}" for c in names]
        print(f"linearization on chart {names}:")
        print(f"  {lifted.form.render(frame)}")
    else:
        raise SceneError(f"object '{args.object}' is not liftable "
                         "(need an endomorphism or a derivation)")
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.max_degree is not None:
        set_degree_limit(args.max_degree)
    try:
        if args.command == "check":
            scene = _load_scene(args.scene)
            return _emit(run(scene, seed=args.seed), args.format, args.report)
        if args.command == "lift":
            return _do_lift(args)
        if args.command == "examples":
            if args.action == "list":
                for name in example_names():
                    print(name)
                return EXIT_PASS
            if args.name is None:
                raise SceneError("example name required")
            try:
                source = example_source(args.name)
            except KeyError:
                raise SceneError(f"unknown example '{args.name}'") from None
            if args.action == "show":
                sys.stdout.write(source)
                return EXIT_PASS
            scene = parse_scene(source)
            return _emit(run(scene, seed=args.seed), args.format, None)
    except SceneError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GrowthLimitError as e:
        print(f"resource bound: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except PolyError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
