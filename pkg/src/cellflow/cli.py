"""Command-line interface.

Exit codes: 0 success; 1 usage error (bad flags, unknown sheet/block);
2 workbook could not be loaded; 3 `smells --fail-on-smell` found smells.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CellflowError, IngestError, UnknownBlock, UnknownSheet
from .export import graph_to_dot, to_dgml, to_json, view_to_dot
from .graph import GLOBAL_LEVEL, formula_view, global_view, worksheet_view
from .pipeline import analyze_path
from .smells import SmellConfig


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cellflow", description="Spreadsheet dataflow analyzer")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("input", help="workbook: .xlsx archive or fixture JSON (sniffed by content)")
        p.add_argument("-o", "--output", help="output path (default: stdout)")

    p_analyze = sub.add_parser("analyze", help="write the full graph document (JSON)")
    add_common(p_analyze)
    _add_smell_options(p_analyze)

    p_view = sub.add_parser("view", help="write one view of the dataflow diagram")
    add_common(p_view)
    p_view.add_argument(
        "--level",
        required=True,
        help="global | worksheet:<name> | formula:<sheet>:<block>",
    )
    p_view.add_argument("--format", choices=("dot", "dgml"), default="dot")
    p_view.add_argument("--linear-widths", action="store_true", help="linear instead of log edge widths")

    p_smells = sub.add_parser("smells", help="report structure smells")
    add_common(p_smells)
    p_smells.add_argument("--format", choices=("text", "json"), default="text")
    _add_smell_options(p_smells)
    p_smells.add_argument("--fail-on-smell", action="store_true", help="exit 3 when smells are found")

    p_export = sub.add_parser("export", help="write the full leveled graph")
    add_common(p_export)
    p_export.add_argument("--format", choices=("dgml", "dot", "json"), default="json")
    p_export.add_argument("--linear-widths", action="store_true")
    _add_smell_options(p_export)
    return parser


def _add_smell_options(p):
    p.add_argument("--heavy-abs", type=int, default=20, metavar="N", help="absolute coupling threshold")
    p.add_argument("--heavy-rel", type=float, default=0.3, metavar="F", help="relative coupling threshold")
    p.add_argument("--report-empty-sheets", action="store_true")


def _smell_config(args) -> SmellConfig:
    try:
        return SmellConfig(
            heavy_abs_min=args.heavy_abs,
            heavy_rel_min=args.heavy_rel,
            report_empty_sheets=args.report_empty_sheets,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _parse_level(selector: str) -> tuple:
    if selector == "global":
        return GLOBAL_LEVEL
    kind, _, rest = selector.partition(":")
    if kind == "worksheet" and rest:
        return ("worksheet", rest)
    if kind == "formula" and rest:
        sheet, _, block = rest.partition(":")
        if sheet and block:
            return ("formula", sheet, block)
    raise _UsageError(f"bad --level selector: {selector!r}")


def _select_view(analysis, level: tuple):
    if level == GLOBAL_LEVEL:
        return global_view(analysis.graph)
    if level[0] == "worksheet":
        return worksheet_view(analysis.graph, level[1])
    return formula_view(analysis.graph, level[1], level[2])


def _dgml_hints(analysis, level: tuple) -> dict[str, str]:
    hints: dict[str, str] = {}
    if level == GLOBAL_LEVEL:
        for node in analysis.graph.sheet_nodes():
            hints[node.id] = "Collapsed"
        return hints
    sheet = level[1]
    target = None
    for node in analysis.graph.sheet_nodes():
        if node.label.casefold() == sheet.casefold():
            target = node
            hints[node.id] = "Expanded"
        else:
            hints[node.id] = "Collapsed"
    if target is None:
        raise UnknownSheet(sheet)
    if level[0] == "formula":
        view = formula_view(analysis.graph, level[1], level[2])  # validates the block
        hints[f"block:{view.level[2]}"] = "Expanded"
    return hints


def _smell_lines(smells) -> str:
    return "".join(f"{s.kind}: {s.message}\n" for s in smells)


def _smells_json(smells) -> str:
    payload = [
        {"kind": s.kind, "subjects": list(s.subjects), "metrics": s.metrics, "message": s.message}
        for s in smells
    ]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"cellflow: error: {exc}", file=sys.stderr)
        return 1

    try:
        analysis = analyze_path(args.input)
    except FileNotFoundError as exc:
        print(f"cellflow: error: {exc}", file=sys.stderr)
        return 2
    except IngestError as exc:
        print(f"cellflow: error: {args.input}: {exc}", file=sys.stderr)
        return 2

    scale = "linear" if getattr(args, "linear_widths", False) else "log"
    try:
        if args.command == "analyze":
            _emit(to_json(analysis.graph, analysis.smells(_smell_config(args))), args.output)
        elif args.command == "view":
            level = _parse_level(args.level)
            if args.format == "dot":
                _emit(view_to_dot(_select_view(analysis, level), scale), args.output)
            else:
                _emit(to_dgml(analysis.graph, _dgml_hints(analysis, level)), args.output)
        elif args.command == "smells":
            smells = analysis.smells(_smell_config(args))
            if args.format == "text":
                if smells:
                    _emit(_smell_lines(smells), args.output)
                else:
                    print("no structure smells found", file=sys.stderr)
                    _emit("", args.output)
            else:
                _emit(_smells_json(smells), args.output)
            if args.fail_on_smell and smells:
                return 3
        elif args.command == "export":
            config = _smell_config(args)
            if args.format == "json":
                _emit(to_json(analysis.graph, analysis.smells(config)), args.output)
            elif args.format == "dgml":
                _emit(to_dgml(analysis.graph), args.output)
            else:
                _emit(graph_to_dot(analysis.graph, scale), args.output)
    except _UsageError as exc:
        print(f"cellflow: error: {exc}", file=sys.stderr)
        return 1
    except (UnknownSheet, UnknownBlock) as exc:
        print(f"cellflow: error: {exc}", file=sys.stderr)
        return 1
    except CellflowError as exc:
        print(f"cellflow: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
