"""Command-line front end: ``blf <verb> ...``.

Exit status is 0 on success, 2 on domain errors (inadmissible family
member, failed dual-pair evidence, impossible surgery, discrepancies) and
1 on I/O or parse errors.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog as cat
from .chartforms import DEFAULT_SEED, corner_sum_model_report, focus_focus_model_report
from .diagram import (
    DiagramError,
    DualPairEvidence,
    admits_elliptic_symplectic,
    admits_stable_gcs,
    corner_connected_sum,
    self_connected_sum,
    trade_corner_to_lefschetz,
    trade_lefschetz_to_corner,
    validate,
)
from .homology2 import Cycle
from .io import ParseError, dumps_canonical, parse_diagram, serialize_diagram
from .render import render_svg

EXIT_OK, EXIT_IO, EXIT_DOMAIN = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _load(path: str):
    return parse_diagram(Path(path).read_bytes())


def _emit(data: bytes, out, dest):
    if dest:
        Path(dest).write_bytes(data)
    else:
        out.write(data.decode("utf-8"))


def _json_line(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _ref(text: str) -> str:
    # "A:0" / "B:2" address the first / second diagram
    return text.split(":", 1)[1] if ":" in text else text


def _entry_params(ns) -> dict:
    return {k: getattr(ns, k) for k in ("n", "m", "l", "g", "h") if getattr(ns, k) is not None}


def invariants_json(d) -> dict:
    r = cat.report(d)
    out = r.to_json()
    out.update(genus=d.genus, circles=len(d.circles),
               admits_elliptic_symplectic=admits_elliptic_symplectic(d),
               component_parities=[c.parity for c in d.circles])
    return out


def _cmd_catalog(ns, out):
    if ns.action == "list":
        for name in cat.BLOCK_NAMES + ("X", "Y"):
            out.write(name + "\n")
    elif ns.action == "build":
        if not ns.name:
            raise _UsageError("catalog build needs an entry name")
        e = cat.lookup(ns.name, **_entry_params(ns))
        _emit(serialize_diagram(e.diagram), out, ns.output)
    elif ns.action == "manifest":
        _emit(dumps_canonical(cat.manifest(ns.n_max, ns.m_max)), out, ns.output)
    else:
        if ns.manifest:
            try:
                items = json.loads(Path(ns.manifest).read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
        else:
            items = cat.manifest(ns.n_max, ns.m_max)
        failed = 0
        for item in items:
            res = cat.verify_manifest_item(item)
            failed += not res["pass"]
            out.write(_json_line(res))
        return EXIT_DOMAIN if failed else EXIT_OK
    return EXIT_OK


def _cmd_build(ns, out):
    e = cat.lookup(ns.name, **_entry_params(ns))
    _emit(serialize_diagram(e.diagram), out, ns.output)
    return EXIT_OK


def _cmd_sum(ns, out):
    d1, d2 = _load(ns.first), _load(ns.second)
    r1, r2 = ns.at
    _emit(serialize_diagram(corner_connected_sum(d1, _ref(r1), d2, _ref(r2))), out, ns.output)
    return EXIT_OK


def _cmd_selfsum(ns, out):
    d = _load(ns.diagram)
    r1, r2 = ns.at
    _emit(serialize_diagram(self_connected_sum(d, _ref(r1), _ref(r2))), out, ns.output)
    return EXIT_OK


def _cmd_trade(ns, out):
    d = _load(ns.diagram)
    if ns.direction == "smooth":
        result = trade_corner_to_lefschetz(d, ns.corner, record_cycles=not ns.no_cycles)
    else:
        if ns.assert_dual_pair:
            evidence = True
        elif ns.elliptic_cycle:
            point = next((p for p in d.lefschetz if p.id == ns.lefschetz), None)
            if point is None or point.cycle is None:
                raise DiagramError(f"lefschetz point {ns.lefschetz!r} carries no vanishing cycle")
            a, b = (int(x) for x in ns.elliptic_cycle.split(","))
            evidence = DualPairEvidence(point.cycle, Cycle(a, b), point.basis_tag or "")
        else:
            evidence = None
        result = trade_lefschetz_to_corner(d, ns.lefschetz, ns.circle, evidence)
    _emit(serialize_diagram(result), out, ns.output)
    return EXIT_OK


def _cmd_invariants(ns, out):
    out.write(_json_line(invariants_json(_load(ns.diagram))))
    return EXIT_OK


def _cmd_check(ns, out):
    d = _load(ns.diagram)
    if ns.what == "gcs":
        mode = ns.mode.replace("-", "_")
        out.write(_json_line({"check": "gcs", "mode": mode, "result": admits_stable_gcs(d, mode)}))
    else:
        violations = validate(d)
        out.write(_json_line({"check": "valid", "result": not violations, "violations": violations}))
    return EXIT_OK


def _cmd_render(ns, out):
    _emit(render_svg(_load(ns.diagram)).encode("utf-8"), out, ns.output)
    return EXIT_OK


def _cmd_verify_charts(ns, out):
    seed = ns.seed
    if seed is None:
        seed = int(os.environ.get("BLF_SEED", DEFAULT_SEED))
    reports = [corner_sum_model_report(ns.samples, seed), focus_focus_model_report(ns.samples, seed)]
    for r in reports:
        out.write(_json_line(r.to_json()))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="blf", description="Boundary Lefschetz fibration base diagrams.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def entry_args(sp):
        for flag in ("n", "m", "l", "g", "h"):
            sp.add_argument(f"--{flag}", type=int)
        sp.add_argument("-o", "--output")

    sp = sub.add_parser("catalog", help="building blocks and families")
    sp.add_argument("action", choices=["list", "build", "manifest", "verify"])
    sp.add_argument("name", nargs="?")
    entry_args(sp)
    sp.add_argument("--manifest")
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--m-max", type=int, default=6)
    sp.set_defaults(func=_cmd_catalog)

    sp = sub.add_parser("build", help="same as 'catalog build'")
    sp.add_argument("name")
    entry_args(sp)
    sp.set_defaults(func=_cmd_build)

    sp = sub.add_parser("sum", help="corner connected sum")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--at", nargs=2, required=True, metavar=("A:CORNER", "B:CORNER"))
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_cmd_sum)

    sp = sub.add_parser("selfsum", help="self connected sum")
    sp.add_argument("diagram")
    sp.add_argument("--at", nargs=2, required=True, metavar=("CORNER", "CORNER"))
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_cmd_selfsum)

    sp = sub.add_parser("trade", help="singularity trades")
    sp.add_argument("direction", choices=["smooth", "singularize"])
    sp.add_argument("diagram")
    sp.add_argument("--corner")
    sp.add_argument("--no-cycles", action="store_true")
    sp.add_argument("--lefschetz")
    sp.add_argument("--circle", type=int)
    sp.add_argument("--assert-dual-pair", action="store_true")
    sp.add_argument("--elliptic-cycle", help="elliptic vanishing cycle 'a,b' in the point's basis")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_cmd_trade)

    sp = sub.add_parser("invariants")
    sp.add_argument("diagram")
    sp.set_defaults(func=_cmd_invariants)

    sp = sub.add_parser("check")
    sp.add_argument("what", choices=["gcs", "valid"])
    sp.add_argument("diagram")
    sp.add_argument("--mode", choices=["per-component", "total", "per_component"],
                    default="per-component")
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("render")
    sp.add_argument("diagram")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_cmd_render)

    sp = sub.add_parser("verify-charts")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=_cmd_verify_charts)
    return p


def _validate_args(ns):
    if ns.verb == "trade":
        if ns.direction == "smooth" and ns.corner is None:
            raise _UsageError("trade smooth needs --corner")
        if ns.direction == "singularize" and (ns.lefschetz is None or ns.circle is None):
            raise _UsageError("trade singularize needs --lefschetz and --circle")
    if ns.verb == "verify-charts" and ns.samples < 1:
        raise _UsageError("--samples must be positive")


def run(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        _validate_args(ns)
        return ns.func(ns, out)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_DOMAIN
    except (ParseError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO
    except cat.InadmissibleError as exc:
        err.write(f"inadmissible: {exc} (chi={exc.chi})\n")
        return EXIT_DOMAIN
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
