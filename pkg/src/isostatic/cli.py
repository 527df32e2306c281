"""Command-line interface.

Every subcommand reads the shared graph JSON (``-`` is standard input) and
writes JSON to standard output or ``-o``.  Outputs are documents that keep
the graph and add keys (``sequence``, ``placement``, ``verification``), so
the commands compose into pipelines.

Exit codes: 0 success, 1 domain failure with a JSON diagnostic, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, TextIO

from . import io as jio
from .henneberg import StepError, build_sequence, random_decomposition
from .realise2d import StepFailure, realise, realise_sequence
from .sparsity import (
    DecompositionError,
    TightnessCertificate,
    check_tight,
    decompose,
    verify_decomposition,
)
from .svg import render_svg
from .symmetry import SymmetryError, random_symmetric_decomposition, realise_cs, validate_symmetric
from .verify import is_realisation_of


class UsageError(Exception):
    """Bad input file or arguments; exit code 2."""


class DomainFailure(Exception):
    """A well-formed request whose answer is negative; exit code 1."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "failure"))
        self.payload = payload


def _read(path: str, stdin: TextIO) -> Any:
    try:
        text = stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _certificate_json(cert: TightnessCertificate) -> dict:
    return {
        "verdict": cert.verdict,
        "witness": sorted(cert.witness) if cert.witness is not None else None,
        "reason": cert.reason,
    }


def _verification(dec, pl) -> dict:
    report = is_realisation_of(dec, pl)
    out = report.to_json()
    if report.bad_pair is not None:
        u, w = report.bad_pair
        out["bad_edges"] = dec.graph.edges_between(u, w)
    return out


def cmd_check_tight(args, stdin) -> Any:
    g, _, _ = jio.graph_from_json(_read(args.input, stdin))
    cert = check_tight(g, args.d)
    if not cert.tight:
        raise DomainFailure(_certificate_json(cert))
    return {"verdict": "tight"}


def cmd_decompose(args, stdin) -> Any:
    doc = _read(args.input, stdin)
    g, _, theta = jio.graph_from_json(doc)
    got = decompose(g, args.d)
    if isinstance(got, TightnessCertificate):
        raise DomainFailure(_certificate_json(got))
    return jio.decomposition_to_json(got, theta)


def _load_dec(doc: Any, d: int):
    dec = jio.decomposition_from_json(doc, d)
    if not verify_decomposition(dec):
        raise DomainFailure({"error": "tree labels do not form a decomposition into spanning trees"})
    return dec


def cmd_sequence(args, stdin) -> Any:
    doc = _read(args.input, stdin)
    dec = _load_dec(doc, args.d)
    seq = build_sequence(dec, args.seed)
    out = dict(doc)
    out["sequence"] = jio.sequence_to_json(seq)
    return out


def cmd_realise(args, stdin) -> Any:
    doc = _read(args.input, stdin)
    dec = _load_dec(doc, args.d)
    if dec.d != 2:
        raise UsageError("realise needs --d 2")
    out = dict(doc)
    if "sequence" in doc:
        seq = jio.sequence_from_json(doc["sequence"], dec)
        pl = realise_sequence(seq)
        report = _verification(dec, pl)
        if not report["infinitesimally_isostatic"]:
            pl = realise(dec).placement
            report = _verification(dec, pl)
    else:
        res = realise(dec)
        pl = res.placement
        out["sequence"] = jio.sequence_to_json(res.sequence)
        report = _verification(dec, pl)
    out["placement"] = jio.placement_to_json(pl)
    out["verification"] = report
    if not report["infinitesimally_isostatic"]:
        raise DomainFailure({"error": "realisation failed verification", "verification": report})
    return out


def _placement_of(obj: Any) -> Any:
    if isinstance(obj, dict) and "placement" in obj:
        return jio.placement_from_json(obj["placement"])
    return jio.placement_from_json(obj)


def _verify_doc(doc: Any, place: Any, d: int) -> dict:
    dec = jio.decomposition_from_json(doc, d)
    pl = _placement_of(place if place is not None else doc)
    return _verification(dec, pl)


def cmd_verify(args, stdin) -> Any:
    if args.batch:
        root = Path(args.batch)
        if not root.is_dir():
            raise UsageError(f"{root} is not a directory")
        files = sorted(root.glob("*.json"))
        docs = [(f.name, _read(str(f), stdin)) for f in files]
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(lambda nd: _verify_doc(nd[1], None, args.d), docs))
        out = {"files": {name: rep for (name, _), rep in zip(docs, reports)}}
        if not all(r["infinitesimally_isostatic"] for r in reports):
            raise DomainFailure(out)
        return out
    if args.input is None:
        raise UsageError("verify needs an input file or --batch")
    doc = _read(args.input, stdin)
    place = _read(args.placement, stdin) if args.placement else None
    report = _verify_doc(doc, place, args.d)
    if not report["infinitesimally_isostatic"]:
        raise DomainFailure(report)
    return report


def cmd_realise_sym(args, stdin) -> Any:
    doc = _read(args.input, stdin)
    dec = jio.decomposition_from_json(doc, 2)
    _, _, theta = jio.graph_from_json(doc)
    if theta is None:
        raise UsageError("realise-sym needs a 'symmetry' map")
    sd = validate_symmetric(dec, theta)
    res = realise_cs(sd)
    out = dict(doc)
    out["placement"] = jio.placement_to_json(res.placement)
    out["axis"] = res.axis
    out["verification"] = _verification(dec, res.placement)
    out["reflection_holds"] = res.reflection_holds(theta)
    if res.diagnostics:
        out["diagnostics"] = res.diagnostics
    return out


def cmd_render(args, stdin) -> str:
    doc = _read(args.input, stdin)
    dec = jio.decomposition_from_json(doc, args.d)
    _, _, theta = jio.graph_from_json(doc)
    place = _read(args.placement, stdin) if args.placement else doc
    pl = _placement_of(place)
    report = _verification(dec, pl)
    if not report["infinitesimally_isostatic"] and not args.force:
        raise DomainFailure({"error": "placement does not verify; use --force to draw it", "verification": report})
    if dec.graph.vertices - set(pl):
        raise DomainFailure({"error": "placement misses vertices", "verification": report})
    return render_svg(dec, pl, axis=theta is not None)


def cmd_gen(args, stdin) -> Any:
    if args.n < 1:
        raise UsageError("--n must be positive")
    seed = args.seed if args.seed is not None else 0
    if args.sym:
        if args.n % 2 == 0:
            raise UsageError("symmetric instances have an odd number of vertices")
        sd = random_symmetric_decomposition((args.n - 1) // 2, seed)
        return jio.decomposition_to_json(sd.dec, sd.theta)
    return jio.decomposition_to_json(random_decomposition(args.n, args.d, seed))


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=2, help="number of trees (default 2)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    common.add_argument("--force", action="store_true", help="render even if verification fails")

    p = argparse.ArgumentParser(prog="isostatic", description="Tree decompositions and l-infinity realisations.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("check-tight", "test (d,d)-tightness"),
        ("decompose", "split into d edge-disjoint spanning trees"),
        ("sequence", "construction sequence of a decomposition"),
        ("realise", "certified plane placement of a 2-tree decomposition"),
        ("realise-sym", "reflection-symmetric placement"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("input", help="graph JSON, or - for stdin")
    sp = sub.add_parser("verify", parents=[common], help="check a placement")
    sp.add_argument("input", nargs="?", default=None)
    sp.add_argument("placement", nargs="?", default=None)
    sp.add_argument("--batch", default=None, help="verify every *.json document in a directory")
    sp = sub.add_parser("render", parents=[common], help="draw a placement as SVG")
    sp.add_argument("input")
    sp.add_argument("placement", nargs="?", default=None)
    sp = sub.add_parser("gen", parents=[common], help="random decomposition")
    sp.add_argument("--n", type=int, default=6, help="number of vertices")
    sp.add_argument("--sym", action="store_true", help="reflection-symmetric instance")
    return p


COMMANDS = {
    "check-tight": cmd_check_tight,
    "decompose": cmd_decompose,
    "sequence": cmd_sequence,
    "realise": cmd_realise,
    "verify": cmd_verify,
    "realise-sym": cmd_realise_sym,
    "render": cmd_render,
    "gen": cmd_gen,
}


def _emit(text: str, path: str | None, stdout: TextIO) -> None:
    if path is None:
        stdout.write(text)
    else:
        Path(path).write_text(text)


def run(argv: list[str], stdin: TextIO | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.command](args, stdin)
        text = result if isinstance(result, str) else _dumps(result)
        _emit(text, args.output, stdout)
        return 0
    except DomainFailure as exc:
        stdout.write(_dumps(exc.payload))
        return 1
    except (StepError, StepFailure, DecompositionError) as exc:
        stdout.write(_dumps({"error": str(exc), "kind": type(exc).__name__}))
        return 1
    except SymmetryError as exc:
        stdout.write(_dumps({"error": str(exc), "kind": "SymmetryError", "clause": exc.clause}))
        return 1
    except (UsageError, jio.FormatError, OSError) as exc:
        stderr.write(f"isostatic: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
