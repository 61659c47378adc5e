"""Command-line scenario runner.

Subcommands:

* ``run scenario.json [--suite NAME]... [--report out.json] [--parallel N]``
  executes the suites named in the scenario and prints one line per suite.
  Exit code 0 when everything passed, 1 on suite failures, 2 on parse
  errors, 3 on validation errors.
* ``generate --kind KIND --seed S --out FILE [--size N]`` writes a
  deterministic corpus payload (kinds: random-rep, random-complex-action,
  abelian-family).
* ``explain --suite NAME`` prints what a suite checks.

Reports are byte-identical for a fixed scenario, seed set, and package
version: they contain deterministic work counters instead of wall-clock
times.  Wall-clock timings go to stderr under ``--timings``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__, corpus, linmodel, suites
from .errors import (
    EquifixError,
    ScenarioParseError,
    ScenarioValidationError,
    UnsupportedKind,
)
from .linmodel import RealRep, model_from_json
from .simplicial import SimplicialAction


def object_from_json(item):
    """One scenario object, dispatched on its `kind` tag."""
    if not isinstance(item, dict):
        raise ScenarioValidationError(
            f"scenario object must be a JSON object, got {type(item).__name__}")
    kind = item.get("kind")
    if kind == "rep":
        return RealRep.from_json(item)
    if kind in ("disk", "sphere"):
        return model_from_json(item)
    if kind == "complex-action":
        return SimplicialAction.from_json(item)
    if kind == "matrix-group":
        gens = [tuple(tuple(int(v) for v in row) for row in mat)
                for mat in item["generators"]]
        return (item.get("name", "matrix-group"),
                corpus.close_matrix_group(gens))
    if kind == "descent-case":
        model = model_from_json(item["model"])
        return {"fp": linmodel.fingerprint(model),
                "p": int(item["p"]), "lam": int(item["lam"])}
    if kind == "fingerprint":
        model = model_from_json(item["model"])
        return linmodel.fingerprint(model, mu=item.get("mu"))
    raise UnsupportedKind(f"unknown object kind {kind!r}")


def load_scenario(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"scenario {path!r} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ScenarioParseError("scenario root must be a JSON object")
    for key in ("schema_version", "id", "suites"):
        if key not in data:
            raise ScenarioParseError(f"scenario misses required key {key!r}")
    return data


def validate_scenario(data: dict) -> None:
    if data["schema_version"] != suites.SCHEMA_VERSION:
        raise ScenarioValidationError(
            f"unsupported schema_version {data['schema_version']!r} "
            f"(expected {suites.SCHEMA_VERSION})")
    if not isinstance(data["id"], str) or not data["id"]:
        raise ScenarioValidationError("scenario id must be a nonempty string")
    if not isinstance(data["suites"], list) or not data["suites"]:
        raise ScenarioValidationError("scenario needs a nonempty suite list")
    for entry in data["suites"]:
        if not isinstance(entry, dict) or "name" not in entry:
            raise ScenarioValidationError(
                "each suite entry needs at least a name")
        if entry["name"] not in suites.SUITES:
            raise ScenarioValidationError(
                f"unknown suite {entry['name']!r}; available: "
                + ", ".join(sorted(suites.SUITES)))
        if not isinstance(entry.get("params", {}), dict):
            raise ScenarioValidationError("suite params must be an object")
    objects = data.get("objects", {})
    if not isinstance(objects, dict):
        raise ScenarioValidationError("scenario objects must be an object")
    for name, items in objects.items():
        if not isinstance(items, list):
            raise ScenarioValidationError(
                f"scenario object {name!r} must be a list of tagged items")


def deserialize_objects(data: dict) -> dict:
    out = {}
    for name, items in data.get("objects", {}).items():
        try:
            out[name] = [object_from_json(item) for item in items]
        except (KeyError, TypeError, ValueError, EquifixError) as exc:
            raise ScenarioValidationError(
                f"scenario object {name!r} does not deserialize: {exc}")
    return out


def _run_one(entry: dict, objects: dict, raw_objects: dict) -> suites.SuiteResult:
    name = entry["name"]
    try:
        return suites.run_suite(name, entry.get("params", {}), objects)
    except (EquifixError, AssertionError) as exc:
        # A suite crash still carries a runnable reproducer: the original
        # entry plus whatever objects it referenced.
        ref = entry.get("params", {}).get("objects")
        repro = {
            "schema_version": suites.SCHEMA_VERSION,
            "id": f"repro-{name}",
            "objects": {ref: raw_objects[ref]} if ref in raw_objects else {},
            "suites": [entry],
        }
        return suites.SuiteResult(name, False, {}, [
            {"kind": type(exc).__name__, "error": str(exc),
             "reproducer": repro}])


def run_scenario(data: dict, only: list | None = None,
                 parallel: int = 1, timings: bool = False) -> dict:
    validate_scenario(data)
    objects = deserialize_objects(data)
    entries = data["suites"]
    if only:
        present = {e["name"] for e in entries}
        missing = [n for n in only if n not in present]
        if missing:
            raise ScenarioValidationError(
                "suite filter names not in scenario: " + ", ".join(missing))
        entries = [e for e in entries if e["name"] in only]
    raw_objects = data.get("objects", {})
    started = time.perf_counter()
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            futures = [pool.submit(_run_one, e, objects, raw_objects)
                       for e in entries]
            results = [f.result() for f in futures]
    else:
        results = []
        for entry in entries:
            t0 = time.perf_counter()
            results.append(_run_one(entry, objects, raw_objects))
            if timings:
                print(f"# {entry['name']}: {time.perf_counter() - t0:.2f}s",
                      file=sys.stderr)
    if timings:
        print(f"# total: {time.perf_counter() - started:.2f}s",
              file=sys.stderr)
    return {
        "schema_version": suites.SCHEMA_VERSION,
        "scenario_id": data["id"],
        "version": __version__,
        "passed": all(r.passed for r in results),
        "suites": [r.to_json() for r in results],
        "timing": {"work": {r.name: sum(r.counts.values())
                            for r in results}},
    }


def _cmd_run(args) -> int:
    data = load_scenario(args.scenario)
    report = run_scenario(data, only=args.suite or None,
                          parallel=args.parallel, timings=args.timings)
    for row in report["suites"]:
        status = "PASS" if row["passed"] else "FAIL"
        detail = ", ".join(f"{k}={v}" for k, v in row["counts"].items())
        line = f"{row['name']}: {status}"
        if detail:
            line += f" ({detail})"
        if not row["passed"]:
            line += f" [{len(row['failures'])} failures]"
        print(line)
    print(f"scenario {report['scenario_id']}: "
          + ("PASS" if report["passed"] else "FAIL"))
    if args.report:
        payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(payload)
    return 0 if report["passed"] else 1


def _cmd_generate(args) -> int:
    payload = corpus.generate(args.kind, args.seed, args.size)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {len(payload['objects'])} objects to {args.out}")
    return 0


def _cmd_explain(args) -> int:
    if args.suite:
        if args.suite not in suites.EXPLANATIONS:
            raise ScenarioValidationError(
                f"unknown suite {args.suite!r}; available: "
                + ", ".join(sorted(suites.EXPLANATIONS)))
        names = [args.suite]
    else:
        names = sorted(suites.EXPLANATIONS)
    for name in names:
        print(f"{name}:")
        print(f"  {suites.EXPLANATIONS[name]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equifix",
        description="Run verification suites from JSON scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario file")
    run_p.add_argument("scenario", help="path to a scenario JSON file")
    run_p.add_argument("--suite", action="append", metavar="NAME",
                       help="run only this suite (repeatable)")
    run_p.add_argument("--report", metavar="PATH",
                       help="write the JSON report here")
    run_p.add_argument("--parallel", type=int, default=1, metavar="N",
                       help="run suites in N worker threads")
    run_p.add_argument("--timings", action="store_true",
                       help="print wall-clock timings to stderr")

    gen_p = sub.add_parser("generate", help="write a deterministic corpus")
    gen_p.add_argument("--kind", required=True,
                       help="random-rep, random-complex-action, or "
                            "abelian-family")
    gen_p.add_argument("--seed", required=True, type=int)
    gen_p.add_argument("--out", required=True, metavar="PATH")
    gen_p.add_argument("--size", type=int, default=None,
                       help="corpus size (kind-specific default)")

    exp_p = sub.add_parser("explain", help="describe what a suite checks")
    exp_p.add_argument("--suite", metavar="NAME",
                       help="suite name (omit to list all)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "generate": _cmd_generate,
                "explain": _cmd_explain}
    try:
        return handlers[args.command](args)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ScenarioValidationError, UnsupportedKind) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
