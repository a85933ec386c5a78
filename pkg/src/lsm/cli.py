"""``lsm`` command line: evaluate, simulate and the bundled test cases."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

from lsm.report import aggregate, evaluate_trace, format_summary, format_table
from lsm.scenario_io import ScenarioError, ScenarioFile, parse_scenario, write_results, write_scenario
from lsm.sensor import sense_sequence

log = logging.getLogger("lsm")

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2
TEST_CASES = ("cs", "c1", "c2", "c3")


def _derived_path(src: Path, suffix: str) -> Path:
    name = src.name
    stem = name[: -len(".scenario.json")] if name.endswith(".scenario.json") else src.stem
    return src.with_name(stem + suffix)


def _load(path: Path, strict: bool) -> ScenarioFile | int:
    try:
        data = path.read_bytes()
    except OSError as exc:
        log.error("%s: cannot read: %s", path, exc.strerror or exc)
        return EXIT_IO
    try:
        sf = parse_scenario(data, strict=strict)
    except ScenarioError as exc:
        for issue in exc.issues:
            log.error("%s: %s", path, issue)
        return EXIT_INVALID
    for issue in sf.warnings:
        log.warning("%s: %s", path, issue)
    return sf


def _frames(sf: ScenarioFile):
    if sf.frames is not None:
        return list(sf.frames)
    return sense_sequence(sf.lane, sf.trajectory, sf.sensor)


def _write(out: str, payload: bytes) -> int:
    if out == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        return EXIT_OK
    try:
        Path(out).write_bytes(payload)
    except OSError as exc:
        log.error("%s: cannot write: %s", out, exc.strerror or exc)
        return EXIT_IO
    return EXIT_OK


def cmd_evaluate(scenario_path: str, out: str | None = None, fmt: str = "csv", strict: bool = False) -> int:
    path = Path(scenario_path)
    sf = _load(path, strict)
    if isinstance(sf, int):
        return sf
    results = evaluate_trace(sf.lane, _frames(sf), sf.eval_config)
    if not results:
        log.error("%s: scenario has no frames", path)
        return EXIT_INVALID
    for r in results:
        if r.safety.error:
            log.warning("%s: frame %d: %s", path, r.frame_index, r.safety.error)
    summary = aggregate(results, sf.name or path.name)
    out = out or str(_derived_path(path, f".results.{fmt}"))
    status = _write(out, write_results(results, fmt))
    print(format_summary(summary), file=sys.stderr if out == "-" else sys.stdout)
    return status


def cmd_simulate(scenario_path: str, out: str | None = None, strict: bool = False) -> int:
    path = Path(scenario_path)
    sf = _load(path, strict)
    if isinstance(sf, int):
        return sf
    if sf.trajectory is None or sf.sensor is None:
        log.error("%s: simulate needs a scenario with 'trajectory' and 'sensor'", path)
        return EXIT_INVALID
    frames = sense_sequence(sf.lane, sf.trajectory, sf.sensor)
    trace = replace(sf, frames=tuple(frames), trajectory=None, sensor=None)
    out = out or str(_derived_path(path, ".frames.scenario.json"))
    return _write(out, write_scenario(trace, compact=True))


def fixture_bytes(name: str) -> bytes:
    return resources.files("lsm.fixtures").joinpath(f"{name}.scenario.json").read_bytes()


def cmd_test_cases() -> int:
    summaries = []
    for name in TEST_CASES:
        sf = parse_scenario(fixture_bytes(name))
        results = evaluate_trace(sf.lane, _frames(sf), sf.eval_config)
        summaries.append(aggregate(results, name))
    print(format_table(summaries))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lsm", description="Lane Safety Metric evaluation toolkit")
    parser.add_argument("--test-cases", action="store_true", help="same as the test-cases command")
    sub = parser.add_subparsers(dest="command")

    ev = sub.add_parser("evaluate", help="score a scenario's frames")
    ev.add_argument("file")
    ev.add_argument("-o", "--out", help="results path ('-' for stdout)")
    ev.add_argument("--format", choices=("csv", "json"), default="csv")
    ev.add_argument("--strict", action="store_true", help="treat warnings as errors")

    sim = sub.add_parser("simulate", help="synthesise a detection trace with the sensor model")
    sim.add_argument("file")
    sim.add_argument("-o", "--out", help="output scenario path ('-' for stdout)")
    sim.add_argument("--strict", action="store_true")

    sub.add_parser("test-cases", help="run the bundled C_S, C_1, C_2, C_3 cases")
    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("LSM_LOG", "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        level = "WARNING"
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None and not args.test_cases:
        parser.error("a command is required")
    if args.command == "evaluate":
        return cmd_evaluate(args.file, args.out, args.format, args.strict)
    if args.command == "simulate":
        return cmd_simulate(args.file, args.out, args.strict)
    return cmd_test_cases()


if __name__ == "__main__":
    sys.exit(main())
