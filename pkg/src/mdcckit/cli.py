"""Command-line front end: measure states, emit MDCC curves, sample batches,
verify bounds.

Exit codes: 0 ok, 1 usage or I/O error, 2 bound violation found by `verify`.

CSV schema (fixed column order, '\\n' newlines, no quoting):
    state_id,class,alpha,s_a,s_b,s_c,ggm,tangle,discord_score,c_adv,ggm_slack,tangle_slack
Floats are scientific notation with 12 digits after the decimal point; alpha
and discord_score are empty when absent.  The JSON format is one array of
flat objects with the same field names (null for absent values).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import complementarity, states
from .complementarity import BoundReport, MeasureRecord

VERSION = "0.1.0"

CSV_FIELDS = (
    "state_id",
    "class",
    "alpha",
    "s_a",
    "s_b",
    "s_c",
    "ggm",
    "tangle",
    "discord_score",
    "c_adv",
    "ggm_slack",
    "tangle_slack",
)

_CLASS_FLAG = {"haar": "haar", "ghz-class": "ghz_class", "w-class": "w_class"}

_SAMPLERS = {
    "haar": states.haar_random,
    "ghz_class": states.ghz_class_random,
    "w_class": states.w_class_random,
}


@dataclass(frozen=True)
class SampleConfig:
    class_tag: str
    count: int
    base_seed: int
    with_discord: bool = False
    sender: str = "A"
    measured_convention: str = "second"
    output_path: str = "-"
    format: str = "csv"
    jobs: int = 1


class CliError(Exception):
    """Usage or I/O failure; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that
        self.print_usage(sys.stderr)
        raise CliError(message)


# ---------------------------------------------------------------------------
# Serialization.


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12e}"


def record_rows(records) -> list[dict]:
    rows = []
    for r in records:
        rows.append(
            {
                "state_id": r.state_id,
                "class": r.class_tag,
                "alpha": r.alpha,
                "s_a": r.s_a,
                "s_b": r.s_b,
                "s_c": r.s_c,
                "ggm": r.ggm,
                "tangle": r.tangle,
                "discord_score": r.discord_score,
                "c_adv": r.c_adv,
                "ggm_slack": complementarity.ggm_bound_slack(r),
                "tangle_slack": complementarity.tangle_bound_slack(r),
            }
        )
    return rows


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in record_rows(records):
        writer.writerow(
            [row["state_id"], row["class"]]
            + [_fmt(row[f]) for f in CSV_FIELDS[2:]]
        )
    return buf.getvalue()


def records_to_json(records) -> str:
    return json.dumps(record_rows(records), indent=1) + "\n"


def _row_to_record(row: dict) -> MeasureRecord:
    def opt(v):
        if v is None or v == "":
            return None
        return float(v)

    return MeasureRecord(
        state_id=int(row["state_id"]),
        class_tag=str(row["class"]),
        alpha=opt(row.get("alpha")),
        s_a=float(row["s_a"]),
        s_b=float(row["s_b"]),
        s_c=float(row["s_c"]),
        ggm=float(row["ggm"]),
        tangle=float(row["tangle"]),
        discord_score=opt(row.get("discord_score")),
        c_adv=float(row["c_adv"]),
    )


def parse_records_text(text: str, source: str = "<string>") -> list[MeasureRecord]:
    """Parse CSV or JSON record content as emitted by `sample` or `mdcc-curve`."""
    try:
        if text.lstrip().startswith("["):
            rows = json.loads(text)
        else:
            rows = list(csv.DictReader(io.StringIO(text)))
            if not rows or set(CSV_FIELDS) - set(rows[0]):
                raise ValueError("missing or malformed CSV header")
        return [_row_to_record(row) for row in rows]
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"malformed record file {source}: {exc}") from exc


def parse_records(path: str) -> list[MeasureRecord]:
    """Load records from a CSV or JSON file produced by `sample` or `mdcc-curve`."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    return parse_records_text(text, source=path)


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise CliError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Sampling.


def _sample_chunk(args) -> list[MeasureRecord]:
    config, start, stop = args
    sampler = _SAMPLERS[config.class_tag]
    out = []
    for i in range(start, stop):
        psi = sampler(states.substream(config.base_seed, i))
        out.append(
            complementarity.measure_state(
                psi,
                state_id=i,
                class_tag=config.class_tag,
                sender=config.sender,
                with_discord=config.with_discord,
                measured_convention=config.measured_convention,
            )
        )
    return out


def run_sample(config: SampleConfig) -> list[MeasureRecord]:
    """Generate `count` records; output is a pure function of the config.

    Per-index RNG substreams keep the result independent of the worker count.
    """
    if config.count < 1:
        raise CliError("count must be >= 1")
    if config.class_tag not in _SAMPLERS:
        raise CliError(f"unknown sampler class {config.class_tag!r}")
    jobs = max(1, config.jobs)
    if jobs == 1:
        return _sample_chunk((config, 0, config.count))
    chunk = max(1, -(-config.count // (jobs * 4)))
    tasks = [
        (config, lo, min(lo + chunk, config.count))
        for lo in range(0, config.count, chunk)
    ]
    records: list[MeasureRecord] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_sample_chunk, tasks):
            records.extend(part)
    records.sort(key=lambda r: r.state_id)
    return records


def _manifest(config_echo: dict, records, wall_time: float) -> dict:
    reports = complementarity.verify_batch(records)
    return {
        "tool": "mdcckit",
        "version": VERSION,
        "config": config_echo,
        "wall_time_s": wall_time,
        "rows": len(records),
        "violation_summary": {r.bound_name: asdict(r) for r in reports},
    }


# ---------------------------------------------------------------------------
# Subcommands.


def _load_state(args) -> tuple[np.ndarray, str, float | None]:
    given = [x for x in (args.named, args.mdcc, args.file) if x is not None]
    if len(given) != 1:
        raise CliError("exactly one of --named, --mdcc, --file is required")
    if args.named is not None:
        return states.named_state(args.named), "haar", None
    if args.mdcc is not None:
        return states.mdcc(args.mdcc), "mdcc", args.mdcc
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
        amps = data["amplitudes"] if isinstance(data, dict) else data
        psi = states.pure_state([complex(re, im) for re, im in amps])
    except (OSError, ValueError, TypeError, KeyError) as exc:
        raise CliError(f"cannot load state from {args.file}: {exc}") from exc
    return psi, "haar", None


def cmd_state_measures(args) -> int:
    psi, tag, alpha = _load_state(args)
    record = complementarity.measure_state(
        psi,
        class_tag=tag,
        alpha=alpha,
        sender=args.sender,
        with_discord=True,
        measured_convention=args.measured_party_convention,
    )
    row = record_rows([record])[0]
    for field in CSV_FIELDS:
        v = row[field]
        if v is None:
            v = "-"
        elif isinstance(v, float):
            v = f"{v:.12g}"
        print(f"{field:14s} {v}")
    return 0


def cmd_mdcc_curve(args) -> int:
    if not 2 <= args.points <= 10**6:
        raise CliError("points must be between 2 and 1e6")
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.points)
    measure = "discord_score" if args.with_discord else "ggm"
    points = complementarity.mdcc_envelope(
        measure, alphas, measured_convention=args.measured_party_convention
    )
    records = [p.record for p in points]
    text = records_to_csv(records) if args.format == "csv" else records_to_json(records)
    _write_output(args.out, text)
    return 0


def cmd_sample(args) -> int:
    config = SampleConfig(
        class_tag=_CLASS_FLAG[getattr(args, "class")],
        count=args.count,
        base_seed=args.seed,
        with_discord=args.with_discord,
        sender=args.sender,
        measured_convention=args.measured_party_convention,
        output_path=args.out,
        format=args.format,
        jobs=args.jobs,
    )
    t0 = time.perf_counter()
    records = run_sample(config)
    wall = time.perf_counter() - t0
    text = records_to_csv(records) if config.format == "csv" else records_to_json(records)
    _write_output(config.output_path, text)
    manifest = _manifest(asdict(config), records, wall)
    if config.output_path != "-":
        _write_output(config.output_path + ".manifest.json", json.dumps(manifest, indent=1) + "\n")
    else:
        sys.stderr.write(json.dumps(manifest, indent=1) + "\n")
    return 0


def cmd_verify(args) -> int:
    records = []
    for path in args.inputs:
        records.extend(parse_records(path))
    if not records:
        raise CliError("no records found in input files")
    bounds = ("ggm", "tangle") if args.bounds == "both" else (args.bounds,)
    reports = complementarity.verify_batch(records, tolerance=args.tolerance, bounds=bounds)
    for r in reports:
        status = "VIOLATED" if r.violations else "ok"
        print(
            f"{r.bound_name}: max_slack={r.max_slack:.3e} violations={r.violations} "
            f"worst_state_id={r.worst_state_id} [{status}]"
        )
    print(json.dumps([asdict(r) for r in reports], indent=1))
    return 2 if any(r.violations for r in reports) else 0


# ---------------------------------------------------------------------------
# Argument parsing.


def _add_common_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sender", choices=list(states.linalg.PARTIES), default="A")
    p.add_argument(
        "--measured-party-convention", choices=["second", "first"], default="second"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mdcckit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"mdcckit {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state-measures", help="print all measures for one state")
    p.add_argument("--named", choices=list(states.named_state_names()))
    p.add_argument("--mdcc", type=float, metavar="ALPHA")
    p.add_argument("--file", metavar="PATH", help="JSON file with 8 [re, im] amplitude pairs")
    _add_common_state_flags(p)
    p.set_defaults(func=cmd_state_measures)

    p = sub.add_parser("mdcc-curve", help="emit the MDCC family curve on an alpha grid")
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--with-discord", action="store_true")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common_state_flags(p)
    p.set_defaults(func=cmd_mdcc_curve)

    p = sub.add_parser("sample", help="sample random states and record their measures")
    p.add_argument("--class", choices=list(_CLASS_FLAG), default="haar")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--with-discord", action="store_true")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("MDCCKIT_JOBS", "1")),
        help="worker processes (env MDCCKIT_JOBS as fallback)",
    )
    _add_common_state_flags(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="check complementarity bounds over record files")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--bounds", choices=["ggm", "tangle", "both"], default="both")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
