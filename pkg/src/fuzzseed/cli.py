"""Command-line front door.

Subcommands: seed, fit, validate, generate, bench. JSON results go to
stdout (or --out), diagnostics to stderr. Exit codes: 0 success, 1 usage
error (bad flags or parameter values), 2 runtime error (unreadable data,
engine failures). Every stochastic path either takes --seed (or the
FUZZSEED_SEED env var) or draws a fresh seed; the effective seed is
always echoed in the output.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .data import DataError, load_csv, standardize
from .engine import EngineError, FcmConfig, update_membership
from .rng import fresh_seed
from .seeding import DEFAULT_BENCH_METHODS, STOCHASTIC, STRATEGIES, fit_method, make_seeds
from .synth import dataset_from_spec, write_csv
from .bench import load_manifest, rank_methods, run_comparison, write_report
from .validity import ValidityScores, v_cl, v_fch, v_fratio, v_fs, v_pc, v_tsfd, v_xb


class UsageError(Exception):
    """Bad flag values; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; the CLI contract says 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _effective_seed(args) -> int | None:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("FUZZSEED_SEED")
    return int(env) if env else None


def _load_dataset(args):
    ds = load_csv(args.data, label_column=args.label_column, delimiter=args.delimiter)
    return standardize(ds, args.standardize)


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_data_flags(p):
    p.add_argument("--data", required=True, help="CSV dataset path")
    p.add_argument("--label-column", default=None, help="header name of the label column")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--standardize", default="none", choices=("none", "z-score", "min-max"))


def build_parser() -> _Parser:
    parser = _Parser(prog="fuzzseed", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seed", help="pick initial centroids")
    _add_data_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", required=True, choices=STRATEGIES)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("fit", help="seed and run the clustering to convergence")
    _add_data_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", required=True, choices=STRATEGIES)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--m", type=float, default=2.0)
    p.add_argument("--epsilon", type=float, default=1e-4)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--out", default=None, help="write result JSON here instead of stdout")
    p.add_argument("--membership-out", default=None, help="write the membership matrix as CSV")

    p = sub.add_parser("validate", help="score a fitted result with all validity indices")
    p.add_argument("--result", required=True, help="FcmResult JSON from fit")
    p.add_argument("--data", required=True)
    p.add_argument("--label-column", default=None)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--standardize", default="none", choices=("none", "z-score", "min-max"))
    p.add_argument("--membership", default=None,
                   help="membership CSV from fit; recomputed from centroids when absent")

    p = sub.add_parser("generate", help="generate a synthetic dataset CSV")
    p.add_argument("--spec", required=True, help="generator spec JSON")
    p.add_argument("--out", required=True, help="CSV output path")

    p = sub.add_parser("bench", help="run the full comparison protocol")
    p.add_argument("--manifest", required=True, help="dataset manifest JSON")
    p.add_argument("--methods", default=",".join(DEFAULT_BENCH_METHODS),
                   help="comma-separated strategy ids")
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--seed", type=int, default=None, help="master seed")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--m", type=float, default=2.0)
    p.add_argument("--epsilon", type=float, default=1e-4)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--formats", default="json,csv,md")
    return parser


def _make_config(args) -> FcmConfig:
    try:
        return FcmConfig(m=args.m, epsilon=args.epsilon, max_iterations=args.max_iter)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_seed(args) -> int:
    ds = _load_dataset(args)
    seed = _effective_seed(args)
    seeds = make_seeds(ds, args.k, args.method, seed=seed)
    if args.method in STOCHASTIC:
        print(f"seed={seeds.rng_seed}", file=sys.stderr)
    _emit(seeds.to_dict(), None)
    return 0


def cmd_fit(args) -> int:
    cfg = _make_config(args)
    ds = _load_dataset(args)
    seed = _effective_seed(args)
    seeds, result = fit_method(ds, args.k, args.method, cfg=cfg, seed=seed)
    if args.method in STOCHASTIC:
        print(f"seed={seeds.rng_seed}", file=sys.stderr)

    payload = result.to_dict()
    payload["rng_seed"] = seeds.rng_seed
    summary = (
        f"iterations={result.iterations} fw={result.fw!r} "
        f"fb={result.fb!r} fi={result.fi!r}"
    )
    if args.out:
        _emit(payload, args.out)
        sys.stdout.write(summary + "\n")
    else:
        _emit(payload, None)
        print(summary, file=sys.stderr)
    if args.membership_out:
        with open(args.membership_out, "w") as fh:
            fh.write(",".join(f"u{j + 1}" for j in range(result.k)) + "\n")
            for row in result.membership:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
    return 0


def _load_membership(path, n, k):
    rows = []
    with open(path) as fh:
        header = fh.readline()
        if header.count(",") + 1 != k:
            raise DataError(f"{path}: expected {k} membership columns")
        for line in fh:
            if line.strip():
                rows.append([float(v) for v in line.strip().split(",")])
    u = np.array(rows, dtype=float)
    if u.shape != (n, k):
        raise DataError(f"{path}: membership shape {u.shape} does not match (n={n}, k={k})")
    return u


def cmd_validate(args) -> int:
    ds = _load_dataset(args)
    try:
        payload = json.loads(Path(args.result).read_text())
        centroids = np.array(payload["centroids"], dtype=float)
        m = float(payload["m"])
        fw, fb, fi = (float(payload[key]) for key in ("fw", "fb", "fi"))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DataError(f"cannot read result {args.result}: {exc}") from exc
    if centroids.ndim != 2 or centroids.shape[1] != ds.p:
        raise DataError(
            f"result dimension {centroids.shape} does not match data p={ds.p}"
        )
    if "n" in payload and int(payload["n"]) != ds.n:
        raise DataError(f"result n={payload['n']} does not match data n={ds.n}")
    if args.membership:
        u = _load_membership(args.membership, ds.n, centroids.shape[0])
    else:
        print("membership not supplied; recomputing from centroids", file=sys.stderr)
        u = update_membership(ds.points, centroids, m)
    fratio = v_fratio(fb, fw)
    xb = v_xb(ds, centroids, u, m)
    flags = []
    if np.isinf(fratio):
        flags.append("zero_fw")
    if np.isinf(xb):
        flags.append("coincident_centroids")
    scores = ValidityScores(
        pc=v_pc(u),
        cl=v_cl(u),
        fratio=fratio,
        fch=v_fch(fb, fw, ds.n, centroids.shape[0]),
        fs=v_fs(fw, fb),
        xb=xb,
        tsfd=v_tsfd(fb, fi),
        flags=tuple(flags),
    )
    out = scores.to_dict()
    out["schema"] = "fuzzseed/1"
    _emit(out, None)
    return 0


def cmd_generate(args) -> int:
    try:
        spec = json.loads(Path(args.spec).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read spec {args.spec}: {exc}") from exc
    try:
        ds = dataset_from_spec(spec, base_dir=Path(args.spec).parent)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    write_csv(ds, args.out)
    _emit(
        {
            "schema": "fuzzseed/1",
            "name": ds.name,
            "n": ds.n,
            "p": ds.p,
            "labels": int(len(np.unique(ds.labels))) if ds.labels is not None else 0,
            "path": str(args.out),
        },
        None,
    )
    return 0


def cmd_bench(args) -> int:
    cfg = _make_config(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in STRATEGIES]
    if unknown:
        raise UsageError(f"unknown methods: {unknown}")
    seed = _effective_seed(args)
    if seed is None:
        seed = fresh_seed()
    print(f"master_seed={seed}", file=sys.stderr)

    jobs = load_manifest(args.manifest)
    report = run_comparison(jobs, methods, cfg=cfg, master_seed=seed, n_jobs=args.jobs)
    report = rank_methods(report)
    aliases = {"markdown": "md", "markdown-table": "md"}
    formats = tuple(
        aliases.get(f.strip(), f.strip()) for f in args.formats.split(",") if f.strip()
    )
    written = write_report(report, args.out, formats=formats)

    warnings = 0
    for ds, per_ds in report.cells.items():
        for method, cell in per_ds.items():
            if cell["error"] is not None:
                warnings += 1
                print(f"warning: {ds}/{method}: {cell['error']}", file=sys.stderr)
    _emit(
        {
            "schema": "fuzzseed/1",
            "report": str(Path(args.out) / "report.json"),
            "files": [str(p) for p in written],
            "master_seed": seed,
            "warnings": warnings,
        },
        None,
    )
    return 0


COMMANDS = {
    "seed": cmd_seed,
    "fit": cmd_fit,
    "validate": cmd_validate,
    "generate": cmd_generate,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"fuzzseed: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, EngineError, OSError) as exc:
        print(f"fuzzseed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
