"""Command-line surface: eval, sweep, figures, sample, validate.

The CLI speaks dB (matching the usual plotting convention for mean
SNR); the library speaks linear SNR.  Conversion happens only here.
CSV output is RFC-4180 with LF line endings and the fixed header
``family,params,snr_db,emi_exact,emi_approx,emi_mc,mc_stderr``.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .bpsk_mi import MI_APPROX_RATE, QuadratureSpec
from .channels import (
    Awgn,
    EtaMu,
    EtaMuFormat,
    FadingModel,
    KappaMu,
    Nakagami,
    Rayleigh,
    Rician,
    validate,
)
from .emi import emi_approx, emi_exact
from .errors import DomainError, ParameterError
from .sampling import RngState, emi_monte_carlo, ks_distance, sample_snr
from .validation import run_validation

__all__ = ["SweepSpec", "run_sweep", "figure_specs", "write_sweep_csv", "main"]

CSV_HEADER = ["family", "params", "snr_db", "emi_exact", "emi_approx", "emi_mc", "mc_stderr"]
ALL_METHODS = ("exact", "approx", "mc")


@dataclass(frozen=True)
class SweepSpec:
    """A family sweep: model template (snr ignored) over an SNR-dB range."""

    model_template: FadingModel
    snr_db_start: float
    snr_db_stop: float
    points: int
    methods: tuple[str, ...] = ("exact", "approx", "mc")
    mc_samples: int = 10**6
    seed: int = 0

    def __post_init__(self):
        if not self.snr_db_start < self.snr_db_stop:
            raise ParameterError("snr_db_start must be < snr_db_stop")
        if self.points < 2:
            raise ParameterError(f"points must be >= 2, got {self.points}")
        bad = set(self.methods) - set(ALL_METHODS)
        if bad or not self.methods:
            raise ParameterError(f"methods must be a non-empty subset of {ALL_METHODS}, got {self.methods}")


def _family_tag(model: FadingModel) -> str:
    return {
        Awgn: "awgn", Rayleigh: "rayleigh", Nakagami: "nakagami",
        Rician: "rician", EtaMu: "eta-mu", KappaMu: "kappa-mu",
    }[type(model)]


def _params_tag(model: FadingModel) -> str:
    if isinstance(model, Nakagami):
        return f"m={model.m:g}"
    if isinstance(model, Rician):
        return f"K={model.k:g}"
    if isinstance(model, EtaMu):
        return f"format={model.format.value},eta={model.eta:g},mu={model.mu:g}"
    if isinstance(model, KappaMu):
        return f"kappa={model.kappa:g},mu={model.mu:g}"
    return ""


def run_sweep(spec: SweepSpec, quad: QuadratureSpec, row_seed_base: int = 0) -> list[dict]:
    """Evaluate requested methods over the sweep; returns one dict per row."""
    rows = []
    snr_db = np.linspace(spec.snr_db_start, spec.snr_db_stop, spec.points)
    model = validate(spec.model_template)
    for i, db in enumerate(snr_db):
        m = replace(model, snr_bar=10.0 ** (db / 10.0))
        row = {"family": _family_tag(m), "params": _params_tag(m), "snr_db": float(db)}
        if "exact" in spec.methods:
            row["emi_exact"] = emi_exact(m, quad).value
        if "approx" in spec.methods:
            row["emi_approx"] = emi_approx(m).value
        if "mc" in spec.methods:
            est = emi_monte_carlo(m, spec.mc_samples, spec.seed + row_seed_base + i, quad)
            row["emi_mc"] = est.value
            row["mc_stderr"] = est.error
        rows.append(row)
    return rows


def write_sweep_csv(path, rows: list[dict], meta_lines: list[str] | None = None) -> None:
    """Write rows sorted by snr_db; absent method columns stay empty."""
    rows = sorted(rows, key=lambda r: (r["snr_db"], r.get("_curve", 0)))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for line in meta_lines or []:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([
                r["family"],
                r["params"],
                repr(r["snr_db"]),
                "" if "emi_exact" not in r else f"{r['emi_exact']:.9f}",
                "" if "emi_approx" not in r else f"{r['emi_approx']:.9f}",
                "" if "emi_mc" not in r else f"{r['emi_mc']:.9f}",
                "" if "mc_stderr" not in r else f"{r['mc_stderr']:.9f}",
            ])


def figure_specs() -> dict[str, list[FadingModel]]:
    """Model grids behind the standard figure files.

    The parameter sets are representative choices, recorded in each
    file's header so downstream comparisons are self-describing.
    """
    f1, f2 = EtaMuFormat.FORMAT1, EtaMuFormat.FORMAT2
    return {
        "fig1": [Awgn(1.0), Rayleigh(1.0)] + [Nakagami(m=m, snr_bar=1.0) for m in (1, 2, 4, 8)],
        "fig2": [Rician(k=k, snr_bar=1.0) for k in (0, 1, 5, 10)],
        "fig3a": [EtaMu(format=f1, eta=e, mu=mu, snr_bar=1.0)
                  for e in (0.25, 0.5, 0.9) for mu in (0.5, 1.0, 2.0)],
        "fig3b": [EtaMu(format=f2, eta=e, mu=mu, snr_bar=1.0)
                  for e in (0.25, 0.5, 0.9) for mu in (0.5, 1.0, 2.0)],
        "fig4": [KappaMu(kappa=k, mu=mu, snr_bar=1.0)
                 for k in (0.5, 2.0, 5.0) for mu in (0.5, 1.0, 2.0)],
    }


def _quad_from_args(args) -> QuadratureSpec:
    return QuadratureSpec(hermite_nodes=args.hermite_nodes, outer_rel_tol=args.rel_tol)


def _model_from_args(args, parser: argparse.ArgumentParser, snr_bar: float = 1.0) -> FadingModel:
    def need(flag, value):
        if value is None:
            parser.error(f"--model {args.model} requires --{flag}")
        return value

    if args.model == "awgn":
        return Awgn(snr_bar=snr_bar)
    if args.model == "rayleigh":
        return Rayleigh(snr_bar=snr_bar)
    if args.model == "nakagami":
        return Nakagami(m=need("m", args.m), snr_bar=snr_bar)
    if args.model == "rician":
        return Rician(k=need("k", args.k), snr_bar=snr_bar)
    if args.model == "eta-mu":
        return EtaMu(format=EtaMuFormat(need("format", args.format)),
                     eta=need("eta", args.eta), mu=need("mu", args.mu), snr_bar=snr_bar)
    return KappaMu(kappa=need("kappa", args.kappa), mu=need("mu", args.mu), snr_bar=snr_bar)


def _parse_range(text: str, parser: argparse.ArgumentParser) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError:
        parser.error(f"--snr-db-range must look like A:B:N, got {text!r}")


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", required=True,
                   choices=["awgn", "rayleigh", "nakagami", "rician", "eta-mu", "kappa-mu"])
    p.add_argument("--m", type=float, help="Nakagami fading figure (>= 0.5)")
    p.add_argument("--k", type=float, help="Rician K factor (>= 0)")
    p.add_argument("--eta", type=float, help="eta-mu power ratio / correlation")
    p.add_argument("--mu", type=float, help="eta-mu or kappa-mu cluster parameter (> 0)")
    p.add_argument("--kappa", type=float, help="kappa-mu power ratio (>= 0)")
    p.add_argument("--format", type=int, choices=[1, 2], help="eta-mu format")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--methods", default="exact,approx", help="comma list from exact,approx,mc")
    p.add_argument("--mc-samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hermite-nodes", type=int, default=64)
    p.add_argument("--rel-tol", type=float, default=1e-8)


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="fading-emi",
        description="Ergodic mutual information of BPSK over fading channels")
    parser.add_argument("--config", help="key=value file; flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one model at one SNR point")
    _add_model_flags(p_eval)
    _add_common_flags(p_eval)
    p_eval.add_argument("--snr-db", type=float, required=True)

    p_sweep = sub.add_parser("sweep", help="sweep mean SNR, write CSV")
    _add_model_flags(p_sweep)
    _add_common_flags(p_sweep)
    p_sweep.add_argument("--snr-db-range", required=True, metavar="A:B:N")
    p_sweep.add_argument("--out", required=True)

    p_fig = sub.add_parser("figures", help="emit the standard figure CSV files")
    _add_common_flags(p_fig)
    p_fig.set_defaults(methods="approx,mc")
    p_fig.add_argument("--out", default=".", help="output directory")

    p_sample = sub.add_parser("sample", help="export instantaneous-SNR draws")
    _add_model_flags(p_sample)
    p_sample.add_argument("--snr-db", type=float, required=True)
    p_sample.add_argument("--n", type=int, default=10**5)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--ks", action="store_true", help="also report the KS statistic")
    p_sample.add_argument("--out", required=True)

    p_val = sub.add_parser("validate", help="run every cross-validation suite")
    p_val.add_argument("--seed", type=int, default=20260810)
    p_val.add_argument("--mc-samples", type=int, default=10**6)
    p_val.add_argument("--ks-samples", type=int, default=10**5)
    p_val.add_argument("--snr-points", type=int, default=20)
    p_val.add_argument("--hermite-nodes", type=int, default=64)
    p_val.add_argument("--rel-tol", type=float, default=1e-8)
    p_val.add_argument("--mi-rate", type=float, default=MI_APPROX_RATE, help=argparse.SUPPRESS)

    children = {"eval": p_eval, "sweep": p_sweep, "figures": p_fig,
                "sample": p_sample, "validate": p_val}
    return parser, children


def _read_config(path: str) -> dict[str, str]:
    out = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParameterError(f"config line is not key=value: {line!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _methods_tuple(text: str) -> tuple[str, ...]:
    return tuple(m.strip() for m in text.split(",") if m.strip())


def cmd_eval(args, parser) -> int:
    quad = _quad_from_args(args)
    model = _model_from_args(args, parser, snr_bar=10.0 ** (args.snr_db / 10.0))
    validate(model)
    for method in _methods_tuple(args.methods):
        if method == "exact":
            est = emi_exact(model, quad)
        elif method == "approx":
            est = emi_approx(model)
        elif method == "mc":
            est = emi_monte_carlo(model, args.mc_samples, args.seed, quad)
        else:
            parser.error(f"unknown method {method!r}")
        print(f"{method} {est.value:.9f} {est.error:.3e}")
    return 0


def cmd_sweep(args, parser) -> int:
    start, stop, points = _parse_range(args.snr_db_range, parser)
    spec = SweepSpec(
        model_template=_model_from_args(args, parser),
        snr_db_start=start, snr_db_stop=stop, points=points,
        methods=_methods_tuple(args.methods),
        mc_samples=args.mc_samples, seed=args.seed)
    rows = run_sweep(spec, _quad_from_args(args))
    write_sweep_csv(args.out, rows, [
        f"fading-emi sweep: model={_family_tag(spec.model_template)} "
        f"params={_params_tag(spec.model_template) or '-'}",
        f"snr_db={start}..{stop} points={points} methods={','.join(spec.methods)} "
        f"mc_samples={spec.mc_samples} seed={spec.seed}",
    ])
    print(f"wrote {args.out} ({len(rows)} rows)")
    return 0


def cmd_figures(args, parser) -> int:
    quad = _quad_from_args(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    methods = _methods_tuple(args.methods)
    for name, models in figure_specs().items():
        rows = []
        for curve, model in enumerate(models):
            spec = SweepSpec(model_template=model, snr_db_start=-10.0, snr_db_stop=20.0,
                             points=31, methods=methods,
                             mc_samples=args.mc_samples, seed=args.seed)
            curve_rows = run_sweep(spec, quad, row_seed_base=1000 * curve)
            for r in curve_rows:
                r["_curve"] = curve
            rows.extend(curve_rows)
        meta = [
            f"fading-emi {name}: representative parameter grid (not normative)",
            "curves: " + "; ".join(
                f"{_family_tag(m)}({_params_tag(m) or '-'})" for m in models),
            f"snr_db=-10..20 points=31 methods={','.join(methods)} "
            f"mc_samples={args.mc_samples} seed={args.seed}",
        ]
        write_sweep_csv(out_dir / f"{name}.csv", rows, meta)
        print(f"wrote {out_dir / f'{name}.csv'} ({len(rows)} rows)")
    return 0


def cmd_sample(args, parser) -> int:
    model = _model_from_args(args, parser, snr_bar=10.0 ** (args.snr_db / 10.0))
    batch = sample_snr(model, args.n, RngState(args.seed))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# fading-emi samples: model={_family_tag(model)} "
                 f"params={_params_tag(model) or '-'} snr_bar={model.snr_bar!r}\n")
        fh.write(f"# n={args.n} seed={args.seed}\n")
        fh.write("gamma\n")
        for v in batch.snr_samples:
            fh.write(f"{v!r}\n")
    mean = float(np.mean(batch.snr_samples))
    print(f"wrote {args.out} (n={args.n}, sample mean {mean:.6f}, model mean {model.snr_bar:.6f})")
    if args.ks:
        print(f"ks_statistic {ks_distance(batch):.6f}")
    return 0


def cmd_validate(args, parser) -> int:
    quad = QuadratureSpec(hermite_nodes=args.hermite_nodes, outer_rel_tol=args.rel_tol)
    results = run_validation(quad=quad, seed=args.seed, rate=args.mi_rate,
                             mc_samples=args.mc_samples, ks_samples=args.ks_samples,
                             snr_points=args.snr_points)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(r.line())
    if failed:
        print(f"FAILED suites: {', '.join(r.name for r in failed)}", file=sys.stderr)
        return 1
    print("all suites passed")
    return 0


_COMMANDS = {
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "figures": cmd_figures,
    "sample": cmd_sample,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    pre_args, _ = pre.parse_known_args(argv)

    parser, children = build_parser()
    if pre_args.config:
        try:
            defaults = _read_config(pre_args.config)
        except (OSError, ParameterError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for child in children.values():
            child.set_defaults(**defaults)

    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except (ParameterError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
