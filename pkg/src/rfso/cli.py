"""Batch front door: parse a JSON scenario, run SNR sweeps, emit CSV curves
and a closed-form-vs-Monte-Carlo validation report, or check the committed
special-function fixtures.

The CSV schema is fixed: snr_db, closed_form, mc_mean, mc_stderr,
bound_ceiling, bound_jensen, with empty fields where a column does not
apply to the metric.  Output is byte-stable for a fixed (config, seed).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .analytics import (
    BerParams,
    CapacityConvention,
    SystemConfig,
    ber,
    capacity_approx,
    capacity_ceiling,
    diversity_gain,
    jensen_bound,
    outage,
    outage_high_snr,
)
from .channel import FadingParams, PrsParams
from .impairments import HpaModel, IqImbalance
from .simulate import McRun, mc_ber, mc_capacity, mc_outage
from .specfun import MeijerGOrder, bessel_k, meijer_g, meijer_g_small_z

__all__ = ["SweepSpec", "run", "validate_fixtures", "main", "db_to_linear", "linear_to_db"]

_METRICS = ("outage", "capacity", "ber", "diversity", "bounds")
_MODES = ("closed_form", "monte_carlo", "both")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    """Scenario file violates the schema or a type invariant."""


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SweepSpec:
    """One metric sweep over an SNR grid (dB), hops locked or offset."""

    metric: str
    start_db: float
    stop_db: float
    step_db: float
    mode: str = "both"
    gbar2_offset_db: float = 0.0
    outage_threshold_db: float = 10.0
    ber_p: float = 1.0
    ber_q: float = 1.0

    def __post_init__(self) -> None:
        if self.metric not in _METRICS:
            raise ConfigError(f"sweep.metric must be one of {_METRICS}, got {self.metric!r}")
        if self.mode not in _MODES:
            raise ConfigError(f"sweep.mode must be one of {_MODES}, got {self.mode!r}")
        if not self.step_db > 0.0:
            raise ConfigError(f"sweep.step_db must be > 0, got {self.step_db}")
        if self.start_db > self.stop_db:
            raise ConfigError("sweep requires start_db <= stop_db")

    def grid_db(self) -> list[float]:
        out = []
        v = self.start_db
        k = 0
        while v <= self.stop_db + 1e-9:
            out.append(round(v, 9))
            k += 1
            v = self.start_db + k * self.step_db
        return out


def _build_config(doc: dict, gbar1_db: float, gbar2_db: float) -> SystemConfig:
    try:
        prs_doc = doc["prs"]
        fading_doc = doc["fading"]
        hpa_doc = doc.get("hpa", {"kind": "ideal"})
        iq_doc = doc.get("iq", {})
        prs = PrsParams(
            n_relays=int(prs_doc["n_relays"]),
            rank=int(prs_doc["rank"]),
            rho=float(prs_doc["rho"]),
            gbar1=db_to_linear(gbar1_db),
        )
        if "sigma_r2" in fading_doc:
            fading = FadingParams.from_rytov(float(fading_doc["sigma_r2"]), db_to_linear(gbar2_db))
        else:
            fading = FadingParams(
                alpha=float(fading_doc["alpha"]),
                beta=float(fading_doc["beta"]),
                gbar2=db_to_linear(gbar2_db),
            )
        kind = hpa_doc.get("kind", "ideal")
        if kind == "ideal":
            hpa = HpaModel(kind="ideal", sigma2=float(hpa_doc.get("sigma2", 1.0)))
        else:
            hpa = HpaModel.from_ibo_db(
                kind,
                float(hpa_doc["ibo_db"]),
                sigma2=float(hpa_doc.get("sigma2", 1.0)),
                phi0=float(hpa_doc.get("phi0", math.pi / 3.0)),
            )
        if "ilr_db" in iq_doc:
            iq = IqImbalance.from_ilr_db(float(iq_doc["ilr_db"]))
        elif "zeta" in iq_doc:
            iq = IqImbalance(zeta=float(iq_doc["zeta"]), theta=float(iq_doc.get("theta", 0.0)))
        else:
            iq = IqImbalance.ideal()
        conv_doc = doc.get("convention", {})
        convention = CapacityConvention(
            log_base=float(conv_doc.get("log_base", 2.0)),
            varpi=float(conv_doc.get("varpi", math.e / (2.0 * math.pi))),
            half_factor=bool(conv_doc.get("half_factor", False)),
        )
        return SystemConfig(
            prs=prs,
            fading=fading,
            hpa=hpa,
            iq=iq,
            sigma0_2=float(doc.get("sigma0_2", 1.0)),
            convention=convention,
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid scenario config: {exc}") from exc


def _sweeps_from_doc(doc: dict) -> list[SweepSpec]:
    raw = doc.get("sweeps")
    if raw is None and "sweep" in doc:
        raw = [doc["sweep"]]
    if not raw:
        raise ConfigError("config must define 'sweep' or a non-empty 'sweeps' list")
    out = []
    for entry in raw:
        try:
            out.append(
                SweepSpec(
                    metric=entry["metric"],
                    start_db=float(entry["start_db"]),
                    stop_db=float(entry["stop_db"]),
                    step_db=float(entry["step_db"]),
                    mode=entry.get("mode", "both"),
                    gbar2_offset_db=float(entry.get("gbar2_offset_db", 0.0)),
                    outage_threshold_db=float(entry.get("outage_threshold_db", 10.0)),
                    ber_p=float(entry.get("ber", {}).get("p", 1.0)),
                    ber_q=float(entry.get("ber", {}).get("q", 1.0)),
                )
            )
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid sweep entry: {exc}") from exc
    return out


def _fmt(v: float | None) -> str:
    if v is None:
        return ""
    if math.isinf(v):
        return "inf"
    return format(v, ".12g")


def _sweep_rows(spec: SweepSpec, doc: dict, run: McRun) -> tuple[list[dict], list[dict]]:
    """Returns (csv rows, validation entries) for one sweep."""
    rows: list[dict] = []
    checks: list[dict] = []
    x = db_to_linear(spec.outage_threshold_db)
    ber_params = BerParams(p=spec.ber_p, q=spec.ber_q)
    want_cf = spec.mode in ("closed_form", "both")
    want_mc = spec.mode in ("monte_carlo", "both")
    for snr_db in spec.grid_db():
        cfg = _build_config(doc, snr_db, snr_db + spec.gbar2_offset_db)
        closed = mc_mean = mc_se = ceil_v = jens_v = None
        if spec.metric == "outage":
            if want_cf:
                closed = outage(x, cfg)
            if want_mc:
                est = mc_outage(x, cfg, run)
                mc_mean, mc_se = est.mean, est.stderr
        elif spec.metric == "capacity":
            if want_cf:
                closed = capacity_approx(cfg)
            if want_mc:
                est = mc_capacity(cfg, run)
                mc_mean, mc_se = est.mean, est.stderr
            ceil_v = capacity_ceiling(cfg)
            jens_v = jensen_bound(cfg)
        elif spec.metric == "ber":
            if want_cf:
                closed = ber(ber_params, cfg)
            if want_mc:
                est = mc_ber(ber_params, cfg, run)
                mc_mean, mc_se = est.mean, est.stderr
        elif spec.metric == "diversity":
            closed = outage_high_snr(x, cfg)
        elif spec.metric == "bounds":
            closed = capacity_approx(cfg)
            ceil_v = capacity_ceiling(cfg)
            jens_v = jensen_bound(cfg)
        rows.append(
            {
                "snr_db": snr_db,
                "closed_form": closed,
                "mc_mean": mc_mean,
                "mc_stderr": mc_se,
                "bound_ceiling": ceil_v,
                "bound_jensen": jens_v,
            }
        )
        if closed is not None and mc_mean is not None and mc_se is not None:
            tol = max(3.0 * mc_se, 1e-4)
            checks.append(
                {
                    "metric": spec.metric,
                    "snr_db": snr_db,
                    "closed_form": closed,
                    "mc_mean": mc_mean,
                    "mc_stderr": mc_se,
                    "tolerance": tol,
                    "passed": bool(abs(closed - mc_mean) <= tol),
                }
            )
    return rows, checks


def _write_csv(path: Path, rows: list[dict]) -> None:
    header = "snr_db,closed_form,mc_mean,mc_stderr,bound_ceiling,bound_jensen"
    lines = [header]
    for r in rows:
        lines.append(
            ",".join(
                _fmt(r[k])
                for k in (
                    "snr_db",
                    "closed_form",
                    "mc_mean",
                    "mc_stderr",
                    "bound_ceiling",
                    "bound_jensen",
                )
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def run(
    config_file: str | Path,
    out_dir: str | Path = ".",
    seed: int | None = None,
    samples: int | None = None,
    metric: str | None = None,
    ideal: bool = False,
) -> int:
    """Execute the sweeps of a scenario file; returns a process exit code."""
    config_file = Path(config_file)
    try:
        doc = json.loads(config_file.read_text(encoding="utf-8"))
    except FileNotFoundError:
        print(f"error: config file not found: {config_file}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if ideal:
        doc = dict(doc)
        doc["hpa"] = {"kind": "ideal"}
        doc["iq"] = {}
    try:
        sweeps = _sweeps_from_doc(doc)
        if metric is not None:
            sweeps = [s for s in sweeps if s.metric == metric]
            if not sweeps:
                raise ConfigError(f"no sweep with metric {metric!r} in config")
        mc_doc = doc.get("mc", {})
        run_plan = McRun(
            seed=int(seed if seed is not None else mc_doc.get("seed", 20240917)),
            samples=int(samples if samples is not None else mc_doc.get("samples", 1_000_000)),
            shards=int(mc_doc.get("shards", 4)),
        )
        # Building one config up front surfaces invariant violations early.
        first = sweeps[0]
        _build_config(doc, first.start_db, first.start_db + first.gbar2_offset_db)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    all_checks: list[dict] = []
    try:
        for spec in sweeps:
            rows, checks = _sweep_rows(spec, doc, run_plan)
            _write_csv(out_path / f"{spec.metric}.csv", rows)
            all_checks.extend(checks)
            if spec.metric == "diversity":
                cfg0 = _build_config(doc, spec.start_db, spec.start_db)
                slope = _fit_slope(spec, doc)
                print(
                    f"diversity: analytic gain = {diversity_gain(cfg0):.6g}, "
                    f"fitted slope = {slope:.6g}"
                )
    except ArithmeticError as exc:
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    report = {
        "config": str(config_file),
        "seed": run_plan.seed,
        "samples": run_plan.samples,
        "checks": all_checks,
        "n_failed": sum(0 if c["passed"] else 1 for c in all_checks),
    }
    (out_path / "validation_report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    n_failed = report["n_failed"]
    if all_checks:
        print(f"validation: {len(all_checks) - n_failed}/{len(all_checks)} comparisons passed")
    warn_only = bool(doc.get("validation", {}).get("treat_failures_as_warnings", False))
    if n_failed and not warn_only:
        return EXIT_VALIDATION
    return EXIT_OK


def _fit_slope(spec: SweepSpec, doc: dict) -> float:
    """Least-squares slope of -log10(outage) against log10(snr)."""
    x = db_to_linear(spec.outage_threshold_db)
    pts = []
    for snr_db in spec.grid_db():
        cfg = _build_config(doc, snr_db, snr_db + spec.gbar2_offset_db)
        val = outage_high_snr(x, cfg)
        if val > 0.0:
            pts.append((snr_db / 10.0, -math.log10(val)))
    if len(pts) < 2:
        return math.nan
    n = len(pts)
    sx = sum(p[0] for p in pts)
    sy = sum(p[1] for p in pts)
    sxx = sum(p[0] * p[0] for p in pts)
    sxy = sum(p[0] * p[1] for p in pts)
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


def _check_fixture(rec: dict) -> tuple[float, float]:
    """Returns (got, want) for one fixture record."""
    kind = rec["kind"]
    inputs = rec["inputs"]
    want = float(rec["value"])
    if kind == "meijer_g":
        order = MeijerGOrder(
            *(int(v) for v in inputs["order"]),
            a=tuple(inputs.get("a", [])),
            b=tuple(inputs["b"]),
        )
        got = meijer_g(order, float(inputs["z"]))
    elif kind == "meijer_g_small_z":
        order = MeijerGOrder(5, 0, 0, 5, a=(), b=tuple(inputs["b"]))
        got = meijer_g_small_z(order, float(inputs["z"]), k_terms=int(inputs.get("k_terms", 5)))
    elif kind == "bessel_k":
        got = bessel_k(float(inputs["nu"]), float(inputs["x"]))
    elif kind == "gg_pdf":
        from .channel import gg_pdf

        fading = FadingParams(
            alpha=float(inputs["alpha"]),
            beta=float(inputs["beta"]),
            gbar2=float(inputs["gbar2"]),
        )
        got = gg_pdf(float(inputs["x"]), fading)
    elif kind == "bussgang":
        from .impairments import bussgang as _bussgang

        model = HpaModel(
            kind=inputs["model"],
            ibo=float(inputs["ibo"]),
            sigma2=float(inputs.get("sigma2", 1.0)),
            phi0=float(inputs.get("phi0", math.pi / 3.0)),
        )
        coeffs = _bussgang(model)
        got = getattr(coeffs, inputs["quantity"])
    elif kind == "jensen_J":
        from .analytics import jensen_J

        cfg = SystemConfig.build(
            gbar1_db=float(inputs["gbar1_db"]),
            gbar2_db=float(inputs["gbar2_db"]),
            n_relays=int(inputs["n_relays"]),
            rank=int(inputs["rank"]),
            rho=float(inputs["rho"]),
            sigma_r2=float(inputs["sigma_r2"]),
            hpa_kind=inputs["hpa_kind"],
            ibo_db=float(inputs["ibo_db"]),
            ilr_db=float(inputs["ilr_db"]),
        )
        got = jensen_J(cfg)
    else:
        raise ValueError(f"unknown fixture kind {kind!r}")
    return got, want


def validate_fixtures(fixture_dir: str | Path, rtol: float = 1e-8) -> dict:
    """Evaluate every committed fixture record; returns a summary report."""
    fixture_dir = Path(fixture_dir)
    files = sorted(fixture_dir.glob("*.json"))
    if not files:
        raise FileNotFoundError(f"no fixture files found in {fixture_dir}")
    report = {"files": {}, "n_total": 0, "n_failed": 0, "worst_rel": 0.0}
    for f in files:
        records = json.loads(f.read_text(encoding="utf-8"))
        n_fail = 0
        worst = 0.0
        for rec in records:
            got, want = _check_fixture(rec)
            rel = abs(got - want) / max(abs(want), 1e-300)
            worst = max(worst, rel)
            if rel > rtol:
                n_fail += 1
        report["files"][f.name] = {"n": len(records), "n_failed": n_fail, "worst_rel": worst}
        report["n_total"] += len(records)
        report["n_failed"] += n_fail
        report["worst_rel"] = max(report["worst_rel"], worst)
    return report


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rfso",
        description="Sweep outage/capacity/BER curves for the mixed RF/FSO relay scenario, "
        "or validate the committed special-function fixtures.",
    )
    parser.add_argument("--config", type=Path, help="JSON scenario file")
    parser.add_argument("--metric", choices=_METRICS, help="run only this metric's sweep")
    parser.add_argument("--seed", type=int, help="Monte Carlo master seed")
    parser.add_argument("--samples", type=int, help="Monte Carlo samples per point")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    parser.add_argument("--ideal", action="store_true", help="force ideal hardware")
    parser.add_argument("--validate", action="store_true", help="validate fixtures and exit")
    parser.add_argument(
        "--fixtures", type=Path, default=Path("fixtures"), help="fixture directory for --validate"
    )
    args = parser.parse_args(argv)

    if args.validate:
        try:
            report = validate_fixtures(args.fixtures)
        except FileNotFoundError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"{'file':<24} {'records':>8} {'failed':>7} {'worst rel':>12}")
        for name, info in report["files"].items():
            print(f"{name:<24} {info['n']:>8} {info['n_failed']:>7} {info['worst_rel']:>12.3e}")
        print(
            f"{'TOTAL':<24} {report['n_total']:>8} {report['n_failed']:>7} "
            f"{report['worst_rel']:>12.3e}"
        )
        return EXIT_OK if report["n_failed"] == 0 else EXIT_VALIDATION

    if args.config is None:
        parser.error("--config is required unless --validate is given")
    return run(
        args.config,
        out_dir=args.out,
        seed=args.seed,
        samples=args.samples,
        metric=args.metric,
        ideal=args.ideal,
    )


if __name__ == "__main__":
    sys.exit(main())
