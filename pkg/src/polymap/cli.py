"""Command-line front end.

``polymap analyze`` chains the whole pipeline (critical values, fiber Euler
characteristics, projection certificates, leading forms, asymptotic set,
containment) into one JSON report; the other subcommands expose the
individual stages under the same configuration schema.  Reports are
byte-identical for identical configs and seeds: keys are sorted, floats are
printed with 17 significant digits, and every verdict carries the seed and
tolerance it was computed under.  Exit codes signal operational failure
only (2 for invalid configuration), never mathematical findings.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .asymptotic import AsymConfig, ClusterSet, containment_check, estimate_asymptotic_set
from .cloud import CloudConfig, build_vg_cloud, export_cloud
from .fibers import (
    ChiConfig,
    FiberError,
    ProjectionConfig,
    UnsupportedShapeError,
    check_very_good_projection,
    chi_profile,
    leading_form_report,
)
from .parse import ParseError, parse_poly, parse_poly_map
from .poly import PolyMap
from .realform import RhoSpec, realify_map
from .singular import SamplerConfig, check_K0_empty, jacobian, minor_system, sample_singular_locus

__all__ = ["main", "JobConfig", "canonical_json", "run_analysis"]


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# canonical JSON
# ---------------------------------------------------------------------------


def _canonical(obj, out: list, indent: int) -> None:
    pad = "  " * indent
    if obj is None or obj is True or obj is False:
        out.append("null" if obj is None else ("true" if obj is True else "false"))
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        out.append(format(x, ".17g") if math.isfinite(x) else "null")
    elif isinstance(obj, complex):
        _canonical({"re": obj.real, "im": obj.imag}, out, indent)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(str(k) for k in obj)
        lookup = {str(k): v for k, v in obj.items()}
        for i, k in enumerate(keys):
            out.append("  " * (indent + 1))
            out.append(json.dumps(k))
            out.append(": ")
            _canonical(lookup[k], out, indent + 1)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append("  " * (indent + 1))
            _canonical(item, out, indent + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def canonical_json(obj) -> str:
    out: list = []
    _canonical(obj, out, 0)
    return "".join(out) + "\n"


def _cvec(values) -> list:
    return [complex(v) for v in values]


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


def _parse_scalar(text: str) -> complex:
    """Complex scalar in the polynomial grammar, e.g. '1', '-2/3', '1+2i'."""
    poly = parse_poly(str(text), ())
    return poly.constant_value().to_complex()


def _parse_weight(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    raise ConfigError(f"cannot read rho weight {value!r}")


@dataclass
class JobConfig:
    map_text: str = ""
    variables: tuple = ()
    rho_weights: tuple = ()
    seed: int = 0
    schedule: tuple = field(default_factory=lambda: tuple(10.0 * 2.0**k for k in range(7)))
    newton_tol: float = 1e-10
    cluster_tol: float = 0.05
    containment_tol: float = 0.1
    output: str = "out"
    radius: float = 1.0
    count: int = 50
    multistarts: int = 80
    rounds: int = 3
    projection: tuple | None = None  # coefficients in C^n
    t0: tuple | None = None
    fiber_values: tuple = ()
    chi_extra_candidates: tuple = ()
    cloud_schedule: tuple | None = None
    export_format: str = "csv"

    @staticmethod
    def from_sources(path: str | None, args) -> "JobConfig":
        cfg = JobConfig()
        if path:
            try:
                raw = json.loads(Path(path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config file: {exc}")
            cfg._apply_dict(raw)
        cfg._apply_args(args)
        cfg.validate()
        return cfg

    def _apply_dict(self, raw: dict) -> None:
        if "map" in raw:
            self.map_text = str(raw["map"])
        if "variables" in raw:
            self.variables = tuple(str(v) for v in raw["variables"])
        if "rho" in raw:
            self.rho_weights = tuple(_parse_weight(w) for w in raw["rho"])
        if "seed" in raw:
            self.seed = int(raw["seed"])
        if "schedule" in raw:
            self.schedule = tuple(float(x) for x in raw["schedule"])
        tol = raw.get("tolerances", {})
        if "newton" in tol:
            self.newton_tol = float(tol["newton"])
        if "cluster" in tol:
            self.cluster_tol = float(tol["cluster"])
        if "containment" in tol:
            self.containment_tol = float(tol["containment"])
        if "output" in raw:
            self.output = str(raw["output"])
        sampler = raw.get("sampler", {})
        for key in ("radius", "count", "multistarts", "rounds"):
            if key in sampler:
                setattr(self, key, type(getattr(self, key))(sampler[key]))
        proj = raw.get("projection")
        if proj:
            self.projection = tuple(_parse_scalar(c) for c in proj.get("coefficients", ()))
            if "t0" in proj:
                self.t0 = tuple(_parse_scalar(c) for c in proj["t0"])
        chi = raw.get("chi", {})
        if "extra_candidates" in chi:
            self.chi_extra_candidates = tuple(
                tuple(_parse_scalar(x) for x in t) for t in chi["extra_candidates"]
            )
        cloud = raw.get("cloud", {})
        if "schedule" in cloud:
            self.cloud_schedule = tuple(float(x) for x in cloud["schedule"])
        if "format" in cloud:
            self.export_format = str(cloud["format"])

    def _apply_args(self, args) -> None:
        if getattr(args, "map", None):
            self.map_text = args.map
        if getattr(args, "vars", None):
            self.variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        if getattr(args, "rho", None):
            self.rho_weights = tuple(_parse_weight(w.strip()) for w in args.rho.split(","))
        if getattr(args, "seed", None) is not None:
            self.seed = args.seed
        if getattr(args, "schedule", None):
            self.schedule = tuple(float(x) for x in args.schedule.split(","))
        if getattr(args, "tol", None) is not None:
            self.newton_tol = args.tol
        if getattr(args, "out", None):
            self.output = args.out
        if getattr(args, "radius", None) is not None:
            self.radius = args.radius
        if getattr(args, "count", None) is not None:
            self.count = args.count
        if getattr(args, "projection", None):
            self.projection = tuple(_parse_scalar(c.strip()) for c in args.projection.split(","))
        if getattr(args, "t0", None):
            self.t0 = tuple(_parse_scalar(c.strip()) for c in args.t0.split(","))
        if getattr(args, "t", None):
            self.fiber_values = tuple(
                tuple(_parse_scalar(c.strip()) for c in item.split(",")) for item in args.t
            )
        if getattr(args, "format", None):
            self.export_format = args.format

    def validate(self) -> None:
        if not self.map_text:
            raise ConfigError("no map given (use --map or a config file)")
        if not self.variables:
            raise ConfigError("no variables given (use --vars or a config file)")
        if self.newton_tol <= 0 or self.cluster_tol <= 0 or self.containment_tol <= 0:
            raise ConfigError("all tolerances must be positive")
        if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
            raise ConfigError("schedule must be strictly increasing")
        if self.radius <= 0 or self.count < 1:
            raise ConfigError("radius must be positive and count at least 1")

    def parse_map(self) -> PolyMap:
        return parse_poly_map(self.map_text, self.variables)

    def rho_spec(self, n: int) -> RhoSpec:
        weights = self.rho_weights or (Fraction(1),) * n
        if len(weights) != n:
            raise ConfigError(f"rho needs {n} weights, got {len(weights)}")
        try:
            return RhoSpec(weights)
        except ValueError as exc:
            raise ConfigError(str(exc))

    def echo(self) -> dict:
        return {
            "map": self.map_text,
            "variables": list(self.variables),
            "rho": [str(w) for w in (self.rho_weights or ())],
            "seed": self.seed,
            "schedule": list(self.schedule),
            "tolerances": {
                "newton": self.newton_tol,
                "cluster": self.cluster_tol,
                "containment": self.containment_tol,
            },
        }


# ---------------------------------------------------------------------------
# report fragments
# ---------------------------------------------------------------------------


def _k0_dict(verdict) -> dict:
    return {
        "status": verdict.status,
        "witness": _cvec(verdict.witness) if verdict.witness else None,
        "witness_value": _cvec(verdict.witness_value) if verdict.witness_value else None,
        "reason": verdict.reason,
    }


def _chi_dict(report, seed: int) -> dict:
    return {
        "status": "ok",
        "seed": seed,
        "generic_chi": report.generic_chi,
        "generic_samples": [{"t": _cvec(t), "chi": chi} for t, chi in report.generic_samples],
        "special_values": [{"t": _cvec(t), "chi": chi} for t, chi in report.special_values],
        "atypical": [_cvec(t) for t in report.atypical],
        "warnings": list(report.warnings),
    }


def _verdict_dict(v) -> dict:
    evidence = {}
    for key, value in v.evidence.items():
        if key == "escape":
            evidence[key] = {
                "levels": value["levels"],
                "minima": [m if m is not None else None for m in value["minima"]],
                "escapes": value["escapes"],
            }
        elif key == "algebraic":
            evidence[key] = {name: {"status": d["status"], "detail": d["detail"]} for name, d in value.items()}
        else:
            evidence[key] = value
    return {"status": v.status, "reason": v.reason, "evidence": evidence}


def _projection_dict(report, seed: int, delta: float) -> dict:
    return {
        "coefficients": _cvec(report.coefficients),
        "t0": _cvec(report.t0),
        "proper": _verdict_dict(report.proper),
        "cardinality_constant": _verdict_dict(report.cardinality_constant),
        "is_very_good": report.is_very_good,
        "seed": seed,
        "delta": delta,
    }


def _leading_dict(report, seed: int) -> dict:
    return {
        "status": "ok",
        "seed": seed,
        "rank_estimate": report.rank_estimate,
        "ambient_rank": report.ambient_rank,
        "zero_set_dim_estimate": report.zero_set_dim_estimate,
        "corank_relation_holds": report.corank_relation_holds,
        "warnings": list(report.warnings),
    }


def _asym_dict(cs: ClusterSet, seed: int, cluster_tol: float) -> dict:
    return {
        "seed": seed,
        "cluster_tol": cluster_tol,
        "levels": list(cs.levels),
        "per_level_samples": list(cs.per_level_samples),
        "clusters": [
            {
                "center": _cvec(c.center),
                "radius": c.radius,
                "first_level": c.first_level,
                "per_level_counts": list(c.per_level_counts),
            }
            for c in cs.clusters
        ],
        "low_confidence": cs.low_confidence,
        "warnings": list(cs.warnings),
    }


def _sample_dict(points, diagnostics, cfg: SamplerConfig) -> dict:
    return {
        "seed": cfg.seed,
        "tol": cfg.tol,
        "radius": cfg.radius,
        "points": [
            {"coords": list(p.coords), "residual": p.residual, "rho": p.radius} for p in points
        ],
        "diagnostics": diagnostics,
    }


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------


def run_analysis(cfg: JobConfig) -> dict:
    G = cfg.parse_map()
    rho = cfg.rho_spec(G.n)
    report: dict = {"command": "analyze", "config": cfg.echo()}

    k0 = check_K0_empty(G)
    report["k0"] = _k0_dict(k0)

    chi_atypical = []
    try:
        chi = chi_profile(G, ChiConfig(seed=cfg.seed, extra_candidates=list(cfg.chi_extra_candidates)))
        report["chi"] = _chi_dict(chi, cfg.seed)
        chi_atypical = [t for t in chi.atypical]
    except UnsupportedShapeError as exc:
        report["chi"] = {"status": "unsupported", "reason": str(exc)}
    except FiberError as exc:
        report["chi"] = {"status": "error", "reason": str(exc)}

    projections = []
    proj_cfg = ProjectionConfig(seed=cfg.seed)
    t0 = cfg.t0
    if t0 is None:
        t0 = tuple(chi_atypical[0]) if chi_atypical else (0j,) * G.m
    candidates = []
    if cfg.projection:
        candidates.append(tuple(cfg.projection))
    else:
        rng = np.random.default_rng(cfg.seed + 17)
        for _ in range(5):
            coeffs = rng.standard_normal(G.n) + 1j * rng.standard_normal(G.n)
            candidates.append(tuple(complex(c) for c in coeffs))
    for coeffs in candidates:
        try:
            pr = check_very_good_projection(G, coeffs, t0, proj_cfg)
            projections.append(_projection_dict(pr, cfg.seed, proj_cfg.delta))
        except (UnsupportedShapeError, FiberError) as exc:
            projections.append(
                {
                    "coefficients": _cvec(coeffs),
                    "t0": _cvec(t0),
                    "status": "unsupported",
                    "reason": str(exc),
                }
            )
    report["projections"] = projections

    try:
        lf = leading_form_report(G)
        report["leading_forms"] = _leading_dict(lf, cfg.seed)
    except FiberError as exc:
        report["leading_forms"] = {"status": "error", "reason": str(exc)}

    asym_cfg = AsymConfig(
        schedule=tuple(cfg.schedule),
        seed=cfg.seed,
        per_level_count=cfg.count,
        multistarts=cfg.multistarts,
        rounds=cfg.rounds,
        cluster_tol=cfg.cluster_tol,
        newton_tol=cfg.newton_tol,
    )
    asym = estimate_asymptotic_set(G, rho, asym_cfg)
    report["asymptotic"] = _asym_dict(asym, cfg.seed, cfg.cluster_tol)

    containment = containment_check(chi_atypical, asym, cfg.containment_tol)
    report["containment"] = {
        "holds": containment.holds,
        "distances": [d if math.isfinite(d) else None for d in containment.distances],
        "inconsistency": containment.inconsistency,
        "tol": cfg.containment_tol,
    }

    vgp_exists = any(p.get("is_very_good") for p in projections)
    chi_jump = bool(chi_atypical)
    lf_section = report["leading_forms"]
    report["hypothesis_flags"] = {
        "k0_empty": k0.status == "empty",
        "very_good_projection_exists": vgp_exists,
        "chi_jump_detected": chi_jump,
        "bifurcation_nonempty_established": bool(vgp_exists and chi_jump),
        "leading_form_zero_set_dim_one": lf_section.get("zero_set_dim_estimate") == 1,
        "leading_form_rank_at_least_n_minus_2": (
            lf_section.get("rank_estimate", -1) >= G.n - 2 if lf_section.get("status") == "ok" else False
        ),
    }
    return report


def _write_report(cfg: JobConfig, name: str, report: dict) -> Path:
    out_dir = Path(cfg.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(canonical_json(report))
    return path


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_analyze(cfg: JobConfig) -> int:
    report = run_analysis(cfg)
    path = _write_report(cfg, "analysis.json", report)
    print(path)
    return 0


def _cmd_k0(cfg: JobConfig) -> int:
    G = cfg.parse_map()
    report = {"command": "k0", "config": cfg.echo(), "k0": _k0_dict(check_K0_empty(G))}
    print(_write_report(cfg, "k0.json", report))
    return 0


def _cmd_singular_locus(cfg: JobConfig) -> int:
    G = cfg.parse_map()
    rho = cfg.rho_spec(G.n)
    minors = minor_system(jacobian(realify_map(G, rho)))
    sampler = SamplerConfig(
        radius=cfg.radius,
        count=cfg.count,
        seed=cfg.seed,
        tol=cfg.newton_tol,
        multistarts=cfg.multistarts,
        rounds=cfg.rounds,
    )
    result = sample_singular_locus(minors, sampler)
    report = {
        "command": "singular-locus",
        "config": cfg.echo(),
        "samples": _sample_dict(result.points, result.diagnostics, sampler),
    }
    print(_write_report(cfg, "singular-locus.json", report))
    return 0


def _cmd_asymptotic_set(cfg: JobConfig) -> int:
    G = cfg.parse_map()
    rho = cfg.rho_spec(G.n)
    asym_cfg = AsymConfig(
        schedule=tuple(cfg.schedule),
        seed=cfg.seed,
        per_level_count=cfg.count,
        multistarts=cfg.multistarts,
        rounds=cfg.rounds,
        cluster_tol=cfg.cluster_tol,
        newton_tol=cfg.newton_tol,
    )
    cs = estimate_asymptotic_set(G, rho, asym_cfg)
    report = {
        "command": "asymptotic-set",
        "config": cfg.echo(),
        "asymptotic": _asym_dict(cs, cfg.seed, cfg.cluster_tol),
    }
    print(_write_report(cfg, "asymptotic-set.json", report))
    return 0


def _cmd_check_projection(cfg: JobConfig) -> int:
    if not cfg.projection:
        raise ConfigError("check-projection needs --projection coefficients")
    G = cfg.parse_map()
    t0 = cfg.t0 if cfg.t0 is not None else (0j,) * G.m
    proj_cfg = ProjectionConfig(seed=cfg.seed)
    try:
        pr = check_very_good_projection(G, cfg.projection, t0, proj_cfg)
        section = _projection_dict(pr, cfg.seed, proj_cfg.delta)
    except (UnsupportedShapeError, FiberError) as exc:
        section = {"status": "unsupported", "reason": str(exc)}
    report = {"command": "check-projection", "config": cfg.echo(), "projection": section}
    print(_write_report(cfg, "check-projection.json", report))
    return 0


def _cmd_euler_profile(cfg: JobConfig) -> int:
    G = cfg.parse_map()
    report: dict = {"command": "euler-profile", "config": cfg.echo()}
    try:
        chi = chi_profile(G, ChiConfig(seed=cfg.seed, extra_candidates=list(cfg.chi_extra_candidates)))
        report["chi"] = _chi_dict(chi, cfg.seed)
    except UnsupportedShapeError as exc:
        report["chi"] = {"status": "unsupported", "reason": str(exc)}
    if cfg.fiber_values:
        from .fibers import euler_characteristic_plane_fiber, reduce_to_plane_family

        family = reduce_to_plane_family(G)
        fibers = []
        for t in cfg.fiber_values:
            try:
                value = euler_characteristic_plane_fiber(family.fiber_poly(t), 0.0)
                fibers.append({"t": _cvec(t), "chi": value})
            except FiberError as exc:
                fibers.append({"t": _cvec(t), "error": str(exc)})
        report["fibers"] = fibers
    print(_write_report(cfg, "euler-profile.json", report))
    return 0


def _cmd_build_vg(cfg: JobConfig) -> int:
    G = cfg.parse_map()
    rho = cfg.rho_spec(G.n)
    asym_cfg = AsymConfig(
        schedule=tuple(cfg.schedule),
        seed=cfg.seed,
        per_level_count=cfg.count,
        multistarts=cfg.multistarts,
        rounds=cfg.rounds,
        cluster_tol=cfg.cluster_tol,
        newton_tol=cfg.newton_tol,
    )
    asym = estimate_asymptotic_set(G, rho, asym_cfg)
    cloud_cfg = CloudConfig(
        schedule=cfg.cloud_schedule or tuple(0.25 * 2.0**k for k in range(9)),
        seed=cfg.seed,
        per_level_count=cfg.count,
        multistarts=cfg.multistarts,
        rounds=cfg.rounds,
        tol=cfg.newton_tol,
    )
    cloud = build_vg_cloud(G, rho, cloud_cfg, asym=asym)
    out_dir = Path(cfg.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    suffix = {"csv": ".csv", "ply": ".ply", "plot-script": ".gp"}.get(cfg.export_format)
    if suffix is None:
        raise ConfigError(f"unknown export format {cfg.export_format!r}")
    artifact = export_cloud(cloud, cfg.export_format, out_dir / f"vg-cloud{suffix}")
    report = {
        "command": "build-vg",
        "config": cfg.echo(),
        "cloud": {
            "rows": len(cloud),
            "limit_rows": sum(1 for l in cloud.levels if l == -1),
            "divergent_rows": cloud.metadata.get("divergent_rows", []),
            "artifact": str(artifact),
            "format": cfg.export_format,
            "schedule": list(cloud_cfg.schedule),
            "seed": cfg.seed,
        },
        "asymptotic": _asym_dict(asym, cfg.seed, cfg.cluster_tol),
    }
    print(_write_report(cfg, "build-vg.json", report))
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "k0": _cmd_k0,
    "singular-locus": _cmd_singular_locus,
    "asymptotic-set": _cmd_asymptotic_set,
    "check-projection": _cmd_check_projection,
    "euler-profile": _cmd_euler_profile,
    "build-vg": _cmd_build_vg,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polymap",
        description="Atypical-value analysis of complex polynomial mappings",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--map", help="semicolon-separated polynomial components")
        p.add_argument("--vars", help="comma-separated variable names")
        p.add_argument("--rho", help="comma-separated non-negative rational weights")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output directory")
        p.add_argument("--schedule", help="comma-separated escape radii")
        p.add_argument("--tol", type=float, help="newton/minor residual tolerance")
        p.add_argument("--radius", type=float)
        p.add_argument("--count", type=int)
        if name == "check-projection":
            p.add_argument("--projection", help="comma-separated linear-form coefficients")
            p.add_argument("--t0", help="comma-separated base value components")
        if name == "euler-profile":
            p.add_argument("--t", action="append", help="fiber value, comma-separated components")
        if name == "build-vg":
            p.add_argument("--format", choices=("csv", "ply", "plot-script"))
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = JobConfig.from_sources(args.config, args)
        return _COMMANDS[args.command](cfg)
    except ValueError as exc:  # ConfigError, ParseError, invariant violations
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
