"""Point cloud of the singular locus pushed through (G, phi).

Each accepted locus sample maps to a row (Re G_1, Im G_1, ..., phi) in
R^(2m+1); phi = 1/(1+rho) compactifies the escape direction, so the cloud
of a map with one atypical value closes up towards a cone apex as the
radius grows.  Cluster centers from the asymptotic estimator can be
appended as an exact phi = 0 limit layer.  Export formats: CSV, ascii PLY
and a gnuplot script that renders the CSV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .asymptotic import ClusterSet
from .numeric import PolyFunc
from .poly import PolyMap
from .realform import RhoSpec, realify_map
from .singular import MinorSystem, SamplerConfig, jacobian, minor_system, sample_singular_locus

__all__ = ["CloudConfig", "VGCloud", "build_vg_cloud", "export_cloud", "load_cloud_csv", "map_samples"]


def _cloud_schedule() -> tuple:
    return tuple(0.25 * 2.0**k for k in range(9))


@dataclass
class CloudConfig:
    schedule: tuple = field(default_factory=_cloud_schedule)
    seed: int = 0
    per_level_count: int = 60
    multistarts: int = 80
    rounds: int = 3
    tol: float = 1e-10
    drop_rank_deficient: bool = True
    rank_threshold: float = 1e-8


@dataclass(frozen=True)
class VGCloud:
    points: tuple  # rows (2m+1 floats): realified G values then phi
    levels: tuple  # per row: schedule index, -1 for the limit layer
    provenance: tuple  # per row: sample index within its level, -1 for limits
    residuals: tuple  # per row: max |minor| of the source sample (0.0 for limits)
    m: int
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)


def map_samples(real_map, samples) -> list:
    """Rows (realified G, phi) for locus samples; phi stays in (0, 1]."""
    if not samples:
        return []
    g_fn = PolyFunc([c.to_float() for c in real_map.components], mode="real")
    coords = np.array([p.coords for p in samples])
    gv = g_fn.eval(coords)
    rows = []
    for sample, values in zip(samples, gv):
        phi = 1.0 / (1.0 + sample.radius)
        rows.append(tuple(float(v) for v in values) + (phi,))
    return rows


def _restricted_rank_ok(real_map, minors: MinorSystem, coords: np.ndarray, threshold: float) -> np.ndarray:
    """Keep samples where (G, phi) restricted to the locus tangent is immersive.

    The tangent space is the numeric null space of the minor-system
    Jacobian; rank deficiency of D(G, phi) on it marks points close to the
    critical set of the restriction, which are excluded from the cloud.
    """
    arity = real_map.real_arity
    m = real_map.m
    minor_jac = PolyFunc(
        [p.to_float().derivative(j) for p in minors.minors for j in range(arity)], mode="real"
    )
    map_jac = PolyFunc(
        [c.to_float().derivative(j) for c in list(real_map.components) + [real_map.rho] for j in range(arity)],
        mode="real",
    )
    keep = np.ones(len(coords), dtype=bool)
    expected = 2 * m
    for i, x in enumerate(coords):
        Jm = minor_jac.eval(x[None, :]).reshape(len(minors.minors), arity)
        _, s, vt = np.linalg.svd(Jm)
        rank = int(np.sum(s >= max(threshold * (s[0] if len(s) else 1.0), 1e-12)))
        tangent = vt[rank:].T  # (arity, tangent dim)
        if tangent.shape[1] < expected:
            keep[i] = False
            continue
        Jf = map_jac.eval(x[None, :]).reshape(2 * m + 1, arity)
        restricted = Jf @ tangent
        sr = np.linalg.svd(restricted, compute_uv=False)
        r = int(np.sum(sr >= threshold * max(sr[0] if len(sr) else 0.0, 1e-300)))
        keep[i] = r >= expected
    return keep


def build_vg_cloud(
    G: PolyMap,
    rho: RhoSpec,
    config: CloudConfig | None = None,
    asym: ClusterSet | None = None,
) -> VGCloud:
    """Sample the singular locus over a radius schedule and map it through (G, phi).

    When an asymptotic estimate is supplied, its cluster centers are added
    as a phi = 0 limit layer (level -1), realising the boundary the cloud
    accumulates on.  Samples at the top level whose G-value stays far from
    every accepted cluster are recorded in ``metadata['divergent_rows']``
    instead of being assigned a limit.
    """
    config = config or CloudConfig()
    real_map = realify_map(G, rho)
    minors = minor_system(jacobian(real_map))
    rows = []
    levels = []
    provenance = []
    residuals = []
    for k, radius in enumerate(config.schedule):
        cfg = SamplerConfig(
            radius=float(radius),
            count=config.per_level_count,
            seed=config.seed * 733 + k,
            tol=config.tol,
            multistarts=config.multistarts,
            rounds=config.rounds,
            sphere=float(radius),
        )
        result = sample_singular_locus(minors, cfg)
        samples = result.points
        if not samples:
            continue
        if config.drop_rank_deficient:
            coords = np.array([p.coords for p in samples])
            keep = _restricted_rank_ok(real_map, minors, coords, config.rank_threshold)
            samples = [s for s, ok in zip(samples, keep) if ok]
        for idx, (sample, row) in enumerate(zip(samples, map_samples(real_map, samples))):
            rows.append(row)
            levels.append(k)
            provenance.append(idx)
            residuals.append(sample.residual)
    divergent = []
    if asym is not None and rows:
        top = max(levels) if levels else -1
        centers = asym.centers()
        m = G.m
        for i, (row, lev) in enumerate(zip(rows, levels)):
            if lev != top:
                continue
            value = tuple(complex(row[2 * j], row[2 * j + 1]) for j in range(m))
            if centers:
                near = min(max(abs(a - b) for a, b in zip(value, c)) for c in centers)
                if near > 0.5 * (1.0 + max(abs(x) for x in value)):
                    divergent.append(i)
            else:
                divergent.append(i)
        for cluster in asym.clusters:
            limit_row = []
            for x in cluster.center:
                limit_row.extend((x.real, x.imag))
            limit_row.append(0.0)
            rows.append(tuple(limit_row))
            levels.append(-1)
            provenance.append(-1)
            residuals.append(0.0)
    metadata = {
        "rho_weights": [str(w) for w in rho.weights],
        "schedule": [float(r) for r in config.schedule],
        "seed": config.seed,
        "divergent_rows": divergent,
    }
    if not rows:
        metadata["warning"] = "empty sample set"
    return VGCloud(
        points=tuple(rows),
        levels=tuple(levels),
        provenance=tuple(provenance),
        residuals=tuple(residuals),
        m=G.m,
        metadata=metadata,
    )


def _csv_header(m: int) -> str:
    cols = []
    for i in range(1, m + 1):
        cols.extend((f"g_re_{i}", f"g_im_{i}"))
    cols.extend(("phi", "level"))
    return ",".join(cols)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def export_cloud(cloud: VGCloud, fmt: str, path) -> Path:
    """Write the cloud as ``csv``, ascii ``ply`` or a gnuplot ``plot-script``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        lines = [_csv_header(cloud.m)]
        for row, level in zip(cloud.points, cloud.levels):
            lines.append(",".join([_fmt(v) for v in row] + [str(level)]))
        path.write_text("\n".join(lines) + "\n")
        return path
    if fmt == "ply":
        if not cloud.points:
            raise ValueError("cannot write a PLY file for an empty cloud")
        extra = []
        for i in range(2, cloud.m + 1):
            extra.extend((f"g_re_{i}", f"g_im_{i}"))
        header = [
            "ply",
            "format ascii 1.0",
            f"element vertex {len(cloud.points)}",
            "property float x",
            "property float y",
            "property float z",
            *(f"property float {name}" for name in extra),
            "property int level",
            "end_header",
        ]
        lines = header
        for row, level in zip(cloud.points, cloud.levels):
            x, y = row[0], row[1]
            z = row[-1]  # phi as the height coordinate
            rest = row[2:-1]
            lines.append(" ".join([_fmt(x), _fmt(y), _fmt(z)] + [_fmt(v) for v in rest] + [str(level)]))
        path.write_text("\n".join(lines) + "\n")
        return path
    if fmt == "plot-script":
        csv_path = path.with_suffix(".csv")
        export_cloud(cloud, "csv", csv_path)
        phi_col = 2 * cloud.m + 1
        script = "\n".join(
            [
                "set datafile separator ','",
                "set xlabel 'Re G_1'",
                "set ylabel 'Im G_1'",
                "set zlabel 'phi'",
                "set view 60, 30",
                f"splot '{csv_path.name}' skip 1 using 1:2:{phi_col} with points pointtype 7 pointsize 0.3 notitle",
                "pause -1",
            ]
        )
        path.write_text(script + "\n")
        return path
    raise ValueError(f"unknown export format {fmt!r}")


def load_cloud_csv(path) -> tuple:
    """Read back an exported CSV; returns (rows, levels)."""
    lines = Path(path).read_text().strip().splitlines()
    rows = []
    levels = []
    for line in lines[1:]:
        parts = line.split(",")
        rows.append(tuple(float(v) for v in parts[:-1]))
        levels.append(int(parts[-1]))
    return rows, levels
