"""Asymptotic values of G along the singular locus.

For a growing schedule of sphere radii, points of Sing(G, rho) with ambient
norm pinned to the sphere are sampled, their G-values collected per level,
and values linked across levels into clusters.  A cluster is kept only when
it is populated at every level from some point on and its per-level centers
settle (Cauchy-like stabilisation); the surviving centers estimate the set
of finite limits of G along sequences of the locus escaping to infinity.
The estimate is heuristic by nature: an empty result means "no asymptotic
values detected at these radii", not a proof of emptiness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numeric import PolyFunc, PolySystem, dedup_points
from .poly import PolyMap
from .realform import RhoSpec, realify_map
from .singular import SamplerConfig, _minor_scales, _sphere_poly, jacobian, minor_system, sample_singular_locus

__all__ = [
    "AsymConfig",
    "Cluster",
    "ClusterSet",
    "ContainmentVerdict",
    "estimate_asymptotic_set",
    "containment_check",
]


def default_schedule(levels: int = 7, base: float = 10.0) -> tuple:
    return tuple(base * 2.0**k for k in range(levels))


@dataclass
class AsymConfig:
    schedule: tuple = field(default_factory=default_schedule)
    seed: int = 0
    per_level_count: int = 40
    multistarts: int = 80
    rounds: int = 3
    cluster_tol: float = 0.05
    min_stable_levels: int = 3
    newton_tol: float = 1e-10

    def validate(self):
        if len(self.schedule) < self.min_stable_levels:
            raise ValueError("schedule shorter than the stability window")
        if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
            raise ValueError("schedule must be strictly increasing")


@dataclass(frozen=True)
class Cluster:
    center: tuple  # point of C^m
    radius: float  # spread of the last populated level
    first_level: int
    per_level_counts: tuple
    per_level_centers: tuple  # complex tuples, None for unpopulated levels


@dataclass(frozen=True)
class ClusterSet:
    clusters: tuple
    levels: tuple
    per_level_samples: tuple  # number of accepted locus samples per level
    low_confidence: bool = False
    warnings: tuple = ()

    def centers(self) -> list:
        return [c.center for c in self.clusters]

    def is_empty(self) -> bool:
        return not self.clusters


def _value_distance(a, b) -> float:
    return max(abs(x - y) for x, y in zip(a, b))


def _value_norm(a) -> float:
    return max(abs(x) for x in a)


def estimate_asymptotic_set(G: PolyMap, rho: RhoSpec, config: AsymConfig | None = None) -> ClusterSet:
    """Estimate the set of finite G-limits along the escaping singular locus.

    Escape is measured by the ambient Euclidean norm of the real point (the
    sphere constraint ||x|| = R_k), so the radii are comparable across
    different rho gauges; samples that drift more than 5% off the sphere
    are rejected by the sampler.  Deterministic for a fixed seed.
    """
    config = config or AsymConfig()
    config.validate()
    real_map = realify_map(G, rho)
    minors = minor_system(jacobian(real_map))
    g_fn = PolyFunc([c.to_float() for c in real_map.components], mode="real")
    minors_float = [p.to_float() for p in minors.minors]
    minor_fn = PolyFunc(minors_float, mode="real")
    arity = real_map.real_arity
    levels = tuple(float(r) for r in config.schedule)
    m = G.m
    warnings = []
    per_level_values = []
    per_level_samples = []
    prev_tracks = []  # (coords, value) pairs worth continuing to the next level

    def values_of(coords: np.ndarray):
        gv = g_fn.eval(coords)
        return [tuple(complex(row[2 * i], row[2 * i + 1]) for i in range(m)) for row in gv]

    for k, radius in enumerate(levels):
        cfg = SamplerConfig(
            radius=radius,
            count=config.per_level_count,
            seed=config.seed * 1009 + k,
            tol=config.newton_tol,
            multistarts=config.multistarts,
            rounds=config.rounds,
            sphere=radius,
        )
        result = sample_singular_locus(minors, cfg)
        coords = np.array([p.coords for p in result.points]) if result.points else np.zeros((0, arity))
        # value continuation: a value from the previous level is an
        # asymptotic candidate exactly when the locus still attains it on
        # the larger sphere, so solve {minors, sphere, G = v} from the
        # rescaled previous point; divergent branches find no solution
        scale_factor = radius / levels[k - 1] if k else 1.0
        minor_scale = _minor_scales(minors.minors, radius)
        for prev_pt, v in prev_tracks:
            match_rows = []
            for i in range(m):
                match_rows.append(real_map.components[2 * i].to_float() - complex(v[i].real))
                match_rows.append(real_map.components[2 * i + 1].to_float() - complex(v[i].imag))
            system = PolySystem(
                minors_float + [_sphere_poly(arity, radius)] + match_rows, mode="real"
            )
            vnorm = max(1.0, _value_norm(v))
            rows = np.concatenate([minor_scale, [max(1.0, radius**2)], [vnorm] * (2 * m)])
            start = np.asarray(prev_pt) * scale_factor
            pts, converged, _ = system.solve_newton(start[None, :], max_iter=40, tol=1e-11, scale=rows)
            if not converged[0]:
                continue
            pt = pts[0]
            if np.any(np.abs(minor_fn.eval(pt[None, :])[0]) > config.newton_tol * minor_scale):
                continue
            if abs(np.linalg.norm(pt) - radius) > 0.05 * radius:
                continue
            coords = np.vstack([coords, pt[None, :]]) if len(coords) else pt[None, :]
        if len(coords):
            coords = dedup_points(coords, 1e-6 * radius)
        values = values_of(coords) if len(coords) else []
        per_level_values.append(values)
        per_level_samples.append(len(values))
        # keep one representative track per distinct value, small values first
        tracks = sorted(zip(coords, values), key=lambda cv: (_value_norm(cv[1]), tuple((x.real, x.imag) for x in cv[1])))
        prev_tracks = []
        for pt, v in tracks:
            if any(_value_distance(v, u) <= 1e-3 * (1.0 + _value_norm(v)) for _, u in prev_tracks):
                continue
            prev_tracks.append((pt, v))
            if len(prev_tracks) >= 30:
                break

    empty_run = 0
    for count in per_level_samples:
        empty_run = empty_run + 1 if count == 0 else 0
        if empty_run >= 2:
            warnings.append("sampler returned nothing at two or more consecutive levels")
            break

    # cross-level single linkage on (level, value) pairs
    items = []
    for k, values in enumerate(per_level_values):
        for v in sorted(values, key=lambda t: tuple((x.real, x.imag) for x in t)):
            items.append((k, v))
    parent = list(range(len(items)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            va, vb = items[a][1], items[b][1]
            thr = config.cluster_tol * (1.0 + 0.5 * (_value_norm(va) + _value_norm(vb)))
            if _value_distance(va, vb) <= thr:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra

    groups: dict = {}
    for idx in range(len(items)):
        groups.setdefault(find(idx), []).append(items[idx])

    clusters = []
    n_levels = len(levels)
    for group in groups.values():
        by_level: dict = {}
        for k, v in group:
            by_level.setdefault(k, []).append(v)
        level_centers = []
        for k in range(n_levels):
            if k in by_level:
                vals = by_level[k]
                center = tuple(sum(v[i] for v in vals) / len(vals) for i in range(m))
                level_centers.append(center)
            else:
                level_centers.append(None)
        populated = [k for k in range(n_levels) if level_centers[k] is not None]
        first = populated[0]
        # must be populated at every level from some point on, covering the
        # stability window at the top of the schedule
        tail_start = n_levels - config.min_stable_levels
        contiguous_from = next(
            (k for k in range(n_levels) if all(level_centers[j] is not None for j in range(k, n_levels))),
            None,
        )
        if contiguous_from is None or contiguous_from > tail_start:
            continue
        tail = [level_centers[j] for j in range(tail_start, n_levels)]
        limit = tail[-1]
        thr = config.cluster_tol * (1.0 + _value_norm(limit))
        if any(_value_distance(a, b) > thr for a in tail for b in tail):
            continue
        # monotone stabilisation towards the limit, with the linking slack
        dists = [_value_distance(level_centers[j], limit) for j in range(contiguous_from, n_levels)]
        if any(b > a + thr for a, b in zip(dists, dists[1:])):
            continue
        spread = 0.0
        for v in by_level[n_levels - 1]:
            spread = max(spread, _value_distance(v, limit))
        counts = tuple(len(by_level.get(k, ())) for k in range(n_levels))
        clusters.append(
            Cluster(
                center=limit,
                radius=spread,
                first_level=first,
                per_level_counts=counts,
                per_level_centers=tuple(level_centers),
            )
        )
    clusters.sort(key=lambda c: tuple((x.real, x.imag) for x in c.center))
    low_confidence = bool(warnings)
    return ClusterSet(
        clusters=tuple(clusters),
        levels=levels,
        per_level_samples=tuple(per_level_samples),
        low_confidence=low_confidence,
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class ContainmentVerdict:
    holds: bool
    distances: tuple  # per tested point: distance to the nearest center
    inconsistency: str = ""


def containment_check(bifurcation_points, clusters: ClusterSet, tol: float = 0.1) -> ContainmentVerdict:
    """Check that each detected atypical value sits near some cluster center.

    Vacuously true for an empty input; a nonempty input against an empty
    cluster set is reported as an inconsistency between the fiber-topology
    and asymptotic estimators.
    """
    points = [tuple(complex(x) for x in p) for p in bifurcation_points]
    if not points:
        return ContainmentVerdict(True, ())
    if clusters.is_empty():
        return ContainmentVerdict(
            False,
            tuple(float("inf") for _ in points),
            "atypical values found but no asymptotic clusters detected",
        )
    dists = []
    for p in points:
        dists.append(min(_value_distance(p, c) for c in clusters.centers()))
    holds = all(d <= tol for d in dists)
    return ContainmentVerdict(holds, tuple(dists), "" if holds else "an atypical value is far from every cluster")
