"""Singular locus of (G, rho): Jacobian, maximal minors, sampling, K0 test.

The locus is the set of real points where the (2m+1) x 2n Jacobian of the
realified map extended by the gradient of rho drops below full rank,
equivalently where all maximal minors vanish.  Sampling intersects that
variety with random affine slices (and optionally a sphere) and polishes
candidates with a damped Newton iteration; the critical-value test works
exactly, by resultant elimination over the Gaussian rationals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import elim
from .elim import ElimError, UniPoly, cluster_values
from .numeric import PolyFunc, PolySystem, dedup_points
from .poly import GaussRat, MPoly, PolyMap
from .realform import RealPolyMap

__all__ = [
    "JacobianMatrix",
    "MinorSystem",
    "SamplePoint",
    "SamplerConfig",
    "SampleResult",
    "K0Verdict",
    "jacobian",
    "minor_system",
    "check_K0_empty",
    "sample_singular_locus",
    "local_dimension_estimate",
]


@dataclass(frozen=True)
class JacobianMatrix:
    """(2m+1) x 2n matrix of exact real polynomials; last row is grad rho."""

    source: RealPolyMap
    rows: tuple  # tuple of tuples of MPoly

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.rows[0]))


@dataclass(frozen=True)
class MinorSystem:
    """All maximal minors of the Jacobian; their common zeros form the locus."""

    jacobian: JacobianMatrix
    column_sets: tuple
    minors: tuple  # exact MPoly values


@dataclass(frozen=True)
class SamplePoint:
    coords: tuple  # 2n real coordinates
    residual: float  # max |minor| at coords
    radius: float  # rho(coords)

    @property
    def norm(self) -> float:
        return math.sqrt(sum(x * x for x in self.coords))


@dataclass
class SamplerConfig:
    radius: float = 1.0
    count: int = 50
    seed: int = 0
    tol: float = 1e-10
    dedup_rel: float = 1e-6
    max_newton: int = 50
    multistarts: int = 120
    rounds: int = 4
    sphere: float | None = None  # ambient-norm sphere level ||x|| = sphere
    slices: list | None = None  # explicit [(normal vector, offset), ...]
    start_center: tuple | None = None
    start_spread: float | None = None

    def validate(self) -> None:
        if self.radius <= 0 or self.count < 1 or self.tol <= 0:
            raise ValueError("radius, count and tol must be positive")


@dataclass
class SampleResult:
    points: list
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class K0Verdict:
    status: str  # "empty" | "nonempty" | "undecided"
    witness: tuple | None = None  # critical point in C^n
    witness_value: tuple | None = None  # its image
    reason: str = ""

    @property
    def is_empty(self) -> bool:
        return self.status == "empty"


def jacobian(G_real: RealPolyMap) -> JacobianMatrix:
    """Exact symbolic Jacobian of (components of G, rho).

    The gradient row uses the exact derivative 2*a_j*x_j; any row scaling
    leaves the rank condition unchanged.
    """
    arity = G_real.real_arity
    rows = [tuple(comp.derivative(j) for j in range(arity)) for comp in G_real.components]
    rows.append(tuple(G_real.rho.derivative(j) for j in range(arity)))
    return JacobianMatrix(G_real, tuple(rows))


def _det(rows) -> MPoly:
    """Exact determinant by expansion along the sparsest row."""
    n = len(rows)
    arity = rows[0][0].arity
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    best = min(range(n), key=lambda i: sum(0 if e.is_zero() else 1 for e in rows[i]))
    det = MPoly.zero(arity)
    for j, entry in enumerate(rows[best]):
        if entry.is_zero():
            continue
        sub = [tuple(r[k] for k in range(n) if k != j) for i, r in enumerate(rows) if i != best]
        cof = entry * _det(sub)
        det = det + cof if (best + j) % 2 == 0 else det - cof
    return det


def minor_system(J: JacobianMatrix) -> MinorSystem:
    """All C(2n, 2m+1) maximal minors, exact, in lexicographic column order."""
    nrows, ncols = J.shape
    if nrows > ncols:
        raise ValueError("more rows than columns: no maximal minors of this shape")
    minors = []
    col_sets = list(itertools.combinations(range(ncols), nrows))
    for cols in col_sets:
        sub = [tuple(row[c] for c in cols) for row in J.rows]
        minors.append(_det(sub))
    return MinorSystem(J, tuple(col_sets), tuple(minors))


# ---------------------------------------------------------------------------
# critical values of the complex map (K0 emptiness)
# ---------------------------------------------------------------------------

_FREE_PROBE = complex(0.0, 0.0), complex(0.5361257, -0.2718282)


def _complex_minors(G: PolyMap) -> list:
    jac = G.complex_jacobian()
    minors = []
    for cols in itertools.combinations(range(G.n), G.m):
        sub = [tuple(jac[i][c] for c in cols) for i in range(G.m)]
        minors.append(_det(sub))
    return [p for p in minors if not p.is_zero()]


def _eliminate_tower(system, arity):
    """Successive resultant elimination of the last variable.

    Level j holds polynomials in the first j variables.  Projections of
    common zeros always land in the next level's zero set, so a nonzero
    constant at any level certifies emptiness.
    """
    levels = {arity: list(system)}
    for j in range(arity, 1, -1):
        with_var = [p for p in levels[j] if p.degree_in(j - 1) > 0]
        without = [p for p in levels[j] if p.degree_in(j - 1) <= 0 and not p.is_zero()]
        nxt = list(without)
        if len(with_var) >= 2:
            pivot = min(with_var, key=lambda p: p.degree_in(j - 1))
            for other in with_var:
                if other is pivot:
                    continue
                r = elim.resultant(pivot, other, j - 1)
                if not r.is_zero():
                    nxt.append(r)
        levels[j - 1] = nxt
    return levels


def _specialize(p: MPoly, prefix) -> MPoly:
    """Substitute exact float values for the first len(prefix) variables."""
    out = p
    for j, v in enumerate(prefix):
        out = out.substitute(j, MPoly.const(p.arity, GaussRat.from_value(complex(v))))
    return out


def _univar_roots(p: MPoly, var: int):
    coeffs = [c.constant_value().to_complex() for c in p.coefficients_in(var)]
    u = UniPoly.from_complex(coeffs).trimmed(1e-12)
    if u.degree < 1:
        return None  # constant after specialisation
    return elim.roots(u, cluster_rel=1e-8).values()


def check_K0_empty(G: PolyMap) -> K0Verdict:
    """Decide whether the complex map has critical points.

    Exact shortcuts (a unit minor, an identically-zero Jacobian) are tried
    first; otherwise the minor system is reduced by a resultant tower and
    candidate points are enumerated by back-substitution and verified
    numerically.  Shapes outside m = n-1 or (m = 1, n <= 3) are refused.
    """
    n, m = G.n, G.m
    if not (m == n - 1 or (m == 1 and n <= 3)):
        return K0Verdict("undecided", reason=f"unsupported shape n={n}, m={m} for elimination")
    minors = _complex_minors(G)
    if not minors:
        # Jacobian rank < m everywhere: every point is critical
        witness = (0j,) * n
        return K0Verdict("nonempty", witness, G.evaluate(witness), "rank deficient everywhere")
    for p in minors:
        if p.is_constant() and p.constant_value():
            return K0Verdict("empty", reason="a maximal Jacobian minor is a nonzero constant")

    levels = _eliminate_tower(minors, n)
    for j in sorted(levels):
        for p in levels[j]:
            if p.is_constant() and p.constant_value():
                return K0Verdict("empty", reason=f"elimination produced a nonzero constant at level {j}")

    system = PolySystem(minors, mode="complex")
    free_event = False
    candidates = [()]
    for j in range(1, n + 1):
        nxt = []
        for prefix in candidates:
            polys = [_specialize(p, prefix) for p in levels[j]]
            constraints = []
            feasible = True
            for p in polys:
                if p.is_zero():
                    continue
                if p.degree_in(j - 1) <= 0:
                    val = p.constant_value().to_complex()
                    scale = max(1.0, max(abs(c.to_complex()) for c in levels[j][0].terms.values()) if levels[j] else 1.0)
                    if abs(val) > 1e-7 * scale:
                        feasible = False
                        break
                    continue
                constraints.append(p)
            if not feasible:
                continue
            if not constraints:
                free_event = True
                for guess in _FREE_PROBE:
                    nxt.append(prefix + (guess,))
                continue
            root_lists = []
            for p in constraints:
                rts = _univar_roots(p, j - 1)
                if rts is None:
                    continue
                root_lists.append(rts)
            if not root_lists:
                free_event = True
                for guess in _FREE_PROBE:
                    nxt.append(prefix + (guess,))
                continue
            base = root_lists[0]
            for r in base:
                ok = True
                for other, poly in zip(root_lists[1:], constraints[1:]):
                    if min((abs(r - o) for o in other), default=np.inf) > 1e-5 * max(1.0, abs(r)):
                        ok = False
                        break
                if ok:
                    nxt.append(prefix + (r,))
        candidates = nxt
        if len(candidates) > 400:
            candidates = candidates[:400]
            free_event = True  # truncation: emptiness no longer certified

    for cand in candidates:
        x = np.array(cand, dtype=complex)
        polished, converged, _ = system.solve_newton(x[None, :], max_iter=40, tol=1e-11)
        vals = system.F(polished)
        if np.all(np.abs(vals[0]) < 1e-8):
            witness = tuple(complex(v) for v in polished[0])
            return K0Verdict("nonempty", witness, G.evaluate(witness), "verified common zero of the Jacobian minors")
    if free_event:
        return K0Verdict("undecided", reason="elimination left a free variable and probing found no witness")
    return K0Verdict("empty", reason="no candidate from the elimination tower survives verification")


# ---------------------------------------------------------------------------
# singular-locus sampling
# ---------------------------------------------------------------------------


def _minor_scales(minors, R: float) -> np.ndarray:
    scales = []
    for p in minors:
        s = max(1.0, R) ** max(p.degree(), 0)
        scales.append(s)
    return np.array(scales)


def _affine_poly(arity: int, normal: np.ndarray, offset: float) -> MPoly:
    terms = {(0,) * arity: complex(-offset)}
    for j, a in enumerate(normal):
        if a != 0:
            mono = tuple(1 if k == j else 0 for k in range(arity))
            terms[mono] = complex(a)
    return MPoly(arity, terms)


def _sphere_poly(arity: int, level: float) -> MPoly:
    terms = {(0,) * arity: complex(-(level * level))}
    for j in range(arity):
        mono = tuple(2 if k == j else 0 for k in range(arity))
        terms[mono] = complex(1.0)
    return MPoly(arity, terms)


def sample_singular_locus(minors: MinorSystem, config: SamplerConfig) -> SampleResult:
    """Sample the common zero set of the minors by sliced Newton multistart.

    Each round intersects the locus with random affine slices (their count
    matches the expected locus dimension 2m, one fewer when a sphere
    constraint is active); the damped Gauss-Newton iteration runs on the
    full minor system plus the slice rows, so converged points satisfy
    every minor, not a projection of them.  Accepted points must drive
    every exact minor below ``tol`` (scaled by max(1, R)^deg), be
    deduplicated at ``dedup_rel * R`` and, with a sphere constraint, keep
    the ambient norm within 5% of the requested level.
    """
    config.validate()
    jac = minors.jacobian
    real_map = jac.source
    arity = real_map.real_arity
    n, m = real_map.n, real_map.m
    rng = np.random.default_rng(config.seed)
    R = config.radius
    minors_float = [p.to_float() for p in minors.minors]
    minor_fn = PolyFunc(minors_float, mode="real")
    rho_fn = PolyFunc([real_map.rho.to_float()], mode="real")
    locus_codim = max(1, 2 * n - 2 * m)
    slice_needed = max(0, arity - locus_codim - (1 if config.sphere is not None else 0))

    minor_scale = _minor_scales(minors.minors, R)
    diag = {
        "rounds": 0,
        "starts": 0,
        "converged": 0,
        "accepted": 0,
        "rejected_residual": 0,
        "rejected_sphere": 0,
        "warnings": [],
    }

    accepted = []
    rounds = 1 if config.slices is not None else config.rounds
    for _ in range(rounds):
        diag["rounds"] += 1
        if config.slices is not None:
            slice_polys = [_affine_poly(arity, np.asarray(a, dtype=float), float(c)) for a, c in config.slices]
        else:
            slice_polys = []
            for _ in range(slice_needed):
                normal = rng.standard_normal(arity)
                normal /= np.linalg.norm(normal)
                anchor = rng.standard_normal(arity)
                anchor *= (0.7 * R * rng.random() ** 0.5) / max(np.linalg.norm(anchor), 1e-12)
                slice_polys.append(_affine_poly(arity, normal, float(normal @ anchor)))
        system_polys = minors_float + slice_polys
        scale_rows = list(minor_scale) + [max(1.0, R)] * len(slice_polys)
        if config.sphere is not None:
            system_polys.append(_sphere_poly(arity, config.sphere))
            scale_rows.append(max(1.0, config.sphere**2))
        system = PolySystem(system_polys, mode="real")

        center = np.zeros(arity) if config.start_center is None else np.asarray(config.start_center, dtype=float)
        spread = (1.2 * R) if config.start_spread is None else config.start_spread
        starts = center[None, :] + spread * rng.standard_normal((config.multistarts, arity))
        if config.start_center is None:
            # give half the starts log-uniform per-coordinate-pair magnitudes,
            # so branches hugging coordinate subspaces are reachable; the
            # exponent range grows with R to keep absolute scales covered
            half = config.multistarts // 2
            lo = -(3.0 + max(0.0, math.log10(max(R, 1e-300))))
            for row in range(half):
                for j in range(n):
                    mag = 10.0 ** rng.uniform(lo, 0.0)
                    starts[row, 2 * j : 2 * j + 2] *= mag
        if config.sphere is not None:
            norms = np.linalg.norm(starts, axis=1, keepdims=True)
            starts = starts / np.maximum(norms, 1e-12) * config.sphere
        diag["starts"] += len(starts)

        pts, converged, _ = system.solve_newton(
            starts, max_iter=config.max_newton, tol=1e-12, scale=np.array(scale_rows)
        )
        pts = pts[converged]
        diag["converged"] += int(np.sum(converged))
        if len(pts) == 0:
            continue
        residuals = np.abs(minor_fn.eval(pts))
        ok = np.all(residuals <= config.tol * minor_scale[None, :], axis=1)
        diag["rejected_residual"] += int(np.sum(~ok))
        pts = pts[ok]
        residuals = residuals[ok]
        if config.sphere is not None and len(pts):
            norms = np.linalg.norm(pts, axis=1)
            near = np.abs(norms - config.sphere) <= 0.05 * config.sphere
            diag["rejected_sphere"] += int(np.sum(~near))
            pts = pts[near]
            residuals = residuals[near]
        for p, r in zip(pts, residuals):
            accepted.append((tuple(float(v) for v in p), float(np.max(r))))

    if not accepted:
        diag["warnings"].append("no convergent starts produced accepted samples")
        return SampleResult([], diag)

    coords = np.array([p for p, _ in accepted])
    kept = dedup_points(coords, config.dedup_rel * max(R, 1e-12))
    best = {}
    for p, r in accepted:
        arr = np.array(p)
        for q in kept:
            if np.linalg.norm(arr - q) <= config.dedup_rel * max(R, 1e-12):
                key = tuple(float(v) for v in q)
                if key not in best or r < best[key]:
                    best[key] = r
                break
    points = []
    for q in kept:
        key = tuple(float(v) for v in q)
        rho_val = float(rho_fn.eval(np.array(q)[None, :])[0, 0])
        points.append(SamplePoint(key, best.get(key, 0.0), rho_val))
        if len(points) >= config.count:
            break
    diag["accepted"] = len(points)
    return SampleResult(points, diag)


def local_dimension_estimate(
    minors: MinorSystem,
    base_point,
    seed: int = 0,
    neighborhood: float = 0.05,
    clouds: int = 40,
    tol: float = 1e-10,
) -> tuple:
    """PCA dimension of the locus near a base point.

    Samples the locus with slices through random points close to the base,
    keeps samples inside a small ball, and reads the dimension off the
    largest gap in the singular-value profile of the centred cloud.
    Returns ``(dimension, singular_values)``.
    """
    base = np.asarray(base_point, dtype=float)
    arity = len(base)
    rng = np.random.default_rng(seed)
    cloud = []
    for k in range(clouds):
        slices = []
        n, m = minors.jacobian.source.n, minors.jacobian.source.m
        combos_needed = max(1, 2 * n - 2 * m)
        for _ in range(arity - combos_needed):
            normal = rng.standard_normal(arity)
            normal /= np.linalg.norm(normal)
            anchor = base + neighborhood * rng.standard_normal(arity)
            slices.append((normal, float(normal @ anchor)))
        cfg = SamplerConfig(
            radius=max(1.0, float(np.linalg.norm(base))),
            count=4,
            seed=seed * 1000 + k,
            tol=tol,
            multistarts=12,
            slices=slices,
            start_center=tuple(base),
            start_spread=2.0 * neighborhood,
        )
        res = sample_singular_locus(minors, cfg)
        for p in res.points:
            arr = np.array(p.coords)
            if np.linalg.norm(arr - base) <= 3.0 * neighborhood:
                cloud.append(arr)
    if len(cloud) < 5:
        return -1, np.array([])
    cloud_arr = np.array(cloud)
    centered = cloud_arr - cloud_arr.mean(axis=0)
    svals = np.linalg.svd(centered, compute_uv=False)
    svals = svals / max(svals[0], 1e-300)
    # tangent directions scale like the neighborhood radius, curvature like
    # its square; a fixed relative cutoff separates the two regimes
    dim = int(np.sum(svals >= 0.2))
    return dim, svals
