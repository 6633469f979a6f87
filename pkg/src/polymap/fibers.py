"""Fiber topology of polynomial maps.

Euler characteristics of plane-curve fibers via branched-cover counting,
atypical-value detection through jumps of the fiber Euler characteristic,
properness and cardinality certificates for linear projections restricted
to fibers, and rank/dimension probes for the leading forms.

Maps other than C^2 -> C are handled when they reduce to a plane-curve
family: a chain of components that are affine-linear (unit coefficient up
to a constant) in some variable can be solved and substituted away, which
covers suspensions and graph-like components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import elim
from .elim import ElimError, UniPoly, cluster_values
from .numeric import PolySystem
from .poly import GaussRat, MPoly, PolyMap

__all__ = [
    "FiberError",
    "UnsupportedShapeError",
    "PlaneFamily",
    "ChiConfig",
    "ChiReport",
    "ProjectionConfig",
    "ProjectionReport",
    "LeadingFormConfig",
    "LeadingFormReport",
    "reduce_to_plane_family",
    "euler_characteristic_plane_fiber",
    "chi_profile",
    "check_very_good_projection",
    "leading_form_report",
]


class FiberError(ValueError):
    pass


class UnsupportedShapeError(FiberError):
    pass


def exactify(x, tol: float = 1e-9, max_denominator: int = 10**6) -> GaussRat:
    """Exact value for a float-complex number, preferring small rationals.

    Values within ``tol`` of a fraction with small denominator are snapped
    to it (so eliminant roots like 0 or 1/2 regain exactness); otherwise
    the dyadic float value itself is used, which is still exact.
    """
    if isinstance(x, GaussRat):
        return x
    z = complex(x)
    fr = Fraction(z.real).limit_denominator(max_denominator)
    fi = Fraction(z.imag).limit_denominator(max_denominator)
    snapped = complex(float(fr), float(fi))
    if abs(snapped - z) <= tol * max(1.0, abs(z)):
        return GaussRat(fr, fi)
    return GaussRat.from_value(z)


# ---------------------------------------------------------------------------
# reduction to a plane-curve family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneFamily:
    """Plane-curve family equivalent to the fibers of the original map.

    ``poly`` lives in the ring (u, v, T_1..T_m); the fiber over t is the
    plane curve ``poly(u, v, t) = 0``.  ``substitutions`` records the
    solved variables in the extended ring of the original map, so linear
    forms can be pushed through the same reduction.
    """

    source: PolyMap
    poly: MPoly  # arity 2 + m
    kept_vars: tuple  # indices of the two surviving original variables
    variable_names: tuple  # names for (u, v, T_1..T_m)
    substitutions: tuple  # ((ext var index, replacement in ext ring), ...)

    @property
    def m(self) -> int:
        return self.source.m

    def fiber_poly(self, t) -> MPoly:
        """Exact plane-curve polynomial of the fiber over t."""
        if len(t) != self.m:
            raise ValueError("fiber point has wrong dimension")
        out = self.poly
        for k, val in enumerate(t):
            out = out.substitute(2 + k, MPoly.const(out.arity, exactify(val)))
        return out.restrict_to((0, 1)).extend_arity(2)

    def probe_poly(self, axis: int, fixed) -> MPoly:
        """Family polynomial with every parameter but one frozen."""
        out = self.poly
        for k, val in fixed.items():
            if k == axis:
                raise ValueError("cannot freeze the probe axis")
            out = out.substitute(2 + k, MPoly.const(out.arity, exactify(val)))
        return out

    def transform_linear(self, coefficients) -> MPoly:
        """Push a linear form on the source through the reduction.

        Result lives in the family ring (u, v, T_1..T_m).
        """
        n, m = self.source.n, self.m
        ext = n + m
        acc = MPoly.zero(ext)
        for j, a in enumerate(coefficients):
            ga = exactify(a, tol=0.0) if isinstance(a, GaussRat) else GaussRat.from_value(complex(a))
            if ga:
                acc = acc + MPoly.variable(ext, j) * ga
        for var, repl in self.substitutions:
            acc = acc.substitute(var, repl)
        keep = list(self.kept_vars) + [n + k for k in range(m)]
        return acc.restrict_to(keep).extend_arity(2 + m)


def reduce_to_plane_family(G: PolyMap) -> PlaneFamily:
    """Solve away graph-like components until a plane-curve family remains.

    Requires m = n - 1.  At each step some component must be affine-linear
    with a constant nonzero coefficient in one of its variables; otherwise
    the shape is refused.
    """
    n, m = G.n, G.m
    if n - m != 1:
        raise UnsupportedShapeError(f"fibers of an n={n}, m={m} map are not plane curves")
    ext = n + m
    comps = [c.extend_arity(ext) for c in G.components]
    alive_components = list(range(m))
    alive_vars = list(range(n))
    substitutions = []
    while len(alive_components) > 1:
        found = None
        for k in alive_components:
            for j in alive_vars:
                if comps[k].degree_in(j) != 1:
                    continue
                coeff = comps[k].coefficient_of_power(j, 1)
                if coeff.is_constant() and coeff.constant_value():
                    found = (k, j, coeff.constant_value())
                    break
            if found:
                break
        if not found:
            raise UnsupportedShapeError(
                "no component is affine-linear with constant coefficient in a remaining variable"
            )
        k, j, alpha = found
        rest = comps[k] - MPoly.variable(ext, j) * alpha
        replacement = (MPoly.variable(ext, n + k) - rest) * alpha.inverse()
        for idx in alive_components:
            if idx != k:
                comps[idx] = comps[idx].substitute(j, replacement)
        substitutions.append((j, replacement))
        alive_components.remove(k)
        alive_vars.remove(j)
    last = alive_components[0]
    u, v = alive_vars
    family = comps[last] - MPoly.variable(ext, n + last)
    keep = [u, v] + [n + k for k in range(m)]
    names = (
        G.variables[u],
        G.variables[v],
        *(f"t{k + 1}" for k in range(m)),
    )
    return PlaneFamily(
        source=G,
        poly=family.restrict_to(keep).extend_arity(2 + m),
        kept_vars=(u, v),
        variable_names=names,
        substitutions=tuple(substitutions),
    )


# ---------------------------------------------------------------------------
# Euler characteristic of a plane-curve fiber
# ---------------------------------------------------------------------------


def _exact_univar_roots(p: MPoly):
    """Distinct complex roots of an exact polynomial in one variable."""
    u = UniPoly.from_mpoly(p)
    if u.degree < 1:
        return []
    return elim.roots(u.to_float()).values()


def _distinct_roots_at(coeff_polys, point: complex) -> int:
    """Distinct roots of a specialised univariate, degree-trimmed."""
    coeffs = [c.evaluate((point, 0.0)) for c in coeff_polys]
    u = UniPoly.from_complex(coeffs).trimmed(1e-8)
    if u.degree < 1:
        return 0
    return elim.roots(u).distinct_count


def euler_characteristic_plane_fiber(f: MPoly, t) -> int:
    """Euler characteristic of the affine curve {f = t} in C^2.

    Vertical components (through the content in the second variable) each
    contribute chi(C) = 1; the residual curve is counted as a branched
    cover of the first coordinate line: d points over the complement of
    the exceptional set B (roots of the leading coefficient and of the
    discriminant), plus the actual fiber count over each point of B.
    Intersections of vertical lines with the residual curve are counted
    once.
    """
    if f.arity != 2:
        raise FiberError("plane-fiber computation needs a polynomial in two variables")
    h = f - MPoly.const(2, exactify(t))
    if h.is_zero():
        raise FiberError("fiber is the whole plane")
    if h.is_constant():
        raise FiberError("empty or non-curve fiber")
    u_var, v_var = 0, 1
    if h.degree_in(v_var) == 0:
        return len(_exact_univar_roots(h))  # union of vertical lines
    content = elim.content_in(h, v_var)
    residual = elim.exact_divide(h, content)
    verticals = [] if content.is_constant() else _exact_univar_roots(content)
    chi = len(verticals)
    if residual.degree_in(v_var) == 0:
        return chi
    reduced = elim.squarefree_part(residual, v_var)
    d = reduced.degree_in(v_var)
    coeff_polys = reduced.coefficients_in(v_var)
    lc = coeff_polys[d]
    branch = []
    if not lc.is_constant():
        branch.extend(_exact_univar_roots(lc))
    if d >= 2:
        disc = elim.discriminant(reduced, v_var)
        if disc.is_zero():
            raise FiberError("degenerate discriminant after squarefree reduction")
        if not disc.is_constant():
            branch.extend(_exact_univar_roots(disc))
    exceptional = [r for r, _ in cluster_values(branch)] if branch else []
    chi += d * (1 - len(exceptional))
    for b in exceptional:
        chi += _distinct_roots_at(coeff_polys, b)
    for z0 in verticals:
        chi -= _distinct_roots_at(coeff_polys, z0)
    return chi


# ---------------------------------------------------------------------------
# chi profile over the target
# ---------------------------------------------------------------------------


@dataclass
class ChiConfig:
    seed: int = 0
    generic_samples: int = 3
    extra_candidates: list | None = None  # full t vectors supplied by the user
    max_candidates: int = 40


@dataclass(frozen=True)
class ChiReport:
    generic_chi: int
    generic_samples: tuple  # ((t, chi), ...)
    special_values: tuple  # ((t, chi), ...) candidates with their chi
    atypical: tuple  # t vectors with chi > generic
    probes: tuple  # per-axis probe metadata
    warnings: tuple = ()


def _candidate_values(family: PlaneFamily, axis: int, fixed) -> list:
    """Parameter values where the fiber structure can change on one axis.

    Collected from eliminants in the probe polynomial: pairwise resultants
    of its v-coefficients (vertical components appearing), coefficient
    polynomials free of u (degree collapse), and the discriminant/leading
    coefficient structure of the cover direction.
    """
    probe = family.probe_poly(axis, fixed)
    s_var = 2 + axis
    u_var, v_var = 0, 1
    out = []

    def add_roots(p: MPoly):
        if p.is_zero() or p.is_constant():
            return
        if p.degree_in(s_var) < 1:
            return
        if set(p.variables_present()) == {s_var}:
            out.extend(_exact_univar_roots(p))

    dv = probe.degree_in(v_var)
    if dv == 0:
        coeffs_u = probe.coefficients_in(u_var)
        for c in coeffs_u:
            add_roots(c)
        if probe.degree_in(u_var) >= 2:
            add_roots(elim.discriminant(probe, u_var))
        return out

    coeffs = [c for c in probe.coefficients_in(v_var) if not c.is_zero()]
    with_u = [c for c in coeffs if c.degree_in(u_var) >= 1]
    for c in coeffs:
        if c.degree_in(u_var) == 0:
            add_roots(c)  # a v-coefficient collapses identically in u
    for other in with_u[1:]:
        try:
            add_roots(elim.resultant(with_u[0], other, u_var))
        except ElimError:
            continue
    structure = []
    lc = probe.coefficient_of_power(v_var, dv)
    if not lc.is_constant():
        structure.append(lc)
    if dv >= 2:
        disc = elim.discriminant(probe, v_var)
        if not disc.is_zero() and not disc.is_constant():
            structure.append(disc)
    for q in structure:
        if q.degree_in(u_var) == 0:
            add_roots(q)
            continue
        add_roots(q.coefficient_of_power(u_var, q.degree_in(u_var)))
        if q.degree_in(u_var) >= 2:
            try:
                add_roots(elim.discriminant(q, u_var))
            except ElimError:
                pass
    if len(structure) == 2 and all(q.degree_in(u_var) >= 1 for q in structure):
        try:
            add_roots(elim.resultant(structure[0], structure[1], u_var))
        except ElimError:
            pass
    return out


def chi_profile(G: PolyMap, config: ChiConfig | None = None) -> ChiReport:
    """Generic fiber Euler characteristic and the values where it changes.

    The generic value is computed at seeded random targets and must agree
    exactly across them.  Candidate special targets come from degeneration
    loci of the fiber family (per probe axis for several parameters), not
    from a grid; each candidate fiber is evaluated and reported, and the
    atypical list keeps those with chi above the generic value.
    """
    config = config or ChiConfig()
    family = reduce_to_plane_family(G)
    m = family.m
    rng = np.random.default_rng(config.seed)
    warnings = []

    def random_t():
        vals = rng.standard_normal(2 * m)
        return tuple(complex(vals[2 * i], vals[2 * i + 1]) * 0.9 for i in range(m))

    generic = []
    for _ in range(max(3, config.generic_samples)):
        t = random_t()
        generic.append((t, euler_characteristic_plane_fiber(family.fiber_poly(t), 0.0)))
    chis = {c for _, c in generic}
    if len(chis) != 1:
        raise FiberError("generic chi unstable, increase precision")
    generic_chi = chis.pop()

    probes = []
    candidates = []
    for axis in range(m):
        fixed = {k: complex(rng.standard_normal() * 0.8, rng.standard_normal() * 0.8) for k in range(m) if k != axis}
        try:
            values = _candidate_values(family, axis, fixed)
        except ElimError as exc:
            warnings.append(f"candidate search failed on axis {axis + 1}: {exc}")
            values = []
        values = [r for r, _ in cluster_values(values, 1e-8)]
        probes.append({"axis": axis, "fixed": fixed, "candidates": len(values)})
        for s in values[: config.max_candidates]:
            t = tuple(
                complex(s) if k == axis else complex(fixed[k]) for k in range(m)
            )
            candidates.append(t)
    for t in config.extra_candidates or []:
        candidates.append(tuple(complex(x) for x in t))

    special = []
    atypical = []
    seen = []
    for t in candidates:
        if any(max(abs(a - b) for a, b in zip(t, s)) < 1e-8 for s in seen):
            continue
        seen.append(t)
        t_exact = tuple(exactify(x) for x in t)
        try:
            chi = euler_characteristic_plane_fiber(family.fiber_poly(t_exact), 0.0)
        except (FiberError, ElimError) as exc:
            warnings.append(f"chi at candidate {t} failed: {exc}")
            continue
        t_repr = tuple(v.to_complex() for v in t_exact)
        special.append((t_repr, chi))
        if chi > generic_chi:
            atypical.append(t_repr)
    special.sort(key=lambda tc: tuple((x.real, x.imag) for x in tc[0]))
    atypical.sort(key=lambda tv: tuple((x.real, x.imag) for x in tv))
    return ChiReport(
        generic_chi=generic_chi,
        generic_samples=tuple(generic),
        special_values=tuple(special),
        atypical=tuple(atypical),
        probes=tuple(probes),
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# very good projections
# ---------------------------------------------------------------------------


@dataclass
class ProjectionConfig:
    seed: int = 0
    delta: float = 0.1
    lambda_samples: int = 20
    t_samples: int = 5
    escape_levels: int = 7  # R_k = 10 * 2^k, k < escape_levels
    escape_angles: int = 12


@dataclass(frozen=True)
class Verdict:
    status: object  # True | False | "undecided"
    reason: str = ""
    evidence: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ProjectionReport:
    coefficients: tuple
    t0: tuple
    proper: Verdict
    cardinality_constant: Verdict
    is_very_good: bool


def _linear_parts(family: PlaneFamily, L_red: MPoly):
    """Split a reduced linear form into p*u + q*v + r(T); refuse otherwise."""
    u_var, v_var = 0, 1
    if L_red.degree_in(u_var) > 1 or L_red.degree_in(v_var) > 1:
        return None
    p_poly = L_red.coefficient_of_power(u_var, 1)
    q_poly = L_red.coefficient_of_power(v_var, 1)
    if not p_poly.is_constant() or not q_poly.is_constant():
        return None
    p = p_poly.constant_value()
    q = q_poly.constant_value()
    rest = L_red - MPoly.variable(L_red.arity, u_var) * p - MPoly.variable(L_red.arity, v_var) * q
    if rest.degree_in(u_var) > 0 or rest.degree_in(v_var) > 0:
        return None
    return p, q, rest


def _count_intersection(h_t: MPoly, p: GaussRat, q: GaussRat, r0: GaussRat, lam: GaussRat):
    """Distinct points of {h_t = 0, p*u + q*v + r0 = lam}; None if infinite."""
    if q:
        if h_t.degree_in(1) == 0:
            # curve is a union of vertical lines; the linear form pins v on each
            return len(_exact_univar_roots(h_t))
        line = (
            MPoly.variable(2, 0) * p
            + MPoly.variable(2, 1) * q
            + MPoly.const(2, r0 - lam)
        )
        eliminant = elim.resultant(h_t, line, 1)
        u = UniPoly.from_mpoly(eliminant).to_float().trimmed(1e-10)
        if u.degree < 1:
            return 0
        return elim.roots(u).distinct_count
    if not p:
        return None
    u0 = (lam - r0) / p
    spec = h_t.substitute(0, MPoly.const(2, u0))
    if spec.is_zero():
        return None  # the whole line lies in the fiber
    u = UniPoly.from_mpoly(spec).to_float().trimmed(1e-10)
    if u.degree < 1:
        return 0
    return elim.roots(u).distinct_count


def _algebraic_properness(family: PlaneFamily, p, q, rest: MPoly):
    """Degree-stability test on both coordinate eliminants.

    For each fiber variable the eliminant of (family, L - lambda) must have
    a leading coefficient that does not involve lambda; a lambda-dependent
    leading coefficient means that coordinate escapes along some lambda.
    """
    m = family.m
    arity = 2 + m + 1  # family ring plus lambda
    lam_var = arity - 1
    h = family.poly.extend_arity(arity)
    line = (
        MPoly.variable(arity, 0) * p
        + MPoly.variable(arity, 1) * q
        + rest.extend_arity(arity)
        - MPoly.variable(arity, lam_var)
    )
    results = {}
    overall = True
    undecided = False
    for var, other in ((0, 1), (1, 0)):
        name = "u" if var == 0 else "v"
        if line.degree_in(other) >= 1 and h.degree_in(other) >= 1:
            eliminant = elim.resultant(h, line, other)
        elif line.degree_in(other) == 0:
            # the form does not involve the other variable: it pins this one
            eliminant = line
        else:
            eliminant = h
        d = eliminant.degree_in(var)
        if d <= 0:
            results[name] = {"status": "undecided", "detail": "eliminant independent of the variable"}
            undecided = True
            continue
        lc = eliminant.coefficient_of_power(var, d)
        if lc.degree_in(lam_var) > 0:
            results[name] = {"status": False, "detail": "leading coefficient depends on the projection value"}
            overall = False
        elif lc.is_constant():
            results[name] = {"status": True, "detail": "constant leading coefficient"}
        else:
            results[name] = {
                "status": True,
                "detail": "leading coefficient independent of the projection value (varies with t)",
            }
    if not overall:
        return False, results
    if undecided:
        return "undecided", results
    return True, results


def _escape_profile(family: PlaneFamily, t_exact, p, q, r0, config: ProjectionConfig, rng):
    """Minimum |L| over fiber samples at geometrically growing norms."""
    h_t = family.fiber_poly(t_exact)
    coeff_v = h_t.coefficients_in(1)
    coeff_u = h_t.coefficients_in(0)
    levels = []
    minima = []
    for k in range(config.escape_levels):
        radius = 10.0 * 2.0**k
        samples = []
        angles = rng.uniform(0.0, 2.0 * np.pi, size=config.escape_angles)
        for theta in angles:
            for fixed_var, coeffs in ((0, coeff_v), (1, coeff_u)):
                z0 = radius * np.exp(1j * theta)
                vals = [c.evaluate((z0, 0.0) if fixed_var == 0 else (0.0, z0)) for c in coeffs]
                u = UniPoly.from_complex(vals).trimmed(1e-10)
                if u.degree < 1:
                    continue
                try:
                    sols = elim.roots(u).values()
                except elim.RootFindingError:
                    continue
                for s in sols:
                    pt = (z0, s) if fixed_var == 0 else (s, z0)
                    norm = max(abs(pt[0]), abs(pt[1]))
                    if 0.3 * radius <= norm <= 4.0 * radius:
                        samples.append(pt)
        if not samples:
            minima.append(None)
            levels.append(radius)
            continue
        pc, qc, rc = p.to_complex(), q.to_complex(), r0.to_complex()
        minima.append(min(abs(pc * a + qc * b + rc) for a, b in samples))
        levels.append(radius)
    defined = [(lev, mn) for lev, mn in zip(levels, minima) if mn is not None]
    tail = [mn for lev, mn in defined if lev >= 40.0]
    increasing = len(tail) >= 3 and all(b > a for a, b in zip(tail, tail[1:]))
    return {
        "levels": levels,
        "minima": minima,
        "escapes": bool(increasing),
    }


def check_very_good_projection(G: PolyMap, coefficients, t0, config: ProjectionConfig | None = None) -> ProjectionReport:
    """Certificates for a linear form restricted to fibers near t0.

    Properness is tested two ways: algebraically (degree stability of the
    coordinate eliminants in the projection value) and numerically (the
    minimum of |L| over fiber samples must grow along an escape-radius
    schedule); the verdict combines both and flags any disagreement.
    Cardinality checks that the number of distinct intersection points is
    the same at every sampled (t, lambda).
    """
    config = config or ProjectionConfig()
    coefficients = tuple(complex(c) for c in coefficients)
    if len(coefficients) != G.n:
        raise ValueError("linear form needs one coefficient per source variable")
    if not any(coefficients):
        raise ValueError("linear form must be nonzero")
    t0 = tuple(complex(x) for x in t0) if hasattr(t0, "__len__") else (complex(t0),)
    if len(t0) != G.m:
        raise ValueError("base value must lie in the target space")
    family = reduce_to_plane_family(G)
    L_red = family.transform_linear(coefficients)
    parts = _linear_parts(family, L_red)
    if parts is None:
        proper = Verdict("undecided", "projection is not affine-linear on the reduced fiber coordinates")
        return ProjectionReport(coefficients, t0, proper, Verdict("undecided", "skipped"), False)
    p, q, rest = parts
    if not p and not q:
        proper = Verdict(False, "projection is independent of all fiber variables")
        return ProjectionReport(coefficients, t0, proper, Verdict("undecided", "skipped"), False)

    rng = np.random.default_rng(config.seed)
    alg_status, alg_evidence = _algebraic_properness(family, p, q, rest)

    t_list = [tuple(exactify(x) for x in t0)]
    for _ in range(config.t_samples):
        jitter = rng.standard_normal(2 * G.m)
        t = tuple(
            exactify(complex(t0[i]) + config.delta * complex(jitter[2 * i], jitter[2 * i + 1]))
            for i in range(G.m)
        )
        t_list.append(t)

    esc = _escape_profile(family, t_list[0], p, q, _rest_value(rest, t_list[0]), config, rng)
    numeric_status = bool(esc["escapes"])
    disagreement = alg_status is False and numeric_status
    if alg_status is True:
        status = True if numeric_status else "undecided"
        reason = "eliminant degrees stable and fiber samples escape" if numeric_status else "algebraic test passed but escape profile is inconclusive"
    elif alg_status is False:
        status = False
        reason = "a coordinate eliminant loses degree along the projection"
    else:
        status = "undecided"
        reason = "algebraic properness test inconclusive"
    proper = Verdict(
        status,
        reason,
        {"algebraic": alg_evidence, "escape": esc, "diagnostics_disagreement": disagreement},
    )

    lambdas = [complex(a, b) for a, b in zip(rng.standard_normal(config.lambda_samples), rng.standard_normal(config.lambda_samples))]
    counts = {}
    infinite = False
    for ti, t in enumerate(t_list):
        h_t = family.fiber_poly(t)
        r0 = _rest_value(rest, t)
        for lam in lambdas:
            c = _count_intersection(h_t, p, q, r0, exactify(lam, tol=0.0))
            if c is None:
                infinite = True
                c = -1
            counts.setdefault(c, 0)
            counts[c] += 1
    if infinite:
        cardinality = Verdict(False, "an intersection is infinite", {"counts": counts})
    elif len(counts) == 1:
        value = next(iter(counts))
        cardinality = Verdict(True, f"every sampled intersection has {value} points", {"count": value, "samples": sum(counts.values())})
    else:
        cardinality = Verdict(False, "intersection counts vary across samples", {"counts": {str(k): v for k, v in counts.items()}})

    very_good = proper.status is True and cardinality.status is True
    return ProjectionReport(coefficients, t0, proper, cardinality, very_good)


def _rest_value(rest: MPoly, t_exact) -> GaussRat:
    out = rest
    for k, val in enumerate(t_exact):
        out = out.substitute(2 + k, MPoly.const(rest.arity, exactify(val)))
    return out.constant_value()


# ---------------------------------------------------------------------------
# leading forms: rank and zero-set dimension probes
# ---------------------------------------------------------------------------


@dataclass
class LeadingFormConfig:
    seed: int = 0
    probes: int = 10
    multistarts: int = 60
    tol: float = 1e-9


@dataclass(frozen=True)
class LeadingFormReport:
    rank_estimate: int
    ambient_rank: int
    zero_set_dim_estimate: int
    corank_relation_holds: bool
    on_set_points: tuple
    warnings: tuple = ()


def _complex_rank(matrix: np.ndarray, rel: float = 1e-8) -> int:
    s = np.linalg.svd(matrix, compute_uv=False)
    if len(s) == 0 or s[0] == 0:
        return 0
    return int(np.sum(s >= rel * s[0]))


def leading_form_report(G: PolyMap, config: LeadingFormConfig | None = None) -> LeadingFormReport:
    """Numeric rank of the leading-form Jacobian and zero-set dimension.

    The dimension is the largest number of independent random affine
    constraints that still admit a common zero with the leading forms
    (found by complex Gauss-Newton multistart); the rank estimate is the
    maximum numeric rank over converged on-set probe points.
    """
    config = config or LeadingFormConfig()
    n = G.n
    forms = []
    for comp in G.components:
        if comp.is_zero():
            raise FiberError("a component is zero; leading forms undefined")
        forms.append(comp.leading_form())
    rng = np.random.default_rng(config.seed)
    jac_polys = [f.derivative(j) for f in forms for j in range(n)]
    jac_fn = PolySystem(forms, mode="complex")
    warnings = []

    def solve_with_slices(c: int, rounds: int = 2):
        pts = []
        for _ in range(rounds):
            slices = []
            for _ in range(c):
                normal = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                offset = rng.standard_normal() + 1j * rng.standard_normal()
                terms = {(0,) * n: complex(-offset)}
                for j in range(n):
                    mono = tuple(1 if jj == j else 0 for jj in range(n))
                    terms[mono] = complex(normal[j])
                slices.append(MPoly(n, terms))
            system = PolySystem([f.to_float() for f in forms] + slices, mode="complex")
            starts = rng.standard_normal((config.multistarts, n)) + 1j * rng.standard_normal((config.multistarts, n))
            sols, converged, _ = system.solve_newton(starts * 1.5, max_iter=60, tol=config.tol)
            pts.extend(sols[converged])
        return pts

    dim = 0
    on_set = []
    for c in range(n, 0, -1):
        pts = solve_with_slices(c)
        if pts:
            dim = c
            on_set = pts
            break
    if dim == 0:
        warnings.append("no zero-set points found away from the origin; dimension may be zero")

    while len(on_set) < config.probes and dim > 0:
        extra = solve_with_slices(dim, rounds=1)
        if not extra:
            break
        on_set.extend(extra)

    def jac_at(pt: np.ndarray) -> np.ndarray:
        return jac_fn.J(pt[None, :])[0]

    ranks = [_complex_rank(jac_at(np.asarray(pt))) for pt in on_set[: max(config.probes, 1)]]
    rank_on_set = max(ranks) if ranks else 0
    ambient_pts = rng.standard_normal((config.probes, n)) + 1j * rng.standard_normal((config.probes, n))
    ambient_rank = max(_complex_rank(jac_at(pt)) for pt in ambient_pts)
    return LeadingFormReport(
        rank_estimate=rank_on_set,
        ambient_rank=ambient_rank,
        zero_set_dim_estimate=dim,
        corank_relation_holds=(dim == n - rank_on_set),
        on_set_points=tuple(tuple(complex(v) for v in pt) for pt in on_set[: config.probes]),
        warnings=tuple(warnings),
    )
