"""Univariate and elimination kernels.

Exact machinery: Sylvester resultants via fraction-free (Bareiss)
elimination, discriminants, subresultant gcd / squarefree parts and
coefficient contents over the Gaussian rationals.

Numeric machinery: dense univariate polynomials and a simultaneous-iteration
(Aberth-Ehrlich) complex root finder with single-linkage root clustering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .poly import GaussRat, MPoly, grlex_key

__all__ = [
    "ElimError",
    "RootFindingError",
    "UniPoly",
    "RootSet",
    "roots",
    "resultant",
    "discriminant",
    "squarefree_part",
    "content_in",
    "gcd_mpoly",
    "exact_divide",
    "cluster_values",
]


class ElimError(ValueError):
    pass


class RootFindingError(RuntimeError):
    """Raised when the simultaneous iteration fails; carries partial results."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# ---------------------------------------------------------------------------
# exact division and gcd over Q(i)[x1..xn]
# ---------------------------------------------------------------------------


def exact_divide(f: MPoly, d: MPoly) -> MPoly:
    """Quotient f/d when the division is exact; raises otherwise."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    if d.is_constant():
        return f * d.constant_value().inverse()
    quotient = MPoly.zero(f.arity)
    rem = f
    d_mono = max(d.terms, key=grlex_key)
    d_coeff = d.terms[d_mono]
    while not rem.is_zero():
        r_mono = max(rem.terms, key=grlex_key)
        diff = tuple(a - b for a, b in zip(r_mono, d_mono))
        if any(e < 0 for e in diff):
            raise ElimError("inexact polynomial division")
        c = rem.terms[r_mono] / d_coeff
        t = MPoly(f.arity, {diff: c})
        quotient = quotient + t
        rem = rem - t * d
    return quotient


def _pseudo_remainder(f: MPoly, g: MPoly, var: int) -> MPoly:
    """prem(f, g) in the given variable: lc(g)^(df-dg+1) * f mod g."""
    dg = g.degree_in(var)
    lc_g = g.coefficient_of_power(var, dg)
    r = f
    e = f.degree_in(var) - dg + 1
    while not r.is_zero() and r.degree_in(var) >= dg:
        dr = r.degree_in(var)
        lead = r.coefficient_of_power(var, dr)
        shift = MPoly.variable(f.arity, var) ** (dr - dg)
        r = lc_g * r - lead * shift * g
        e -= 1
    for _ in range(max(e, 0)):
        r = lc_g * r
    return r


def _primitive_part(f: MPoly, var: int) -> MPoly:
    c = content_in(f, var)
    return exact_divide(f, c)


def _gcd_primitive_univar(f: MPoly, g: MPoly, var: int) -> MPoly:
    """Subresultant PRS gcd of polynomials primitive in ``var``."""
    if f.degree_in(var) < g.degree_in(var):
        f, g = g, f
    if g.is_zero():
        return f
    if g.degree_in(var) == 0:
        return MPoly.one(f.arity)
    gg = MPoly.one(f.arity)
    hh = MPoly.one(f.arity)
    while True:
        delta = f.degree_in(var) - g.degree_in(var)
        r = _pseudo_remainder(f, g, var)
        if r.is_zero():
            return _primitive_part(g, var)
        if r.degree_in(var) == 0:
            return MPoly.one(f.arity)
        f, g = g, exact_divide(r, gg * hh**delta)
        gg = f.coefficient_of_power(var, f.degree_in(var))
        if delta == 0:
            # h unchanged
            pass
        elif delta == 1:
            hh = gg
        else:
            hh = exact_divide(gg**delta, hh ** (delta - 1))


def gcd_mpoly(a: MPoly, b: MPoly) -> MPoly:
    """Multivariate gcd over Q(i), normalised to graded-lex leading coeff 1."""
    if a.is_zero():
        return b.monic_normalized() if not b.is_zero() else b
    if b.is_zero():
        return a.monic_normalized()
    if a.is_constant() or b.is_constant():
        return MPoly.one(a.arity)
    vars_ab = set(a.variables_present()) | set(b.variables_present())
    var = max(vars_ab)
    if a.degree_in(var) == 0 or b.degree_in(var) == 0:
        # one operand is free of the main variable: gcd divides its content
        if a.degree_in(var) == 0:
            return gcd_mpoly(a, content_in(b, var))
        return gcd_mpoly(content_in(a, var), b)
    ca, cb = content_in(a, var), content_in(b, var)
    pa, pb = exact_divide(a, ca), exact_divide(b, cb)
    g = gcd_mpoly(ca, cb) * _gcd_primitive_univar(pa, pb, var)
    return g.monic_normalized()


def content_in(f: MPoly, var: int) -> MPoly:
    """gcd of the coefficients of f viewed as univariate in ``var``."""
    if f.is_zero():
        raise ElimError("content of the zero polynomial")
    coeffs = [c for c in f.coefficients_in(var) if not c.is_zero()]
    acc = coeffs[0]
    for c in coeffs[1:]:
        if acc.is_constant():
            break
        acc = gcd_mpoly(acc, c)
    return acc.monic_normalized()


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------


def _bareiss_det(matrix) -> MPoly:
    """Exact determinant by fraction-free elimination with row pivoting."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        raise ElimError("empty matrix")
    arity = m[0][0].arity
    sign = 1
    prev = MPoly.one(arity)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot_row is None:
                return MPoly.zero(arity)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = MPoly.zero(arity)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(f: MPoly, g: MPoly, var: int):
    df, dg = f.degree_in(var), g.degree_in(var)
    fc = f.coefficients_in(var)  # ascending
    gc = g.coefficients_in(var)
    size = df + dg
    zero = MPoly.zero(f.arity)
    rows = []
    for shift in range(dg):
        row = [zero] * size
        for k, c in enumerate(reversed(fc)):  # descending coefficients
            row[shift + k] = c
        rows.append(row)
    for shift in range(df):
        row = [zero] * size
        for k, c in enumerate(reversed(gc)):
            row[shift + k] = c
        rows.append(row)
    return rows


def resultant(f: MPoly, g: MPoly, var: int) -> MPoly:
    """Sylvester resultant eliminating ``var``, computed fraction-free.

    Vanishes at a specialisation of the remaining variables exactly when
    the two specialised polynomials share a root (or both leading
    coefficients vanish there).
    """
    if f.arity != g.arity:
        raise ElimError("arity mismatch")
    if f.degree_in(var) < 1 or g.degree_in(var) < 1:
        raise ElimError("resultant requires positive degree in the eliminated variable")
    return _bareiss_det(sylvester_matrix(f, g, var))


def discriminant(f: MPoly, var: int) -> MPoly:
    """Res(f, df/dvar) / lc with the standard sign, exact."""
    d = f.degree_in(var)
    if d < 1:
        raise ElimError("discriminant requires positive degree")
    if d == 1:
        return MPoly.one(f.arity)
    lc = f.coefficient_of_power(var, d)
    res = resultant(f, f.derivative(var), var)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q = exact_divide(res, lc)
    return q if sign == 1 else -q


def squarefree_part(f: MPoly, var: int) -> MPoly:
    """f / gcd(f, df/dvar): same roots in ``var``, all simple."""
    if f.degree_in(var) < 1:
        raise ElimError("squarefree part requires positive degree")
    g = gcd_mpoly(f, f.derivative(var))
    return exact_divide(f, g).monic_normalized()


# ---------------------------------------------------------------------------
# dense univariate polynomials and the Aberth-Ehrlich root finder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial, constant coefficient first.

    ``domain`` is ``"exact"`` (GaussRat coefficients) or ``"float"``
    (complex128).  The leading coefficient is nonzero after construction.
    """

    coeffs: tuple
    domain: str

    @staticmethod
    def from_complex(coeffs) -> "UniPoly":
        cs = [complex(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs), "float")

    @staticmethod
    def from_exact(coeffs) -> "UniPoly":
        cs = [GaussRat.from_value(c) for c in coeffs]
        while len(cs) > 1 and not cs[-1]:
            cs.pop()
        return UniPoly(tuple(cs), "exact")

    @staticmethod
    def from_mpoly(p: MPoly) -> "UniPoly":
        """Convert a polynomial that involves at most one variable."""
        present = p.variables_present()
        if len(present) > 1:
            raise ElimError("polynomial involves more than one variable")
        if not present:
            return UniPoly.from_exact([p.constant_value()])
        var = present[0]
        coeffs = [c.constant_value() for c in p.coefficients_in(var)]
        return UniPoly.from_exact(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_float(self) -> "UniPoly":
        if self.domain == "float":
            return self
        return UniPoly.from_complex([c.to_complex() for c in self.coeffs])

    def evaluate(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            cv = c.to_complex() if isinstance(c, GaussRat) else c
            acc = acc * x + cv
        return acc

    def derivative(self) -> "UniPoly":
        if self.degree == 0:
            zero = GaussRat.ZERO if self.domain == "exact" else 0j
            return UniPoly((zero,), self.domain)
        cs = [c * k for k, c in enumerate(self.coeffs)][1:]
        return UniPoly(tuple(cs), self.domain)

    def trimmed(self, rel_tol: float = 1e-10) -> "UniPoly":
        """Drop float leading coefficients small relative to the largest."""
        p = self.to_float()
        mags = [abs(c) for c in p.coeffs]
        top = max(mags) if mags else 0.0
        if top == 0.0:
            return UniPoly((0j,), "float")
        cs = list(p.coeffs)
        while len(cs) > 1 and abs(cs[-1]) < rel_tol * top:
            cs.pop()
        return UniPoly(tuple(cs), "float")


@dataclass(frozen=True)
class RootSet:
    """Clustered roots with multiplicity estimates."""

    roots: tuple  # tuple of (complex value, multiplicity)
    distinct_count: int

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)

    def values(self) -> list:
        return [r for r, _ in self.roots]

    def all_roots(self) -> list:
        out = []
        for r, m in self.roots:
            out.extend([r] * m)
        return out


def cluster_values(values, rel_tol: float = 1e-6):
    """Single-linkage clustering of complex values; returns (rep, size) pairs.

    The linkage threshold is relative: ``rel_tol * max(1, mean magnitude)``.
    Representatives are cluster means, sorted by (re, im) for determinism.
    """
    vals = [complex(v) for v in values]
    n = len(vals)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            thr = rel_tol * max(1.0, 0.5 * (abs(vals[a]) + abs(vals[b])))
            if abs(vals[a] - vals[b]) <= thr:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    groups: dict = {}
    for idx in range(n):
        groups.setdefault(find(idx), []).append(vals[idx])
    reps = [(sum(g) / len(g), len(g)) for g in groups.values()]
    reps.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return reps


def _aberth(coeffs: np.ndarray, tol: float, max_iter: int):
    """Simultaneous iteration on a monic polynomial, constant term first."""
    d = len(coeffs) - 1
    monic = coeffs / coeffs[-1]
    # Cauchy bound, initial guesses on a perturbed circle
    radius = 1.0 + float(np.max(np.abs(monic[:-1]))) if d > 0 else 1.0
    k = np.arange(d)
    x = radius * np.exp(1j * (2.0 * np.pi * k / d + 0.4 + 0.01 * (k % 3)))
    dcoeffs = monic[1:] * np.arange(1, d + 1)
    powers = np.arange(d + 1)
    converged = False
    for _ in range(max_iter):
        # Horner evaluation of p and p' on the current root vector
        p = np.zeros_like(x)
        for c in monic[::-1]:
            p = p * x + c
        dp = np.zeros_like(x)
        for c in dcoeffs[::-1]:
            dp = dp * x + c
        dp = np.where(np.abs(dp) < 1e-300, dp + 1e-300, dp)
        w = p / dp
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-300, denom + 1e-300, denom)
        delta = w / denom
        delta = np.where(np.isfinite(delta), delta, 0.1 * radius)
        x = x - delta
        scale = np.maximum(1.0, np.abs(x))
        # residual floor: attainable accuracy for multiple roots is ~sqrt(eps)
        bound = np.abs(monic) @ np.power.outer(np.maximum(np.abs(x), 1e-300), powers).T
        small_step = np.abs(delta) < tol * scale
        small_resid = np.abs(p) <= 256.0 * np.finfo(float).eps * np.maximum(bound, 1.0)
        if np.all(small_step | small_resid):
            converged = True
            break
    return x, converged


def roots(p: UniPoly, tol: float = 1e-12, max_iter: int = 200, cluster_rel: float = 1e-6) -> RootSet:
    """All complex roots of ``p`` with multiplicity estimates.

    Roots are clustered (single linkage at relative separation
    ``cluster_rel``); a cluster's size is the multiplicity estimate and its
    mean is the representative.  Raises :class:`RootFindingError` carrying
    partial results if the iteration does not settle.
    """
    pf = p.to_float()
    if pf.degree < 1:
        raise ElimError("root finding requires degree >= 1")
    cs = list(pf.coeffs)
    origin_mult = 0
    while len(cs) > 1 and cs[0] == 0:
        cs.pop(0)
        origin_mult += 1
    found = []
    if len(cs) > 1:
        x, converged = _aberth(np.asarray(cs, dtype=complex), tol, max_iter)
        found = list(x)
        if not converged:
            reps = cluster_values(found + [0j] * origin_mult, cluster_rel)
            partial = RootSet(tuple(reps), len(reps))
            raise RootFindingError("root iteration did not converge", partial=partial)
    reps = cluster_values(found + [0j] * origin_mult, cluster_rel)
    return RootSet(tuple((r, m) for r, m in reps), len(reps))
