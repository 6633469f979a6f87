"""Vectorised polynomial evaluation and batched damped Newton solvers.

Internal plumbing shared by the singular-locus sampler, the projection
checks and the leading-form probes.  Everything here is deterministic for a
fixed input: batches are processed with plain numpy reductions and no
thread-dependent ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly import MPoly

__all__ = ["PolyFunc", "PolySystem", "newton_polish", "dedup_points"]


class PolyFunc:
    """Batched evaluator for a list of polynomials.

    All terms of all polynomials are stacked into one exponent matrix so a
    whole evaluation is a single broadcasting product plus a segment sum.
    ``mode`` is ``"real"`` (float64 inputs/outputs, coefficients must be
    real) or ``"complex"`` (complex128 throughout).
    """

    def __init__(self, polys, mode: str = "real"):
        self.polys = list(polys)
        self.mode = mode
        arity = polys[0].arity if self.polys else 0
        expo_rows = []
        coeff_rows = []
        starts = []
        for p in self.polys:
            starts.append(len(expo_rows))
            if p.terms:
                for mono, c in p.terms.items():
                    expo_rows.append(mono)
                    coeff_rows.append(c.to_complex() if hasattr(c, "to_complex") else complex(c))
            else:
                expo_rows.append((0,) * arity)
                coeff_rows.append(0j)
        self._expo = np.array(expo_rows, dtype=np.int64) if expo_rows else np.zeros((0, arity), np.int64)
        coeff = np.array(coeff_rows, dtype=complex) if coeff_rows else np.zeros(0, complex)
        if mode == "real":
            if np.any(np.abs(coeff.imag) > 0):
                raise ValueError("real evaluator requires real coefficients")
            coeff = coeff.real
        self._coeff = coeff
        self._starts = np.array(starts, dtype=np.int64)
        self._arity = arity
        self._maxdeg = self._expo.max(axis=0) if len(self._expo) else np.zeros(arity, np.int64)

    def __len__(self) -> int:
        return len(self.polys)

    def eval(self, X: np.ndarray) -> np.ndarray:
        """Evaluate all polynomials; X is (N, nvars), result (N, npolys)."""
        X = np.asarray(X)
        dtype = float if self.mode == "real" else complex
        if not self.polys:
            return np.zeros((X.shape[0], 0), dtype=dtype)
        n = X.shape[0]
        mono = np.ones((n, len(self._expo)), dtype=dtype)
        for v in range(self._arity):
            dmax = int(self._maxdeg[v])
            if dmax == 0:
                continue
            col = X[:, v].astype(dtype, copy=False)
            table = np.empty((dmax + 1, n), dtype=dtype)
            table[0] = 1.0
            for d in range(1, dmax + 1):
                table[d] = table[d - 1] * col
            mono *= table[self._expo[:, v]].T
        weighted = mono * self._coeff[None, :]
        return np.add.reduceat(weighted, self._starts, axis=1)


class PolySystem:
    """A polynomial system together with its exact Jacobian, compiled.

    ``FJ`` evaluates values and all partial derivatives in one fused call.
    """

    def __init__(self, polys, mode: str = "real"):
        self.polys = list(polys)
        self.mode = mode
        self.nvars = polys[0].arity if polys else 0
        self.f = PolyFunc(self.polys, mode)
        jac_rows = []
        for p in self.polys:
            jac_rows.extend(p.derivative(j) for j in range(self.nvars))
        self._jac = PolyFunc(jac_rows, mode)
        self._fused = PolyFunc(self.polys + jac_rows, mode)

    def F(self, X: np.ndarray) -> np.ndarray:
        return self.f.eval(X)

    def J(self, X: np.ndarray) -> np.ndarray:
        flat = self._jac.eval(X)
        return flat.reshape(X.shape[0], len(self.polys), self.nvars)

    def FJ(self, X: np.ndarray):
        flat = self._fused.eval(X)
        k = len(self.polys)
        return flat[:, :k], flat[:, k:].reshape(X.shape[0], k, self.nvars)

    def solve_newton(
        self,
        starts: np.ndarray,
        max_iter: int = 50,
        tol: float = 1e-12,
        scale: np.ndarray | None = None,
        max_halvings: int = 20,
    ):
        """Damped (backtracking) Gauss-Newton on a batch of starts.

        Steps are least-squares solutions, so square and overdetermined
        systems are both handled.  A step is only accepted if it reduces
        the scaled residual norm, which keeps accepted residuals monotone.
        Returns ``(points, converged_mask, residual_norms)``.
        """
        X = np.array(starts, dtype=float if self.mode == "real" else complex)
        if X.ndim == 1:
            X = X[None, :]
        neq = len(self.polys)
        sc = np.ones(neq) if scale is None else np.asarray(scale, dtype=float)
        F = self.f.eval(X) / sc
        norms = np.linalg.norm(F, axis=1)
        active = np.isfinite(norms) & (norms >= tol)
        for _ in range(max_iter):
            if not np.any(active):
                break
            idx = np.where(active)[0]
            Xi = X[idx]
            _, Ji = self.FJ(Xi)
            Ji = Ji / sc[None, :, None]
            Fi = F[idx]
            try:
                step = -np.linalg.solve(Ji, Fi[:, :, None])[:, :, 0] if Ji.shape[1] == Ji.shape[2] else None
            except np.linalg.LinAlgError:
                step = None
            if step is None or not np.all(np.isfinite(step)):
                step = -np.einsum("nij,nj->ni", np.linalg.pinv(Ji), Fi)
            step = np.where(np.isfinite(step), step, 0.0)
            lam = np.ones(len(idx))
            accepted = np.zeros(len(idx), dtype=bool)
            Xn = Xi.copy()
            Fn = Fi.copy()
            base_norm = np.linalg.norm(Fi, axis=1)
            for _ in range(max_halvings):
                rem = np.where(~accepted)[0]
                if len(rem) == 0:
                    break
                trial = Xi[rem] + lam[rem, None] * step[rem]
                Ft = self.f.eval(trial) / sc
                nt = np.linalg.norm(Ft, axis=1)
                better = (nt < base_norm[rem]) & np.isfinite(nt)
                good = rem[better]
                Xn[good] = trial[better]
                Fn[good] = Ft[better]
                accepted[good] = True
                lam[rem[~better]] *= 0.5
            X[idx] = Xn
            F[idx] = Fn
            norms[idx] = np.linalg.norm(Fn, axis=1)
            stalled = ~accepted
            sub = np.zeros(X.shape[0], dtype=bool)
            sub[idx] = stalled
            active &= ~sub
            active &= norms >= tol
        converged = norms < tol
        return X, converged, norms


def newton_polish(system: PolySystem, point, max_iter: int = 30, tol: float = 1e-13):
    """Polish a single approximate solution; returns (point, residual)."""
    X, _, norms = system.solve_newton(np.asarray(point)[None, :], max_iter=max_iter, tol=tol)
    return X[0], float(norms[0])


def dedup_points(points: np.ndarray, tol: float):
    """Deterministic dedup: lexicographic sort, then greedy distance filter."""
    if len(points) == 0:
        return points
    pts = np.asarray(points)
    order = np.lexsort(tuple(np.round(pts[:, j] / max(tol, 1e-300)) for j in range(pts.shape[1] - 1, -1, -1)))
    pts = pts[order]
    kept = []
    for p in pts:
        if all(np.linalg.norm(p - q) > tol for q in kept):
            kept.append(p)
    return np.array(kept)
