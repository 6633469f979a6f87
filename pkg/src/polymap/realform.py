"""Realification of complex polynomial maps.

A complex map ``G: C^n -> C^m`` together with a diagonal quadratic weight
``rho = sum a_j |z_j|^2`` becomes real polynomial data on R^(2n): the real
and imaginary parts of every component (interleaved), rho itself, and the
height function ``phi = 1/(1+rho)`` used by the point-cloud construction.

Real coordinates follow ``z_j = x_(2j-1) + i*x_(2j)`` (1-based pairing).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import GaussRat, MPoly, PolyMap

__all__ = ["RhoSpec", "RealPolyMap", "realify_map", "phi_value", "rho_from_linear_form"]


@dataclass(frozen=True)
class RhoSpec:
    """Non-negative rational weights of the diagonal quadratic gauge."""

    weights: tuple

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if any(w < 0 for w in ws):
            raise ValueError("rho weights must be non-negative")
        if not any(ws):
            raise ValueError("sum of squared rho weights must be nonzero")

    @staticmethod
    def unit(n: int) -> "RhoSpec":
        return RhoSpec((Fraction(1),) * n)

    @property
    def n(self) -> int:
        return len(self.weights)

    def rho_poly(self) -> MPoly:
        """rho as an exact real polynomial in the 2n real coordinates."""
        arity = 2 * self.n
        terms = {}
        for j, a in enumerate(self.weights):
            if a == 0:
                continue
            for k in (2 * j, 2 * j + 1):
                mono = tuple(2 if idx == k else 0 for idx in range(arity))
                terms[mono] = GaussRat.of(a)
        return MPoly(arity, terms)

    def rho_value(self, point: Sequence[float]) -> float:
        if len(point) != 2 * self.n:
            raise ValueError("point length must be 2n")
        total = 0.0
        for j, a in enumerate(self.weights):
            total += float(a) * (float(point[2 * j]) ** 2 + float(point[2 * j + 1]) ** 2)
        return total


@dataclass(frozen=True)
class RealPolyMap:
    """Realified map: 2m real components (re/im interleaved) plus rho."""

    source: PolyMap
    spec: RhoSpec
    components: tuple  # 2m exact real MPoly values in 2n variables
    rho: MPoly

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def m(self) -> int:
        return self.source.m

    @property
    def real_arity(self) -> int:
        return 2 * self.source.n

    @property
    def real_variables(self) -> tuple:
        return tuple(f"x{i + 1}" for i in range(self.real_arity))

    def evaluate(self, point: Sequence[float]) -> tuple:
        """Real components at a real point (imaginary parts are exact zero)."""
        return tuple(c.evaluate(point).real for c in self.components)

    def complex_point(self, point: Sequence[float]) -> tuple:
        return tuple(complex(point[2 * j], point[2 * j + 1]) for j in range(self.n))


def realify_map(G: PolyMap, rho: RhoSpec) -> RealPolyMap:
    """Exact real/imaginary splitting of G plus the rho polynomial."""
    if rho.n != G.n:
        raise ValueError(f"rho has {rho.n} weights but the map has {G.n} variables")
    arity = 2 * G.n
    # z_j -> x_(2j) + i x_(2j+1), expanded exactly in the 2n-variable ring
    images = []
    for j in range(G.n):
        re = MPoly.variable(arity, 2 * j)
        im = MPoly.variable(arity, 2 * j + 1)
        images.append(re + im * GaussRat.I)
    components = []
    for comp in G.components:
        acc = MPoly.zero(arity)
        power_cache = [{0: MPoly.one(arity)} for _ in range(G.n)]
        for mono, coeff in comp.terms.items():
            prod = MPoly.const(arity, coeff)
            for j, e in enumerate(mono):
                cache = power_cache[j]
                if e not in cache:
                    k = max(cache)
                    while k < e:
                        cache[k + 1] = cache[k] * images[j]
                        k += 1
                prod = prod * cache[e]
            acc = acc + prod
        components.append(acc.real_part())
        components.append(acc.imag_part())
    return RealPolyMap(G, rho, tuple(components), rho.rho_poly())


def phi_value(rho: RhoSpec, point: Sequence[float]) -> float:
    """phi = 1/(1+rho) at a real point; lies in (0, 1]."""
    return 1.0 / (1.0 + rho.rho_value(point))


def rho_from_linear_form(coefficients: Sequence[complex], max_denominator: int = 10**6) -> RhoSpec:
    """Weights |a_i| of a linear form, rationalised for exact arithmetic."""
    ws = []
    for a in coefficients:
        mag = abs(complex(a))
        ws.append(Fraction(mag).limit_denominator(max_denominator))
    return RhoSpec(tuple(ws))
