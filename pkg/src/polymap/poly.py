"""Exact multivariate polynomial arithmetic over Gaussian rationals.

Coefficients are :class:`GaussRat` values (complex numbers with exact
rational real and imaginary parts), so every symbolic operation in the
toolkit (derivatives, determinants, resultants, substitutions) is free of
rounding.  A polynomial may alternatively carry ``complex`` coefficients;
the arithmetic is the same, only zero tests become exact float comparisons.

Monomials are plain exponent tuples, one entry per ring variable.  The
canonical term order used for printing and normalisation is graded
lexicographic with respect to the user's variable order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "GaussRat",
    "Monomial",
    "MPoly",
    "PolyMap",
    "grlex_key",
    "monomial_degree",
]

Monomial = tuple  # exponent tuple; length equals the ring arity

Rationalish = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact: floats are dyadic rationals
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class GaussRat:
    """Gaussian rational ``re + im*i`` with exact Fraction parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "GaussRat":
        return GaussRat(_as_fraction(re), _as_fraction(im))

    @staticmethod
    def from_value(x) -> "GaussRat":
        """Coerce ints, Fractions, floats and complex values exactly."""
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return GaussRat(Fraction(x.real), Fraction(x.imag))
        return GaussRat(_as_fraction(x), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: "GaussRat") -> "GaussRat":
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re / other, self.im / other)
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = other.re * other.re + other.im * other.im
        return GaussRat(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def inverse(self) -> "GaussRat":
        return GaussRat.ONE / self

    def is_real(self) -> bool:
        return not self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:  # debugging aid; canonical text lives in parse
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GaussRat.ZERO = GaussRat(Fraction(0), Fraction(0))
GaussRat.ONE = GaussRat(Fraction(1), Fraction(0))
GaussRat.I = GaussRat(Fraction(0), Fraction(1))


def monomial_degree(mono: Monomial) -> int:
    return sum(mono)


def grlex_key(mono: Monomial):
    """Sort key for graded lexicographic order (ascending)."""
    return (sum(mono), mono)


def _coeff_is_zero(c) -> bool:
    if isinstance(c, GaussRat):
        return not c
    return c == 0


class MPoly:
    """Sparse multivariate polynomial with exact (or float-complex) coefficients.

    Values are immutable: every operation returns a fresh polynomial, so
    instances can be shared freely between threads.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Monomial, object] | None = None):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        object.__setattr__(self, "arity", arity)
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != arity:
                    raise ValueError(f"monomial {mono} has wrong length for arity {arity}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                if not _coeff_is_zero(coeff):
                    clean[tuple(mono)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "MPoly":
        return MPoly(arity, {})

    @staticmethod
    def const(arity: int, value) -> "MPoly":
        c = GaussRat.from_value(value) if not isinstance(value, complex) else value
        return MPoly(arity, {(0,) * arity: c})

    @staticmethod
    def one(arity: int) -> "MPoly":
        return MPoly.const(arity, 1)

    @staticmethod
    def variable(arity: int, index: int) -> "MPoly":
        if not 0 <= index < arity:
            raise IndexError(f"variable index {index} out of range for arity {arity}")
        mono = tuple(1 if j == index else 0 for j in range(arity))
        return MPoly(arity, {mono: GaussRat.ONE})

    # -- predicates and views -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        """Coefficient of the constant monomial (zero if absent)."""
        c = self.terms.get((0,) * self.arity)
        if c is None:
            return GaussRat.ZERO if self._exact() else 0j
        return c

    def _exact(self) -> bool:
        for c in self.terms.values():
            return isinstance(c, GaussRat)
        return True

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: int) -> int:
        self._check_var(var)
        if not self.terms:
            return -1
        return max(m[var] for m in self.terms)

    def variables_present(self) -> list:
        out = []
        for j in range(self.arity):
            if any(m[j] for m in self.terms):
                out.append(j)
        return out

    def leading_coefficient(self):
        """Coefficient of the graded-lex leading monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        mono = max(self.terms, key=grlex_key)
        return self.terms[mono]

    def _check_var(self, var: int) -> None:
        if not 0 <= var < self.arity:
            raise IndexError(f"variable index {var} out of range for arity {self.arity}")

    # -- ring arithmetic -------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        return MPoly.const(self.arity, self._coerce_scalar(other))

    def _coerce_scalar(self, value):
        if self._exact():
            return value if isinstance(value, GaussRat) else GaussRat.from_value(value)
        if isinstance(value, GaussRat):
            return value.to_complex()
        return complex(value)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            if mono in terms:
                s = terms[mono] + c
                if _coeff_is_zero(s):
                    del terms[mono]
                else:
                    terms[mono] = s
            else:
                terms[mono] = c
        return MPoly(self.arity, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.arity, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (GaussRat, int, Fraction, float, complex)):
            other = self._coerce_scalar(other)
            if _coeff_is_zero(other):
                return MPoly.zero(self.arity)
            return MPoly(self.arity, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                if mono in acc:
                    s = acc[mono] + prod
                    if _coeff_is_zero(s):
                        del acc[mono]
                    else:
                        acc[mono] = s
                elif not _coeff_is_zero(prod):
                    acc[mono] = prod
        return MPoly(self.arity, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.one(self.arity)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        from .parse import format_poly

        names = tuple(f"x{i}" for i in range(self.arity))
        return f"MPoly({format_poly(self, names)})"

    # -- calculus --------------------------------------------------------

    def derivative(self, var: int) -> "MPoly":
        """Formal partial derivative with exact coefficients."""
        self._check_var(var)
        terms = {}
        for mono, c in self.terms.items():
            e = mono[var]
            if e == 0:
                continue
            new = list(mono)
            new[var] = e - 1
            terms[tuple(new)] = c * e
        return MPoly(self.arity, terms)

    def leading_form(self) -> "MPoly":
        """Homogeneous part of highest total degree."""
        if not self.terms:
            raise ValueError("leading form of the zero polynomial is undefined")
        d = self.degree()
        return MPoly(self.arity, {m: c for m, c in self.terms.items() if sum(m) == d})

    def substitute(self, var: int, replacement: "MPoly") -> "MPoly":
        """Replace one variable by a polynomial of the same arity."""
        self._check_var(var)
        if replacement.arity != self.arity:
            raise ValueError("replacement arity mismatch")
        powers = {0: MPoly.one(self.arity)}
        result = MPoly.zero(self.arity)
        for mono, c in self.terms.items():
            e = mono[var]
            if e not in powers:
                k = max(powers)
                while k < e:
                    powers[k + 1] = powers[k] * replacement
                    k += 1
            rest = list(mono)
            rest[var] = 0
            result = result + MPoly(self.arity, {tuple(rest): c}) * powers[e]
        return result

    # -- evaluation ------------------------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Horner-style evaluation at a float-complex point.

        Exact coefficients are converted to floats at call time.
        """
        if len(point) != self.arity:
            raise ValueError(f"point length {len(point)} != arity {self.arity}")
        pt = [complex(x) for x in point]
        return self._eval_rec(self.terms, self.arity - 1, pt)

    def _eval_rec(self, terms, var, pt) -> complex:
        if not terms:
            return 0j
        if var < 0:
            (coeff,) = terms.values()
            return coeff.to_complex() if isinstance(coeff, GaussRat) else complex(coeff)
        layers: dict = {}
        for mono, c in terms.items():
            reduced = mono[:var] + (0,) + mono[var + 1 :]
            layers.setdefault(mono[var], {})[reduced] = c
        acc = 0j
        for e in range(max(layers), -1, -1):
            acc *= pt[var]
            if e in layers:
                acc += self._eval_rec(layers[e], var - 1, pt)
        return acc

    def evaluate_exact(self, point: Sequence) -> GaussRat:
        """Exact evaluation at a point with Gaussian-rational coordinates."""
        if len(point) != self.arity:
            raise ValueError(f"point length {len(point)} != arity {self.arity}")
        pt = [GaussRat.from_value(x) for x in point]
        total = GaussRat.ZERO
        for mono, c in self.terms.items():
            prod = c if isinstance(c, GaussRat) else GaussRat.from_value(c)
            for x, e in zip(pt, mono):
                for _ in range(e):
                    prod = prod * x
            total = total + prod
        return total

    # -- univariate views -------------------------------------------------

    def coefficients_in(self, var: int) -> list:
        """Coefficients of ``var^k`` (ascending k) as polynomials in the rest.

        Returned polynomials keep the full arity with the chosen variable
        absent.  The zero polynomial yields an empty list.
        """
        self._check_var(var)
        if not self.terms:
            return []
        d = self.degree_in(var)
        buckets: list = [dict() for _ in range(d + 1)]
        for mono, c in self.terms.items():
            reduced = mono[:var] + (0,) + mono[var + 1 :]
            buckets[mono[var]][reduced] = c
        return [MPoly(self.arity, b) for b in buckets]

    def coefficient_of_power(self, var: int, k: int) -> "MPoly":
        self._check_var(var)
        terms = {}
        for mono, c in self.terms.items():
            if mono[var] == k:
                reduced = mono[:var] + (0,) + mono[var + 1 :]
                terms[reduced] = c
        return MPoly(self.arity, terms)

    # -- coefficient-domain conversions ------------------------------------

    def to_float(self) -> "MPoly":
        """Same polynomial with complex-float coefficients."""
        return MPoly(
            self.arity,
            {m: (c.to_complex() if isinstance(c, GaussRat) else complex(c)) for m, c in self.terms.items()},
        )

    def map_coefficients(self, fn) -> "MPoly":
        return MPoly(self.arity, {m: fn(c) for m, c in self.terms.items()})

    def real_part(self) -> "MPoly":
        return MPoly(self.arity, {m: GaussRat(c.re, Fraction(0)) for m, c in self.terms.items()})

    def imag_part(self) -> "MPoly":
        return MPoly(self.arity, {m: GaussRat(c.im, Fraction(0)) for m, c in self.terms.items()})

    def extend_arity(self, new_arity: int) -> "MPoly":
        """Embed into a larger ring; new variables are appended."""
        if new_arity < self.arity:
            raise ValueError("cannot shrink arity")
        pad = (0,) * (new_arity - self.arity)
        return MPoly(new_arity, {m + pad: c for m, c in self.terms.items()})

    def restrict_to(self, keep: Sequence[int]) -> "MPoly":
        """Project onto a sub-ring; all dropped variables must be absent."""
        keep = list(keep)
        dropped = [j for j in range(self.arity) if j not in keep]
        for mono in self.terms:
            if any(mono[j] for j in dropped):
                raise ValueError("polynomial involves a dropped variable")
        return MPoly(len(keep), {tuple(m[j] for j in keep): c for m, c in self.terms.items()})

    def monic_normalized(self) -> "MPoly":
        """Scale so the graded-lex leading coefficient is one."""
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        inv = lc.inverse() if isinstance(lc, GaussRat) else 1.0 / lc
        return self * inv


@dataclass(frozen=True)
class PolyMap:
    """Polynomial mapping from C^n to C^m given by component polynomials."""

    variables: tuple
    components: tuple

    def __post_init__(self):
        n, m = self.n, self.m
        if not 1 <= m <= n:
            raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
        for comp in self.components:
            if comp.arity != n:
                raise ValueError("component arity does not match variable count")
        if len(set(self.variables)) != n:
            raise ValueError("duplicate variable names")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.components)

    def evaluate(self, point: Sequence[complex]) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    def complex_jacobian(self) -> list:
        """m x n matrix of exact partial derivatives."""
        return [[c.derivative(j) for j in range(self.n)] for c in self.components]

    def __repr__(self) -> str:
        from .parse import format_poly_map

        return f"PolyMap({format_poly_map(self)!r} over {self.variables})"
