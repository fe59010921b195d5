"""Exact multivariate polynomials in the deformation parameters.

A monomial is an exponent tuple, one slot per parameter, and a polynomial
maps monomials to :class:`~nilcx.scalars.GaussianRational` coefficients.
Everything downstream of the deformation recursion is truncated in total
degree, so the class carries a ``truncated`` helper instead of any notion
of convergence.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError
from .scalars import ZERO, GaussianRational

Monomial = tuple[int, ...]


def coerce_scalar(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, str)):
        return GaussianRational(x)
    raise ValidationError("coefficient is not rational")


def mono_add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_eval(m: Monomial, point: tuple[GaussianRational, ...]) -> GaussianRational:
    out = GaussianRational(1)
    for e, x in zip(m, point):
        if e:
            out = out * x**e
    return out


def mono_str(m: Monomial) -> str:
    parts = []
    for k, e in enumerate(m):
        if e == 1:
            parts.append(f"t{k + 1}")
        elif e > 1:
            parts.append(f"t{k + 1}^{e}")
    return "*".join(parts) if parts else "1"


def coerce_point(point, nvars: int) -> tuple[GaussianRational, ...]:
    """Validate a parameter tuple and lift the entries to exact scalars."""
    pt = tuple(coerce_scalar(x) for x in point)
    if len(pt) != nvars:
        raise ValidationError("wrong number of parameters")
    return pt


class Poly:
    """Polynomial with Gaussian-rational coefficients, zero terms dropped."""

    __slots__ = ("nvars", "coeffs")

    nvars: int
    coeffs: dict

    def __init__(self, nvars: int, coeffs: dict):
        clean = {}
        for mono, c in coeffs.items():
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValidationError("monomial arity does not match parameter count")
            if any(not isinstance(e, int) or e < 0 for e in mono):
                raise ValidationError("exponents must be nonnegative integers")
            c = coerce_scalar(c)
            if c:
                clean[mono] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        """Terms sorted by total degree, then by exponent tuple."""
        return sorted(self.coeffs.items(), key=lambda kv: (mono_degree(kv[0]), kv[0]))

    def min_degree(self) -> int | None:
        """Total degree of the lowest term, or None for the zero polynomial."""
        if not self.coeffs:
            return None
        return min(mono_degree(m) for m in self.coeffs)

    def max_degree(self) -> int | None:
        if not self.coeffs:
            return None
        return max(mono_degree(m) for m in self.coeffs)

    def _same_arity(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValidationError("parameter count mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_arity(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, ZERO) + c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_arity(other)
        out: dict = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                m = mono_add(ma, mb)
                out[m] = out.get(m, ZERO) + ca * cb
        return Poly(self.nvars, out)

    def scaled(self, c) -> "Poly":
        c = coerce_scalar(c)
        return Poly(self.nvars, {m: c * v for m, v in self.coeffs.items()})

    def truncated(self, max_degree: int) -> "Poly":
        return Poly(
            self.nvars,
            {m: c for m, c in self.coeffs.items() if mono_degree(m) <= max_degree},
        )

    def evaluate(self, point) -> GaussianRational:
        pt = coerce_point(point, self.nvars)
        out = ZERO
        for m, c in self.coeffs.items():
            out = out + c * mono_eval(m, pt)
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, tuple(self.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{mono_str(m)}" for m, c in self.items())

    def __repr__(self):
        return f"Poly({self.nvars}, {{{', '.join(f'{m}: {c}' for m, c in self.items())}}})"
