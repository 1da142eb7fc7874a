"""One-variable Alexander polynomial of braid closures, via the reduced
Burau representation.

This is a validation oracle for the skein engine, built on entirely
different mathematics: the determinant det(rho(b) - I) divided by
(1 + t + .. + t^{n-1}) gives the Alexander polynomial of the closure up to
a unit +-t^k.  Substituting z = t^(1/2) - t^(-1/2) into a fully computed
Conway polynomial must agree, again up to units.

Everything is carried out in the half-power variable s with t = s^2, so all
exponents stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import sympy as sp

from .words import BraidWord

_s = sp.Symbol("s")


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in one variable.

    ``coeffs[i]`` is the coefficient of the monomial with exponent
    ``min_exp + i``; a nonzero polynomial keeps nonzero first and last
    coefficients, and the zero polynomial is the empty tuple.
    """

    min_exp: int
    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(0, ())

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "LaurentPoly":
        d = {e: c for e, c in d.items() if c}
        if not d:
            return cls.zero()
        lo, hi = min(d), max(d)
        return cls(lo, tuple(d.get(e, 0) for e in range(lo, hi + 1)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def unit_normalized(self) -> "LaurentPoly":
        """Canonical representative up to multiplication by +-s^k."""
        if self.is_zero():
            return LaurentPoly.zero()
        flip = -1 if self.coeffs[0] < 0 else 1
        return LaurentPoly(0, tuple(flip * c for c in self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*s^{self.min_exp + i}")
        return " + ".join(terms)


def equal_up_to_units(a: LaurentPoly, b: LaurentPoly) -> bool:
    return a.unit_normalized() == b.unit_normalized()


# ---------------------------------------------------------------------------
# reduced Burau matrices over t = s^2


@lru_cache(maxsize=None)
def _generator_matrix(n: int, letter: int) -> sp.ImmutableMatrix:
    """Reduced Burau image of one signed generator, an (n-1)x(n-1) matrix."""
    t = _s**2
    i = abs(letter)
    size = n - 1
    m = sp.eye(size)
    j = i - 1  # 0-based row/column of the -t entry
    m[j, j] = -t
    if j > 0:
        m[j - 1, j] = t
    if j < size - 1:
        m[j + 1, j] = 1
    m = sp.ImmutableMatrix(m)
    if letter < 0:
        m = sp.ImmutableMatrix(sp.cancel(m.inv()))
    return m


def reduced_burau(w: BraidWord) -> sp.ImmutableMatrix:
    """Product of the generator matrices, in word order."""
    n = w.strands
    acc = sp.eye(n - 1)
    for k in w.letters:
        acc = acc * _generator_matrix(n, k)
        acc = acc.applyfunc(sp.cancel)
    return sp.ImmutableMatrix(acc)


def _expr_to_laurent(expr) -> LaurentPoly:
    expr = sp.cancel(sp.together(expr))
    num, den = sp.fraction(expr)
    pden = sp.Poly(den, _s)
    if len(pden.monoms()) != 1:
        raise OracleError(f"denominator is not a monomial: {den}")
    shift = pden.monoms()[0][0]
    unit = pden.coeffs()[0]
    if unit not in (1, -1):
        raise OracleError(f"denominator unit {unit} is not +-1")
    pnum = sp.Poly(num * unit, _s)
    d = {}
    for (e,), c in zip(pnum.monoms(), pnum.coeffs()):
        d[int(e) - int(shift)] = int(c)
    return LaurentPoly.from_dict(d)


def alexander_burau(w: BraidWord) -> LaurentPoly:
    """Alexander polynomial of the closure, in s with t = s^2, up to +-s^k."""
    n = w.strands
    if n == 1:
        return LaurentPoly(0, (1,))
    m = reduced_burau(w)
    det = (m - sp.eye(n - 1)).det()
    t = _s**2
    expr = sp.cancel(det * (1 - t) / (1 - t**n))
    return _expr_to_laurent(expr)


# ---------------------------------------------------------------------------
# Conway-side substitution


def conway_to_laurent(coeffs) -> LaurentPoly:
    """Substitute z = s - 1/s into a coefficient list a_0, a_1, ..."""
    z = {1: 1, -1: -1}
    power = {0: 1}
    acc: dict[int, int] = {}

    def mul(a, b):
        out: dict[int, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    for a in coeffs:
        if a:
            for e, c in power.items():
                acc[e] = acc.get(e, 0) + a * c
        power = mul(power, z)
    return LaurentPoly.from_dict(acc)


def conway_matches_alexander(coeffs, w: BraidWord) -> bool:
    """Does the full Conway polynomial agree with the Burau-side Alexander
    polynomial of the closure, up to units?"""
    return equal_up_to_units(conway_to_laurent(coeffs), alexander_burau(w))
