"""Exact fractions over Z[var^±1].

Internal support for two linear-algebra jobs: solving the change of basis
between plain and primed loop monomials, and triangular elimination of the
band-move equation systems.  Not part of the coefficient-ring surface;
everything user-facing stays in the u^a(1+u^2)^b localization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .coeffs import LaurentPoly, LocalizedCoeff


def _content(p: LaurentPoly) -> int:
    g = 0
    for _, c in p.terms:
        g = gcd(g, abs(c))
    return g or 1


def _primitive(p: LaurentPoly) -> LaurentPoly:
    g = _content(p)
    if g == 1:
        return p
    return LaurentPoly(p.var, tuple((e, c // g) for e, c in p.terms))


def _pseudo_rem(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Pseudo-remainder of valuation-0 polynomials (fraction-free Euclid)."""
    lead_b = b.leading_coeff()
    rem = a
    while not rem.is_zero() and rem.degree() >= b.degree():
        shift = rem.degree() - b.degree()
        rem = rem.scale(lead_b) - b.shift(shift).scale(rem.leading_coeff())
        rem = _primitive(rem) if not rem.is_zero() else rem
    return rem


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd in Z[var^±1] up to units (result has valuation 0, positive lead)."""
    if a.is_zero():
        return b.shift(-b.valuation()) if not b.is_zero() else a
    if b.is_zero():
        return a.shift(-a.valuation())
    x = _primitive(a.shift(-a.valuation()))
    y = _primitive(b.shift(-b.valuation()))
    while not y.is_zero():
        x, y = y, _pseudo_rem(x, y)
        if not y.is_zero():
            y = y.shift(-y.valuation())
    # Content of the original pair still divides the true gcd; polynomials in
    # this codebase are small enough that primitive gcd suffices for reduction.
    k = gcd(_content(a), _content(b))
    if x.leading_coeff() < 0:
        x = -x
    return x.scale(k) if k != 1 else x


@dataclass(frozen=True)
class PolyFraction:
    """num/den with den of valuation 0 and positive leading coefficient."""

    num: LaurentPoly
    den: LaurentPoly

    @staticmethod
    def make(num: LaurentPoly, den: LaurentPoly) -> PolyFraction:
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return PolyFraction(num, LaurentPoly.one(num.var))
        # Move the unit part of den into num.
        num = num.shift(-den.valuation())
        den = den.shift(-den.valuation())
        g = poly_gcd(num, den)
        qn = num.exact_div(g)
        qd = den.exact_div(g)
        if qn is not None and qd is not None:
            num, den = qn, qd
        if den.leading_coeff() < 0:
            num, den = -num, -den
        return PolyFraction(num, den)

    @staticmethod
    def from_poly(p: LaurentPoly) -> PolyFraction:
        return PolyFraction.make(p, LaurentPoly.one(p.var))

    @staticmethod
    def from_int(k: int, var: str = "u") -> PolyFraction:
        return PolyFraction.from_poly(LaurentPoly.const(var, k))

    @staticmethod
    def from_localized(c: LocalizedCoeff) -> PolyFraction:
        return PolyFraction.make(c.num, c.denominator())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: PolyFraction) -> PolyFraction:
        return PolyFraction.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> PolyFraction:
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other: PolyFraction) -> PolyFraction:
        return self + (-other)

    def __mul__(self, other: PolyFraction) -> PolyFraction:
        return PolyFraction.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: PolyFraction) -> PolyFraction:
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return PolyFraction.make(self.num * other.den, self.den * other.num)

    def as_poly(self) -> LaurentPoly | None:
        """The underlying Laurent polynomial if the fraction is integral."""
        if self.is_zero():
            return self.num
        mono = self.den.as_monomial()
        if mono is not None and mono[1] in (1, -1):
            return self.num.shift(-mono[0]).scale(mono[1])
        return self.num.exact_div(self.den)

    def as_localized(self) -> LocalizedCoeff | None:
        """Conversion into the u^a(1+u^2)^b localization, if the shape fits."""
        cyclo = LaurentPoly.from_dict("u", {0: 1, 2: 1})
        den = self.den
        b = 0
        while True:
            q = den.exact_div(cyclo)
            if q is None:
                break
            den, b = q, b + 1
        mono = den.as_monomial()
        if mono is None or mono[1] not in (1, -1):
            return None
        k, s = mono
        num = self.num.scale(s)
        if k >= 0:
            return LocalizedCoeff.make(num, k, b)
        return LocalizedCoeff.make(num.shift(-k), 0, b)

    def format(self) -> str:
        if self.den == LaurentPoly.one(self.den.var):
            return self.num.format()
        return f"({self.num.format()})/({self.den.format()})"


def solve_linear(
    matrix: list[list[PolyFraction]], rhs: list[PolyFraction]
) -> list[PolyFraction] | None:
    """Solve M x = b exactly by Gaussian elimination over the fraction field.

    Supports rectangular systems (rows >= cols); returns None when the system
    is inconsistent or the columns do not determine a solution.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [list(r) + [rhs[i]] for i, r in enumerate(matrix)]
    pivot_row = 0
    pivots: list[int] = []
    for col in range(cols):
        sel = next((r for r in range(pivot_row, rows) if not m[r][col].is_zero()), None)
        if sel is None:
            pivots.append(-1)
            continue
        m[pivot_row], m[sel] = m[sel], m[pivot_row]
        inv = m[pivot_row][col]
        for r in range(rows):
            if r == pivot_row or m[r][col].is_zero():
                continue
            factor = m[r][col] / inv
            for c in range(col, cols + 1):
                m[r][c] = m[r][c] - factor * m[pivot_row][c]
        pivots.append(pivot_row)
        pivot_row += 1
    # Inconsistent rows?
    for r in range(pivot_row, rows):
        if not m[r][cols].is_zero():
            return None
    zero = PolyFraction.from_int(0)
    out = [zero] * cols
    for col, pr in enumerate(pivots):
        if pr == -1:
            continue
        out[col] = m[pr][cols] / m[pr][col]
    # Verify (guards against underdetermined columns silently set to zero).
    for r in range(rows):
        acc = zero
        for c in range(cols):
            acc = acc + matrix[r][c] * out[c]
        if not (acc - rhs[r]).is_zero():
            return None
    return out
