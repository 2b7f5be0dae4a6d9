"""Skein vectors over the coil basis {t^n} and the longitude-power conversion.

The skein module of the solid torus carries two natural families:

* longitude powers x^m — m parallel copies of the core curve (the classical
  free basis; here x^0 is pinned to the affine unknot), and
* coils t^n — a single curve winding n times around the axis, the braid-
  friendly basis this package reduces everything to.

As an algebra the module is Z[A^±1][x], with a disjoint trivially framed
unknot contributing the loop value δ = -A^2 - A^-2.  The coil classes obey

    x · τ_n = -A^-2 τ_{n+1} - A^2 τ_{n-1},      τ_1 = x,  τ_0 = δ,

the n = 1 instance being the two-longitude identity
x^2 = -A^-2 t^2 - A^2 t^0.  Everything here is that recursion, run forwards
(coil polynomials) and backwards (expanding an algebra element in coils).
Merging several wound components is literally polynomial multiplication,
which makes the rule associative/commutative and evaluation-order-free.

All polynomials in this module live in the diagrammatic variable A; the
recursion only ever produces even exponents, so the same conversion serves
the algebraic side after the exponent halving u = A^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coeffs import LaurentPoly, loop_value


@dataclass(frozen=True)
class SkeinVector:
    """Finite Z[A^±1]-combination of coil classes t^n, n >= 0, canonical."""

    coeffs: tuple[tuple[int, LaurentPoly], ...]

    @staticmethod
    def from_dict(d: dict[int, LaurentPoly]) -> SkeinVector:
        items = tuple(sorted((n, c) for n, c in d.items() if not c.is_zero()))
        for n, _ in items:
            if n < 0:
                raise ValueError("coil exponents are nonnegative")
        return SkeinVector(items)

    @staticmethod
    def zero() -> SkeinVector:
        return SkeinVector(())

    @staticmethod
    def basis(n: int, coeff: LaurentPoly | None = None) -> SkeinVector:
        return SkeinVector.from_dict({n: coeff if coeff is not None else LaurentPoly.one("A")})

    def as_dict(self) -> dict[int, LaurentPoly]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.coeffs)

    def coeff(self, n: int) -> LaurentPoly:
        for m, c in self.coeffs:
            if m == n:
                return c
        return LaurentPoly.zero("A")

    def __add__(self, other: SkeinVector) -> SkeinVector:
        acc = self.as_dict()
        for n, c in other.coeffs:
            acc[n] = acc.get(n, LaurentPoly.zero("A")) + c
        return SkeinVector.from_dict(acc)

    def __neg__(self) -> SkeinVector:
        return SkeinVector(tuple((n, -c) for n, c in self.coeffs))

    def __sub__(self, other: SkeinVector) -> SkeinVector:
        return self + (-other)

    def scale(self, p: LaurentPoly) -> SkeinVector:
        return SkeinVector.from_dict({n: c * p for n, c in self.coeffs})

    def monomial_ratio(self, other: SkeinVector) -> LaurentPoly | None:
        """The single-term factor m with self = m * other, if one exists."""
        if self.is_zero() and other.is_zero():
            return LaurentPoly.one("A")
        if self.support() != other.support():
            return None
        factor: LaurentPoly | None = None
        for (_, c1), (_, c2) in zip(self.coeffs, other.coeffs):
            q = c1.exact_div(c2)
            if q is None or q.as_monomial() is None:
                return None
            if factor is None:
                factor = q
            elif factor != q:
                return None
        return factor

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        return "  +  ".join(f"({c.format()})*t^{n}" for n, c in reversed(self.coeffs))

    def to_json_dict(self) -> dict[str, str]:
        return {f"t^{n}": c.format() for n, c in self.coeffs}

    @staticmethod
    def from_json_dict(d: dict[str, str]) -> SkeinVector:
        out: dict[int, LaurentPoly] = {}
        for label, cstr in d.items():
            if not label.startswith("t^"):
                raise ValueError(f"bad coil label {label!r}")
            out[int(label[2:])] = LaurentPoly.parse(cstr, "A")
        return SkeinVector.from_dict(out)


# Polynomials in the longitude variable x with LaurentPoly("A") coefficients,
# represented as {x-degree: coefficient}.
LongitudePoly = dict[int, LaurentPoly]


def lp_add(a: LongitudePoly, b: LongitudePoly) -> LongitudePoly:
    out = dict(a)
    for d, c in b.items():
        s = out.get(d, LaurentPoly.zero("A")) + c
        if s.is_zero():
            out.pop(d, None)
        else:
            out[d] = s
    return out


def lp_scale(a: LongitudePoly, c: LaurentPoly) -> LongitudePoly:
    if c.is_zero():
        return {}
    return {d: cc * c for d, cc in a.items()}


def lp_mul(a: LongitudePoly, b: LongitudePoly) -> LongitudePoly:
    out: LongitudePoly = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            d = d1 + d2
            s = out.get(d, LaurentPoly.zero("A")) + c1 * c2
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
    return out


@lru_cache(maxsize=None)
def coil_poly(n: int) -> tuple[tuple[int, LaurentPoly], ...]:
    """The n-fold coil class τ_n as a polynomial in the longitude x.

    τ_0 = δ, τ_1 = x, τ_{n+1} = -A^2 x τ_n - A^4 τ_{n-1}; leading coefficient
    (-A^2)^(n-1) for n >= 1, degrees of one parity throughout.
    """
    if n < 0:
        raise ValueError("coil index must be nonnegative")
    if n == 0:
        return ((0, loop_value()),)
    if n == 1:
        return ((1, LaurentPoly.one("A")),)
    prev = dict(coil_poly(n - 1))
    prev2 = dict(coil_poly(n - 2))
    shifted = {d + 1: c * LaurentPoly.monomial("A", 2, -1) for d, c in prev.items()}
    out = lp_add(shifted, lp_scale(prev2, LaurentPoly.monomial("A", 4, -1)))
    return tuple(sorted(out.items()))


def _coil_poly_dict(n: int) -> LongitudePoly:
    return dict(coil_poly(n))


def longitude_to_skein(p: LongitudePoly) -> SkeinVector:
    """Expand a longitude polynomial in coil classes.

    Peels the top x-degree against τ_deg (unit leading coefficient), strictly
    decreasing the degree each step; the residual constant must be divisible
    by δ and lands on t^0 (the affine unknot is one contractible loop).
    """
    rem = {d: c for d, c in p.items() if not c.is_zero()}
    out: dict[int, LaurentPoly] = {}
    while rem:
        deg = max(rem)
        if deg == 0:
            const = rem.pop(0)
            q = const.exact_div(loop_value())
            if q is None:
                raise ArithmeticError(
                    f"constant part {const.format()} not divisible by the loop value"
                )
            out[0] = out.get(0, LaurentPoly.zero("A")) + q
            continue
        tau = _coil_poly_dict(deg)
        lead = tau[deg]
        q = rem[deg].exact_div(lead)
        if q is None:
            raise ArithmeticError(f"non-unit leading coefficient at degree {deg}")
        out[deg] = out.get(deg, LaurentPoly.zero("A")) + q
        rem = lp_add(rem, lp_scale(tau, -q))
        if max(rem, default=-1) >= deg:
            raise AssertionError("coil expansion failed to decrease the degree")
    return SkeinVector.from_dict(out)


def skein_to_longitude(v: SkeinVector) -> LongitudePoly:
    """Inverse expansion; t^0 means one contractible loop, i.e. δ·(empty)."""
    out: LongitudePoly = {}
    for n, c in v.coeffs:
        if n == 0:
            out = lp_add(out, {0: c * loop_value()})
        else:
            out = lp_add(out, lp_scale(_coil_poly_dict(n), c))
    return out


def merge_components(windings: tuple[int, ...], contractible: int) -> SkeinVector:
    """Class of a disjoint union: wound components times contractible loops.

    A diagram whose components are all contractible maps to δ^(count-1) t^0,
    so that a single trivial loop is exactly the affine unknot generator.
    """
    p: LongitudePoly = {0: LaurentPoly.one("A")}
    for w in windings:
        if w <= 0:
            raise ValueError("windings must be positive")
        p = lp_mul(p, _coil_poly_dict(w))
    for _ in range(contractible):
        p = lp_scale(p, loop_value())
    return longitude_to_skein(p)


def coil_product(exponents: tuple[int, ...]) -> SkeinVector:
    """Coil-basis expansion of a disjoint union of coils t^{k_1} ⊔ t^{k_2} ⊔ …"""
    return merge_components(tuple(k for k in exponents if k > 0), 0)


def parallel_power(m: int) -> SkeinVector:
    """The m-longitude class x^m in coil coordinates; x^0 is the affine unknot.

    Leading term (-A^-2)^(m-1) t^m for m >= 1, all other exponents of the
    same parity.
    """
    if m < 0:
        raise ValueError("parallel power must be nonnegative")
    if m == 0:
        return SkeinVector.basis(0)
    return longitude_to_skein({m: LaurentPoly.one("A")})
