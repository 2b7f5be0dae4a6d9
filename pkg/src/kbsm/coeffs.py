"""Exact coefficient arithmetic for skein computations.

Two coefficient domains:

* ``LaurentPoly`` — integer-coefficient Laurent polynomials in one formal
  variable, tagged ``"A"`` (the diagrammatic variable) or ``"u"`` (the
  algebraic one).  Values are canonical: no zero coefficients are stored,
  so equality is structural.

* ``LocalizedCoeff`` — fractions num / (u^a (1+u^2)^b) over Z[u^±1].  Every
  denominator the trace machinery produces has this shape (the stabilization
  value -1/(u(1+u^2)), the invariant prefactor (1+u^2)/u, ...), which keeps
  arithmetic closed without a general fraction field.

The bridge between the two variables is the substitution u -> A^2 (or the
mirror convention u -> -A^-2), exposed as configurable ``SubstitutionRule``s.
The default exponent map is the unique one matching the quadratic relation
sigma^2 = (u - u^-1) sigma + 1 against the bracket smoothing sigma = A + A^-1 e
with loop value -A^2 - A^-2 after rescaling by A.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class MixedVariableError(ValueError):
    """Arithmetic attempted between polynomials in different variables.

    Such an expression must first pass through a substitution rule.
    """


@dataclass(frozen=True)
class LaurentPoly:
    """Canonical Laurent polynomial: sorted (exponent, coefficient) pairs."""

    var: str
    terms: tuple[tuple[int, int], ...]

    # -- construction -------------------------------------------------

    @staticmethod
    def from_dict(var: str, coeffs: dict[int, int]) -> LaurentPoly:
        return LaurentPoly(var, tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    @staticmethod
    def zero(var: str) -> LaurentPoly:
        return LaurentPoly(var, ())

    @staticmethod
    def one(var: str) -> LaurentPoly:
        return LaurentPoly(var, ((0, 1),))

    @staticmethod
    def monomial(var: str, exp: int, coeff: int = 1) -> LaurentPoly:
        return LaurentPoly.from_dict(var, {exp: coeff})

    @staticmethod
    def const(var: str, value: int) -> LaurentPoly:
        return LaurentPoly.from_dict(var, {0: value})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp: int) -> int:
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[-1][0]

    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return self.terms[0][0]

    def leading_coeff(self) -> int:
        return self.terms[-1][1]

    def as_monomial(self) -> tuple[int, int] | None:
        """Return (exp, coeff) if this is a single term, else None."""
        return self.terms[0] if len(self.terms) == 1 else None

    def exponents_even(self) -> bool:
        return all(e % 2 == 0 for e, _ in self.terms)

    def _check(self, other: LaurentPoly) -> None:
        if self.var != other.var:
            raise MixedVariableError(
                f"cannot combine {self.var!r} with {other.var!r}; "
                "apply a substitution rule first"
            )

    # -- ring operations ----------------------------------------------

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(self.var, acc)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.var, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(self.var, acc)

    def scale(self, k: int) -> LaurentPoly:
        return LaurentPoly.from_dict(self.var, {e: c * k for e, c in self.terms})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by var^k."""
        return LaurentPoly(self.var, tuple((e + k, c) for e, c in self.terms))

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            mono = self.as_monomial()
            if mono is None or mono[1] not in (1, -1):
                raise ValueError("negative powers only for unit monomials")
            e, c = mono
            return LaurentPoly.monomial(self.var, e * n, c ** (n & 1) if c == -1 else 1)
        out = LaurentPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, other: LaurentPoly) -> LaurentPoly | None:
        """Exact quotient self/other in Z[var^±1], or None if not divisible."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        # Factor out the unit var^valuation from both sides, then divide
        # honest polynomials top-down; the quotient shift restores units.
        a = self.shift(-self.valuation())
        b = other.shift(-other.valuation())
        rem = a.as_dict()
        lead_e, lead_c = b.terms[-1]
        out: dict[int, int] = {}
        while rem:
            e = max(rem)
            if e < lead_e:
                return None
            q, r = divmod(rem[e], lead_c)
            if r != 0:
                return None
            shift = e - lead_e
            out[shift] = q
            for oe, oc in b.terms:
                k = oe + shift
                v = rem.get(k, 0) - oc * q
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        quot = LaurentPoly.from_dict(self.var, out)
        return quot.shift(self.valuation() - other.valuation())

    # -- formatting ----------------------------------------------------

    def format(self) -> str:
        """Canonical string, ascending exponents: "-A^-2+3A^0"."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            body = f"{self.var}^{e}" if mag == 1 else f"{mag}{self.var}^{e}"
            parts.append(f"{sign}{body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()

    _TERM_RE = re.compile(r"([+-]?)(\d*)([Au])\^(-?\d+)")

    @staticmethod
    def parse(text: str, var: str | None = None) -> LaurentPoly:
        text = text.strip().replace(" ", "")
        if text in ("0", ""):
            return LaurentPoly.zero(var or "A")
        acc: dict[int, int] = {}
        seen_var = var
        pos = 0
        for m in LaurentPoly._TERM_RE.finditer(text):
            if m.start() != pos:
                raise ValueError(f"malformed polynomial {text!r} at {pos}")
            pos = m.end()
            sign, mag, v, exp = m.groups()
            if seen_var is None:
                seen_var = v
            elif v != seen_var:
                raise MixedVariableError(f"mixed variables in {text!r}")
            c = int(mag) if mag else 1
            if sign == "-":
                c = -c
            e = int(exp)
            acc[e] = acc.get(e, 0) + c
        if pos != len(text):
            raise ValueError(f"malformed polynomial {text!r} at {pos}")
        return LaurentPoly.from_dict(seen_var or "A", acc)


# Convenience constructors used across modules.
def A(exp: int = 1, coeff: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial("A", exp, coeff)


def U(exp: int = 1, coeff: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial("u", exp, coeff)


def loop_value() -> LaurentPoly:
    """Value of a disjoint trivially framed unknot: -A^2 - A^-2."""
    return LaurentPoly.from_dict("A", {2: -1, -2: -1})


_CYCLO_U = LaurentPoly.from_dict("u", {0: 1, 2: 1})  # 1 + u^2


@dataclass(frozen=True)
class LocalizedCoeff:
    """num / (u^u_pow (1+u^2)^cyclo_pow), canonical.

    Normal form: num not divisible by u when u_pow > 0 and not divisible by
    1+u^2 when cyclo_pow > 0; zero is stored with trivial denominator.
    """

    num: LaurentPoly
    u_pow: int
    cyclo_pow: int

    @staticmethod
    def make(num: LaurentPoly, u_pow: int = 0, cyclo_pow: int = 0) -> LocalizedCoeff:
        if num.var != "u":
            raise MixedVariableError("localized coefficients live over u")
        if u_pow < 0 or cyclo_pow < 0:
            raise ValueError("denominator exponents must be nonnegative")
        if num.is_zero():
            return LocalizedCoeff(num, 0, 0)
        while cyclo_pow > 0:
            q = num.exact_div(_CYCLO_U)
            if q is None:
                break
            num = q
            cyclo_pow -= 1
        # u is a unit: put the whole negative unit part in the denominator so
        # each value has exactly one representation (numerator valuation >= 0,
        # and 0 exactly when a u-denominator is present).
        val = num.valuation()
        base = num.shift(-val)
        net = val - u_pow
        if net >= 0:
            num, u_pow = base.shift(net), 0
        else:
            num, u_pow = base, -net
        return LocalizedCoeff(num, u_pow, cyclo_pow)

    @staticmethod
    def from_poly(p: LaurentPoly) -> LocalizedCoeff:
        return LocalizedCoeff.make(p)

    @staticmethod
    def from_int(k: int) -> LocalizedCoeff:
        return LocalizedCoeff.make(LaurentPoly.const("u", k))

    @staticmethod
    def zero() -> LocalizedCoeff:
        return LocalizedCoeff.make(LaurentPoly.zero("u"))

    @staticmethod
    def one() -> LocalizedCoeff:
        return LocalizedCoeff.make(LaurentPoly.one("u"))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def denominator(self) -> LaurentPoly:
        return LaurentPoly.monomial("u", self.u_pow) * _CYCLO_U ** self.cyclo_pow

    # -- arithmetic (closed in the localization) ------------------------

    def __add__(self, other: LocalizedCoeff) -> LocalizedCoeff:
        a = max(self.u_pow, other.u_pow)
        b = max(self.cyclo_pow, other.cyclo_pow)
        lhs = self.num.shift(a - self.u_pow) * _CYCLO_U ** (b - self.cyclo_pow)
        rhs = other.num.shift(a - other.u_pow) * _CYCLO_U ** (b - other.cyclo_pow)
        return LocalizedCoeff.make(lhs + rhs, a, b)

    def __neg__(self) -> LocalizedCoeff:
        return LocalizedCoeff(-self.num, self.u_pow, self.cyclo_pow)

    def __sub__(self, other: LocalizedCoeff) -> LocalizedCoeff:
        return self + (-other)

    def __mul__(self, other: LocalizedCoeff) -> LocalizedCoeff:
        return LocalizedCoeff.make(
            self.num * other.num,
            self.u_pow + other.u_pow,
            self.cyclo_pow + other.cyclo_pow,
        )

    def scale_poly(self, p: LaurentPoly) -> LocalizedCoeff:
        return LocalizedCoeff.make(self.num * p, self.u_pow, self.cyclo_pow)

    def __pow__(self, n: int) -> LocalizedCoeff:
        if n < 0:
            raise ValueError("negative powers are not closed in the localization")
        out = LocalizedCoeff.one()
        for _ in range(n):
            out = out * self
        return out

    def equiv(self, other: LocalizedCoeff) -> bool:
        """Cross-multiplication equality (denominator-shape independent)."""
        return (self.num * other.denominator()) == (other.num * self.denominator())

    # -- formatting ------------------------------------------------------

    def format(self) -> str:
        if self.u_pow == 0 and self.cyclo_pow == 0:
            return self.num.format()
        den = ""
        if self.u_pow:
            den += f"u^{self.u_pow}" if self.u_pow > 1 else "u"
        if self.cyclo_pow:
            den += f"(1+u^2)^{self.cyclo_pow}" if self.cyclo_pow > 1 else "(1+u^2)"
        return f"({self.num.format()})/({den})"

    def __str__(self) -> str:
        return self.format()

    _DEN_RE = re.compile(r"^(?:u(?:\^(\d+))?)?(?:\(1\+u\^2\)(?:\^(\d+))?)?$")

    @staticmethod
    def parse(text: str) -> LocalizedCoeff:
        text = text.strip()
        if ")/(" not in text:
            return LocalizedCoeff.make(LaurentPoly.parse(text, "u"))
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"malformed localized coefficient {text!r}")
        num_text, den_text = text[1:-1].split(")/(", 1)
        m = LocalizedCoeff._DEN_RE.match(den_text.replace(" ", ""))
        if m is None:
            raise ValueError(f"malformed denominator in {text!r}")
        has_u = den_text.lstrip().startswith("u")
        a = int(m.group(1)) if m.group(1) else (1 if has_u else 0)
        has_cyclo = "(1+u^2)" in den_text
        b = int(m.group(2)) if m.group(2) else (1 if has_cyclo else 0)
        return LocalizedCoeff.make(LaurentPoly.parse(num_text, "u"), a, b)


def stabilization_trace_value() -> LocalizedCoeff:
    """Trace of a positive stabilization letter: -1/(u(1+u^2))."""
    return LocalizedCoeff.make(LaurentPoly.const("u", -1), 1, 1)


@dataclass(frozen=True)
class SubstitutionRule:
    """u -> sign * A^exp_step, applied exponent-wise: u^k -> sign^k A^(k*step)."""

    name: str
    sign: int
    exp_step: int


U_TO_A_SQUARED = SubstitutionRule("u=A2", 1, 2)
U_TO_NEG_A_INV_SQUARED = SubstitutionRule("u=-A-2", -1, -2)

SUBSTITUTIONS = {r.name: r for r in (U_TO_A_SQUARED, U_TO_NEG_A_INV_SQUARED)}


def substitute(p: LaurentPoly, rule: SubstitutionRule = U_TO_A_SQUARED) -> LaurentPoly:
    """Map a u-polynomial into A-land under the rule's exponent map."""
    if p.var == "A":
        raise MixedVariableError("substitute expects a polynomial in u")
    acc: dict[int, int] = {}
    for e, c in p.terms:
        sgn = 1 if (rule.sign == 1 or e % 2 == 0) else -1
        k = e * rule.exp_step
        acc[k] = acc.get(k, 0) + sgn * c
    return LaurentPoly.from_dict("A", acc)


def substitute_localized(
    c: LocalizedCoeff, rule: SubstitutionRule = U_TO_A_SQUARED
) -> tuple[LaurentPoly, LaurentPoly]:
    """Image of a localized coefficient as a (numerator, denominator) pair in A."""
    num = substitute(c.num, rule)
    den = substitute(c.denominator(), rule)
    return num, den


def even_to_u(p: LaurentPoly) -> LaurentPoly:
    """Inverse of u -> A^2 on the even subring: A^(2k) -> u^k."""
    if p.var != "A":
        raise MixedVariableError("even_to_u expects a polynomial in A")
    if not p.exponents_even():
        raise ValueError(f"odd exponent in {p.format()}; not in the image of u -> A^2")
    return LaurentPoly.from_dict("u", {e // 2: c for e, c in p.terms})
