"""Algebraic evaluation path: quadratic rewriting, Markov trace, invariant.

The tower of type-B algebras is presented by σ_i^2 = (u - u^-1) σ_i + 1 on
top of the mixed braid relations; the bracket-type quotient admits a unique
Markov trace with

    tr(a σ_n)    = z tr(a),   z = -1/(u(1+u^2)),
    tr(a t'_n^k) = s_k tr(a),

and the universal solid-torus invariant is
(-(1+u^2)/u)^(n-1) u^(2e) tr(·), normalized so the coil words t^n map to the
trace symbols s_n.

Two-strand words are evaluated exactly: every word normalizes in the *plain*
basis {t^a t_1^b σ_1^ε} (t and t_1 = σ_1 t σ_1 commute, so folding letters
from the left is a complete rewriting procedure), and a cached linear solve
converts plain monomials to the *primed* basis {t^a t'_1^b σ_1^ε} where the
trace rules read off directly:

    tr(t^a t'_1^b)     = s_a s_b,
    tr(t^a t'_1^b σ_1) = tr(t^(a+b) σ_1) = z s_(a+b).

Words on more strands reduce by last-strand peeling: unused strands drop,
a single top letter is a Markov stabilization, and contiguous conjugate
blocks σ_(n-1)…σ_1 t^k σ_1^-1…σ_(n-1)^-1 peel as s_k factors.  Anything
outside that class raises UnsupportedWordError rather than answering wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .basis import SkeinVector, coil_product
from .braid import (
    T_GEN,
    Letter,
    LoopMonomial,
    MixedBraidWord,
    free_reduce,
    letters_word,
)
from .coeffs import (
    LaurentPoly,
    LocalizedCoeff,
    SubstitutionRule,
    U_TO_A_SQUARED,
    even_to_u,
    stabilization_trace_value,
    substitute,
)
from .ratfunc import PolyFraction, solve_linear


class UnsupportedWordError(ValueError):
    """The word left the class the rule-based evaluator certifies."""


def _u(exp: int, coeff: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial("u", exp, coeff)


def _u_minus() -> LaurentPoly:
    return _u(1) - _u(-1)


# ---------------------------------------------------------------------------
# Trace polynomials
# ---------------------------------------------------------------------------

TraceMonomial = tuple[int, ...]  # sorted nonzero indices; () is the constant


def trace_monomial(*indices: int) -> TraceMonomial:
    return tuple(sorted(i for i in indices if i != 0))


def format_trace_monomial(m: TraceMonomial) -> str:
    if not m:
        return "1"
    parts = []
    for idx in sorted(set(m)):
        p = m.count(idx)
        parts.append(f"s_{idx}" if p == 1 else f"s_{idx}^{p}")
    return " ".join(parts)


@dataclass(frozen=True)
class TracePolynomial:
    """Linear combination of trace-symbol monomials over the localization."""

    terms: tuple[tuple[TraceMonomial, LocalizedCoeff], ...]

    @staticmethod
    def from_dict(d: dict[TraceMonomial, LocalizedCoeff]) -> TracePolynomial:
        return TracePolynomial(
            tuple(sorted((m, c) for m, c in d.items() if not c.is_zero()))
        )

    @staticmethod
    def zero() -> TracePolynomial:
        return TracePolynomial(())

    @staticmethod
    def constant(c: LocalizedCoeff) -> TracePolynomial:
        return TracePolynomial.from_dict({(): c})

    @staticmethod
    def symbol(k: int, coeff: LocalizedCoeff | None = None) -> TracePolynomial:
        return TracePolynomial.from_dict(
            {trace_monomial(k): coeff if coeff is not None else LocalizedCoeff.one()}
        )

    def as_dict(self) -> dict[TraceMonomial, LocalizedCoeff]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[TraceMonomial, ...]:
        return tuple(m for m, _ in self.terms)

    def coeff(self, m: TraceMonomial) -> LocalizedCoeff:
        for mm, c in self.terms:
            if mm == m:
                return c
        return LocalizedCoeff.zero()

    def __add__(self, other: TracePolynomial) -> TracePolynomial:
        acc = self.as_dict()
        for m, c in other.terms:
            acc[m] = acc.get(m, LocalizedCoeff.zero()) + c
        return TracePolynomial.from_dict(acc)

    def __neg__(self) -> TracePolynomial:
        return TracePolynomial(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: TracePolynomial) -> TracePolynomial:
        return self + (-other)

    def scale(self, c: LocalizedCoeff) -> TracePolynomial:
        return TracePolynomial.from_dict({m: cc * c for m, cc in self.terms})

    def is_linear(self) -> bool:
        return all(len(m) <= 1 for m, _ in self.terms)

    def format(self) -> str:
        if not self.terms:
            return "0"
        return "  +  ".join(
            f"({c.format()}) * {format_trace_monomial(m)}" for m, c in self.terms
        )

    def to_json_dict(self) -> dict[str, str]:
        return {format_trace_monomial(m): c.format() for m, c in self.terms}

    @staticmethod
    def from_json_dict(d: dict[str, str]) -> TracePolynomial:
        out: dict[TraceMonomial, LocalizedCoeff] = {}
        for key, cstr in d.items():
            if key == "1":
                mono: TraceMonomial = ()
            else:
                parts: list[int] = []
                for tok in key.split():
                    if not tok.startswith("s_"):
                        raise ValueError(f"bad trace monomial {key!r}")
                    body, _, pw = tok[2:].partition("^")
                    parts.extend([int(body)] * (int(pw) if pw else 1))
                mono = tuple(sorted(parts))
            out[mono] = LocalizedCoeff.parse(cstr)
        return TracePolynomial.from_dict(out)


# ---------------------------------------------------------------------------
# Algebra elements over loop monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraElement:
    """Finite combination of loop monomials with localized coefficients."""

    terms: tuple[tuple[LoopMonomial, LocalizedCoeff], ...]

    @staticmethod
    def from_dict(d: dict[LoopMonomial, LocalizedCoeff]) -> AlgebraElement:
        items = [(m, c) for m, c in d.items() if not c.is_zero()]
        items.sort(key=lambda mc: (mc[0].primed, mc[0].exponents, mc[0].tail))
        return AlgebraElement(tuple(items))

    @staticmethod
    def monomial(m: LoopMonomial, coeff: LocalizedCoeff | None = None) -> AlgebraElement:
        return AlgebraElement.from_dict(
            {m: coeff if coeff is not None else LocalizedCoeff.one()}
        )

    def as_dict(self) -> dict[LoopMonomial, LocalizedCoeff]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        acc = self.as_dict()
        for m, c in other.terms:
            acc[m] = acc.get(m, LocalizedCoeff.zero()) + c
        return AlgebraElement.from_dict(acc)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + other.scale(LocalizedCoeff.from_int(-1))

    def scale(self, c: LocalizedCoeff) -> AlgebraElement:
        return AlgebraElement.from_dict({m: cc * c for m, cc in self.terms})

    def format(self) -> str:
        if not self.terms:
            return "0"

        def mono(m: LoopMonomial) -> str:
            gen = "t'" if m.primed else "t"
            parts = [
                (f"{gen}_{i}" if i else "t") + (f"^{k}" if k != 1 else "")
                for i, k in m.exponents
            ]
            for g, s in m.tail:
                parts.append(f"s{g}" + ("^-1" if s < 0 else ""))
            return " ".join(parts) if parts else "1"

        return "  +  ".join(f"({c.format()}) * {mono(m)}" for m, c in self.terms)


def loop_monomial(
    primed: bool, exps: dict[int, int], tail: tuple[Letter, ...] = ()
) -> LoopMonomial:
    return LoopMonomial(
        primed, tuple(sorted((i, k) for i, k in exps.items() if k != 0)), tail
    )


# ---------------------------------------------------------------------------
# Two-strand engine: plain-basis folding
# ---------------------------------------------------------------------------

PlainKey = tuple[int, int, int]  # (t exponent, t_1 exponent, sigma in {0, 1})
PlainElement = dict[PlainKey, LaurentPoly]


def _acc(acc: PlainElement, key: PlainKey, c: LaurentPoly) -> None:
    s = acc.get(key, LaurentPoly.zero("u")) + c
    if s.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = s


def _fold_letter(elem: PlainElement, letter: Letter) -> PlainElement:
    g, sign = letter
    um = _u_minus()
    out: PlainElement = {}
    for (a, b, e), c in elem.items():
        if g == T_GEN and sign == 1:
            if e == 0:
                _acc(out, (a + 1, b, 0), c)
            else:
                # σ1 t = t_1 σ1^-1 = t_1 σ1 - (u-u^-1) t_1
                _acc(out, (a, b + 1, 1), c)
                _acc(out, (a, b + 1, 0), c * um.scale(-1))
        elif g == T_GEN and sign == -1:
            if e == 0:
                _acc(out, (a - 1, b, 0), c)
            else:
                # σ1 t^-1 = (u-u^-1) t^-1 + t_1^-1 σ1
                _acc(out, (a - 1, b, 0), c * um)
                _acc(out, (a, b - 1, 1), c)
        elif sign == 1:
            if e == 0:
                _acc(out, (a, b, 1), c)
            else:
                _acc(out, (a, b, 1), c * um)
                _acc(out, (a, b, 0), c)
        else:
            if e == 0:
                _acc(out, (a, b, 1), c)
                _acc(out, (a, b, 0), c * um.scale(-1))
            else:
                _acc(out, (a, b, 0), c)
    return out


def plain_fold(letters: tuple[Letter, ...]) -> PlainElement:
    """Normal form of a two-strand word in the plain basis t^a t_1^b σ1^ε."""
    elem: PlainElement = {(0, 0, 0): LaurentPoly.one("u")}
    for letter in letters:
        if letter[0] not in (T_GEN, 1):
            raise UnsupportedWordError(f"letter s{letter[0]} is not two-strand")
        elem = _fold_letter(elem, letter)
    return elem


def _primed_letters(key: PlainKey) -> tuple[Letter, ...]:
    """Word spelling of the primed monomial t^a t'_1^b σ1^ε."""
    a, b, e = key
    letters: list[Letter] = [(T_GEN, 1 if a > 0 else -1)] * abs(a)
    if b != 0:
        letters += [(1, 1)] + [(T_GEN, 1 if b > 0 else -1)] * abs(b) + [(1, -1)]
    if e:
        letters.append((1, 1))
    return tuple(letters)


@lru_cache(maxsize=None)
def _primed_fold(key: PlainKey) -> tuple[tuple[PlainKey, LaurentPoly], ...]:
    return tuple(sorted(plain_fold(_primed_letters(key)).items()))


@lru_cache(maxsize=None)
def _plain_to_primed(key: PlainKey) -> tuple[tuple[PlainKey, PolyFraction], ...]:
    """Expand a plain monomial over primed monomials (exact linear solve).

    The algebra is graded by total loop exponent, so candidates share the
    grade a+b; the window widens until the solve succeeds.  The result is
    the unique primed expansion (both families are bases), verified by the
    solver refolding the combination.
    """
    a, b, e = key
    if b == 0:
        return ((key, PolyFraction.from_int(1)),)
    g = a + b
    target = dict(plain_fold_key(key))
    lo, hi = min(0, a, g), max(0, a, g)
    for extra in range(0, 4):
        cands: list[PlainKey] = []
        for ap in range(lo - extra, hi + extra + 1):
            for ep in (0, 1):
                cands.append((ap, g - ap, ep))
        rows: list[PlainKey] = sorted(
            {k for ck in cands for k, _ in _primed_fold(ck)} | set(target)
        )
        matrix = []
        rhs = []
        folds = {ck: dict(_primed_fold(ck)) for ck in cands}
        for rk in rows:
            matrix.append(
                [
                    PolyFraction.from_poly(folds[ck].get(rk, LaurentPoly.zero("u")))
                    for ck in cands
                ]
            )
            rhs.append(
                PolyFraction.from_poly(target.get(rk, LaurentPoly.zero("u")))
            )
        sol = solve_linear(matrix, rhs)
        if sol is not None:
            return tuple(
                (ck, cf) for ck, cf in zip(cands, sol) if not cf.is_zero()
            )
    raise UnsupportedWordError(f"no primed expansion found for t^{a} t_1^{b} σ^{e}")


def plain_fold_key(key: PlainKey) -> tuple[tuple[PlainKey, LaurentPoly], ...]:
    """A plain monomial is already a normal form."""
    return ((key, LaurentPoly.one("u")),)


def _trace_primed(key: PlainKey) -> TracePolynomial:
    a, b, e = key
    if e:
        # t^a t'_1^b σ1 = t^a σ1 t^b, cyclically t^(a+b) σ1.
        return TracePolynomial.from_dict(
            {trace_monomial(a + b): stabilization_trace_value()}
        )
    return TracePolynomial.from_dict({trace_monomial(a, b): LocalizedCoeff.one()})


def _trace_plain_element(elem: PlainElement) -> TracePolynomial:
    out = TracePolynomial.zero()
    for key, poly in elem.items():
        coeff = LocalizedCoeff.from_poly(poly)
        for pk, frac in _plain_to_primed(key):
            loc = frac.as_localized()
            if loc is None:
                raise UnsupportedWordError(
                    f"conversion coefficient {frac.format()} left the localization"
                )
            out = out + _trace_primed(pk).scale(loc * coeff)
    return out


# ---------------------------------------------------------------------------
# Markov trace on mixed braid words
# ---------------------------------------------------------------------------


def _rotations(letters: tuple[Letter, ...]):
    n = len(letters)
    if n == 0:
        yield letters
        return
    for k in range(n):
        yield letters[k:] + letters[:k]


def _strip_unused(strands: int, letters: tuple[Letter, ...]) -> int:
    need = 1
    for g, _ in letters:
        if g != T_GEN:
            need = max(need, g + 1)
    return min(strands, max(need, 1))


def _tprime_block(n: int, k: int) -> tuple[Letter, ...]:
    sign = 1 if k > 0 else -1
    down = [(g, 1) for g in range(n - 1, 0, -1)]
    up = [(g, -1) for g in range(1, n)]
    return tuple(down + [(T_GEN, sign)] * abs(k) + up)


def _match_tprime_suffix(n: int, letters: tuple[Letter, ...]) -> tuple[int, int] | None:
    """Match a trailing σ_{n-1}…σ_1 t^k σ_1^-1…σ_{n-1}^-1 block; return (k, start)."""
    m = len(letters)
    up = tuple((g, -1) for g in range(1, n))
    if m < 2 * (n - 1) + 1 or letters[m - len(up):] != up:
        return None
    # Count the t^±k core just before the ascending conjugator.
    i = m - len(up) - 1
    if i < 0 or letters[i][0] != T_GEN:
        return None
    sign = letters[i][1]
    k = 0
    while i >= 0 and letters[i] == (T_GEN, sign):
        k += 1
        i -= 1
    down = tuple((g, 1) for g in range(n - 1, 0, -1))
    start = i - len(down) + 1
    if start < 0 or letters[start : i + 1] != down:
        return None
    return sign * k, start


def markov_trace(w: MixedBraidWord) -> TracePolynomial:
    """Markov trace of a mixed braid word, z specialized to -1/(u(1+u^2)).

    Raises UnsupportedWordError when the word cannot be brought into the
    certified class by free reduction, cyclic rotation, and last-strand
    peeling (never silently wrong).
    """
    return _trace_letters(w.strands, free_reduce(w).letters)


def _trace_letters(strands: int, letters: tuple[Letter, ...]) -> TracePolynomial:
    n = _strip_unused(strands, letters)
    if n == 1:
        net = sum(s for _, s in letters)
        if net == 0:
            return TracePolynomial.constant(LocalizedCoeff.one())
        return TracePolynomial.symbol(net)
    if n == 2:
        return _trace_plain_element(plain_fold(letters))
    top = n - 1
    occurrences = sum(1 for g, _ in letters if g == top)
    if occurrences == 0:
        return _trace_letters(n - 1, letters)
    if occurrences == 1:
        for rot in _rotations(letters):
            rot = free_reduce(letters_word(n, rot)).letters
            if rot and rot[-1][0] == top:
                prefix = rot[:-1]
                rest = _trace_letters(n - 1, prefix)
                z = stabilization_trace_value()
                if rot[-1][1] == 1:
                    return rest.scale(z)
                return rest.scale(z - LocalizedCoeff.from_poly(_u_minus()))
    for rot in _rotations(letters):
        rot = free_reduce(letters_word(n, rot)).letters
        hit = _match_tprime_suffix(n, rot)
        if hit is None:
            continue
        k, start = hit
        prefix = rot[:start]
        if any(g == top for g, _ in prefix):
            continue
        return _symbol_times(_trace_letters(n - 1, prefix), k)
    raise UnsupportedWordError(
        f"word {letters_word(strands, letters).format()!r} is outside the "
        "rule-based trace class"
    )


def _symbol_times(tp: TracePolynomial, k: int) -> TracePolynomial:
    out: dict[TraceMonomial, LocalizedCoeff] = {}
    for m, c in tp.terms:
        key = tuple(sorted(m + (k,)))
        out[key] = out.get(key, LocalizedCoeff.zero()) + c
    return TracePolynomial.from_dict(out)


def bracket_invariant(w: MixedBraidWord) -> TracePolynomial:
    """Universal solid-torus invariant (-(1+u^2)/u)^(n-1) u^(2e) tr(w)."""
    from .braid import exponent_sum

    n = w.strands
    e = exponent_sum(w)
    num = LaurentPoly.from_dict("u", {0: 1, 2: 1}) ** (n - 1)
    if (n - 1) % 2 == 1:
        num = -num
    pref = LocalizedCoeff.make(num.shift(2 * e), n - 1, 0)
    return markov_trace(w).scale(pref)


# ---------------------------------------------------------------------------
# Linearization of product trace symbols and the class read-off
# ---------------------------------------------------------------------------


def linearize(tp: TracePolynomial) -> TracePolynomial:
    """Rewrite product monomials s_{k1}…s_{kr} in s-linear form.

    A product of trace symbols is the trace of a split union of coils; the
    shared coil recursion expands it over {t^n}, and the invariant prefactor
    for the r-strand presentation contributes (-u/(1+u^2))^(r-1).
    """
    out = TracePolynomial.zero()
    for m, c in tp.terms:
        if len(m) <= 1:
            out = out + TracePolynomial.from_dict({m: c})
            continue
        if any(k < 0 for k in m):
            raise UnsupportedWordError(f"cannot linearize negative symbol in {m}")
        vec = coil_product(m)
        r = len(m)
        pref = LocalizedCoeff.make(
            LaurentPoly.monomial("u", r - 1, (-1) ** (r - 1)), 0, r - 1
        )
        for idx, coeff_a in vec.coeffs:
            cu = LocalizedCoeff.from_poly(even_to_u(coeff_a))
            term = (
                TracePolynomial.symbol(idx) if idx else TracePolynomial.constant(LocalizedCoeff.one())
            )
            out = out + term.scale(cu * pref * c)
    return out


def algebra_class(w: MixedBraidWord, rule: SubstitutionRule = U_TO_A_SQUARED) -> SkeinVector:
    """Coil-basis class of a closure computed along the algebraic path.

    The word is normalized in the two-strand plain basis by exact algebra
    identities, converted to primed monomials, and each monomial is mapped to
    its closure class: t^a t'_1^b closes to the split union of coils (a zero
    exponent leaving a contractible loop), and t^a t'_1^b σ_1 = t^a σ_1 t^b
    destabilizes to -A^3 times the (a+b)-coil.  The generator rescale
    σ -> A·(bracket crossing) contributes A^(ε - e) against the word's
    σ-exponent sum, which keeps framing bookkeeping exact.  Words on more
    strands peel geometrically first (unused strands are loop factors,
    conjugate blocks split off coils, top twist letters destabilize).
    """
    return _class_letters(w.strands, free_reduce(w).letters, rule)


def _class_letters(
    strands: int, letters: tuple[Letter, ...], rule: SubstitutionRule
) -> SkeinVector:
    from .basis import coil_poly, longitude_to_skein, lp_mul, skein_to_longitude
    from .coeffs import loop_value

    n = _strip_unused(strands, letters)
    dropped = strands - n
    if n <= 2:
        vec = _class_two_strand(n, letters, rule)
    else:
        vec = None
        top = n - 1
        occurrences = sum(1 for g, _ in letters if g == top)
        if occurrences == 1:
            for rot in _rotations(letters):
                rot = free_reduce(letters_word(n, rot)).letters
                if rot and rot[-1][0] == top:
                    sign = rot[-1][1]
                    inner = _class_letters(n - 1, rot[:-1], rule)
                    vec = inner.scale(LaurentPoly.monomial("A", 3 * sign, -1))
                    break
        if vec is None:
            for rot in _rotations(letters):
                rot = free_reduce(letters_word(n, rot)).letters
                hit = _match_tprime_suffix(n, rot)
                if hit is None:
                    continue
                k, start = hit
                prefix = rot[:start]
                if any(g == top for g, _ in prefix):
                    continue
                inner = _class_letters(n - 1, prefix, rule)
                coil = dict(coil_poly(abs(k)))
                vec = longitude_to_skein(lp_mul(skein_to_longitude(inner), coil))
                break
        if vec is None:
            raise UnsupportedWordError(
                f"word {letters_word(strands, letters).format()!r} is outside the "
                "rule-based class evaluator"
            )
    for _ in range(dropped):
        vec = vec.scale(loop_value())
    return vec


def _class_two_strand(
    n: int, letters: tuple[Letter, ...], rule: SubstitutionRule
) -> SkeinVector:
    from .basis import LongitudePoly, coil_poly, longitude_to_skein, lp_add, lp_mul, lp_scale

    if n == 1:
        net = sum(s for _, s in letters)
        return SkeinVector.basis(abs(net))
    e_word = sum(s for g, s in letters if g != T_GEN)
    elem = plain_fold(letters)
    # Aggregate primed coefficients as exact u-fractions, clear the common
    # denominator, expand in A, and divide it back out of the final vector.
    contributions: list[tuple[PolyFraction, int, LongitudePoly]] = []
    dens: list[LaurentPoly] = []
    for key, upoly in elem.items():
        base = PolyFraction.from_poly(upoly)
        for (a, b, eps), frac in _plain_to_primed(key):
            cu = base * frac
            dens.append(cu.den)
            if eps:
                shape: LongitudePoly = {
                    d: c.scale(-1).shift(3) for d, c in coil_poly(abs(a + b))
                }
            else:
                shape = lp_mul(dict(coil_poly(abs(a))), dict(coil_poly(abs(b))))
            contributions.append((cu, eps - e_word, shape))
    common = LaurentPoly.one("u")
    seen_dens: set[tuple] = set()
    for d in dens:
        if d.terms not in seen_dens:
            seen_dens.add(d.terms)
            common = common * d
    total: LongitudePoly = {}
    for cu, shift, shape in contributions:
        cleared = (cu * PolyFraction.from_poly(common)).as_poly()
        if cleared is None:
            raise AssertionError("common denominator failed to clear")
        coeff_a = substitute(cleared, rule).shift(shift)
        total = lp_add(total, lp_scale(shape, coeff_a))
    vec = longitude_to_skein(total)
    den_a = substitute(common, rule)
    out: dict[int, LaurentPoly] = {}
    for idx, c in vec.as_dict().items():
        q = c.exact_div(den_a)
        if q is None:
            raise UnsupportedWordError(
                f"class coefficient {c.format()} not divisible by {den_a.format()} "
                f"under {rule.name}"
            )
        out[idx] = q
    return SkeinVector.from_dict(out)


# ---------------------------------------------------------------------------
# Rewriting operations on algebra elements
# ---------------------------------------------------------------------------


def quadratic_reduce(e: AlgebraElement) -> AlgebraElement:
    """Exhaust σ_i^2 = (u-u^-1) σ_i + 1 and σ_i^-1 = σ_i - (u-u^-1) in tails."""
    um = LocalizedCoeff.from_poly(_u_minus())
    work = list(e.terms)
    done: dict[LoopMonomial, LocalizedCoeff] = {}
    while work:
        mono, coeff = work.pop()
        tail = mono.tail
        idx = next((i for i, (_, s) in enumerate(tail) if s == -1), None)
        if idx is not None:
            g = tail[idx][0]
            pos = tail[:idx] + ((g, 1),) + tail[idx + 1 :]
            dropped = tail[:idx] + tail[idx + 1 :]
            work.append((LoopMonomial(mono.primed, mono.exponents, pos), coeff))
            work.append(
                (LoopMonomial(mono.primed, mono.exponents, dropped), -(coeff * um))
            )
            continue
        idx = next(
            (i for i in range(len(tail) - 1) if tail[i][0] == tail[i + 1][0]), None
        )
        if idx is not None:
            squeezed = tail[: idx + 1] + tail[idx + 2 :]
            dropped = tail[:idx] + tail[idx + 2 :]
            work.append((LoopMonomial(mono.primed, mono.exponents, squeezed), coeff * um))
            work.append((LoopMonomial(mono.primed, mono.exponents, dropped), coeff))
            continue
        done[mono] = done.get(mono, LocalizedCoeff.zero()) + coeff
    return AlgebraElement.from_dict(done)


def expand_twisted_loop(n: int, sign: int) -> AlgebraElement:
    """Closure-equivalence image of t_1^n σ_1^±1 over plain loop monomials.

    t_1^n σ_1^±1 reduces to t^n σ_1 plus (u-u^-1)-weighted mixed monomials
    t^i t_1^(n-i); the positive twist includes i = 0, the negative starts at
    i = 1.  For n = 0 the word is just the twist letter itself.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be ±1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return AlgebraElement.monomial(loop_monomial(False, {}, ((1, sign),)))
    um = LocalizedCoeff.from_poly(_u_minus())
    acc: dict[LoopMonomial, LocalizedCoeff] = {
        loop_monomial(False, {0: n}, ((1, 1),)): LocalizedCoeff.one()
    }
    start = 0 if sign == 1 else 1
    for i in range(start, n):
        mono = loop_monomial(False, {0: i, 1: n - i})
        acc[mono] = acc.get(mono, LocalizedCoeff.zero()) + um
    return AlgebraElement.from_dict(acc)


def _monomial_plain_keys(m: LoopMonomial) -> list[tuple[PlainKey, LocalizedCoeff]]:
    """Plain-basis keys of a two-strand monomial with tail in {1, σ1^±1}."""
    if m.primed:
        raise UnsupportedWordError("expected a plain-kind monomial")
    exps = dict(m.exponents)
    if any(i not in (0, 1) for i in exps):
        raise UnsupportedWordError(f"monomial {m} is not two-strand")
    a, b = exps.get(0, 0), exps.get(1, 0)
    if m.tail == ():
        return [((a, b, 0), LocalizedCoeff.one())]
    if m.tail == ((1, 1),):
        return [((a, b, 1), LocalizedCoeff.one())]
    if m.tail == ((1, -1),):
        um = LocalizedCoeff.from_poly(_u_minus())
        return [((a, b, 1), LocalizedCoeff.one()), ((a, b, 0), -um)]
    raise UnsupportedWordError(f"tail {m.tail} outside {{1, σ1^±1}}")


def convert_to_primed(e: AlgebraElement) -> AlgebraElement:
    """Rewrite a two-strand plain element over primed loop monomials.

    The primed copy of each input monomial is the ordering-highest term of
    its expansion; coefficients stay in the localization.
    """
    acc: dict[LoopMonomial, LocalizedCoeff] = {}
    for mono, coeff in e.terms:
        for key, kc in _monomial_plain_keys(mono):
            for (a, b, eps), frac in _plain_to_primed(key):
                loc = frac.as_localized()
                if loc is None:
                    raise UnsupportedWordError(
                        f"conversion coefficient {frac.format()} left the localization"
                    )
                out_mono = loop_monomial(True, {0: a, 1: b}, ((1, 1),) if eps else ())
                acc[out_mono] = acc.get(out_mono, LocalizedCoeff.zero()) + loc * kc * coeff
    return AlgebraElement.from_dict(acc)


def tl_ideal_element(i: int, strands: int) -> AlgebraElement:
    """Generator 1 + u(σ_i+σ_{i+1}) + u²(σ_iσ_{i+1}+σ_{i+1}σ_i) + u³σ_iσ_{i+1}σ_i."""
    if i < 1 or strands < i + 2:
        raise ValueError("need strands >= i + 2")
    s_i, s_j = (i, 1), (i + 1, 1)
    pieces: list[tuple[tuple[Letter, ...], int]] = [
        ((), 0),
        ((s_i,), 1),
        ((s_j,), 1),
        ((s_i, s_j), 2),
        ((s_j, s_i), 2),
        ((s_i, s_j, s_i), 3),
    ]
    acc: dict[LoopMonomial, LocalizedCoeff] = {}
    for tail, pw in pieces:
        mono = loop_monomial(False, {}, tail)
        acc[mono] = acc.get(mono, LocalizedCoeff.zero()) + LocalizedCoeff.from_poly(
            _u(pw)
        )
    return AlgebraElement.from_dict(acc)


def reduce_to_coils(
    e: AlgebraElement, rule: SubstitutionRule = U_TO_A_SQUARED
) -> SkeinVector:
    """Reduce tail-free coil monomials in t, t'_1 to the coil basis {t^n}.

    Each monomial's closure is a split union of coils; the shared recursion
    expands it with the ordering-maximal term strictly decreasing at every
    peel.  u-side coefficients pass through the substitution rule.
    """
    out = SkeinVector.zero()
    for mono, coeff in e.terms:
        if mono.tail != ():
            raise UnsupportedWordError(f"monomial with braiding tail: {mono}")
        if any(i not in (0, 1) for i, _ in mono.exponents):
            raise UnsupportedWordError(f"monomial {mono} is not two-strand")
        if any(k < 0 for _, k in mono.exponents):
            raise UnsupportedWordError(f"negative coil exponent in {mono}")
        exps = tuple(k for _, k in mono.exponents)
        num, den = substitute(coeff.num, rule), substitute(coeff.denominator(), rule)
        q = num.exact_div(den)
        if q is None:
            raise UnsupportedWordError(
                f"coefficient {coeff.format()} does not clear its denominator"
            )
        out = out + coil_product(exps).scale(q)
    return out


def trace_of_element(e: AlgebraElement) -> TracePolynomial:
    """Trace extended linearly to algebra elements (via defining words)."""
    out = TracePolynomial.zero()
    for mono, coeff in e.terms:
        strands = max((i + 1 for i, _ in mono.exponents), default=1)
        strands = max(strands, max((g + 1 for g, _ in mono.tail), default=1))
        word = mono.defining_word(strands)
        out = out + markov_trace(word).scale(coeff)
    return out
