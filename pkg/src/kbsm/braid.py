"""Mixed braid words, looping generators, equivalence moves, and orderings.

A mixed braid on n moving strands is a word in t^±1 (the loop generator, a
pass of strand 1 around the fixed axis) and σ_i^±1 for 1 <= i <= n-1.  The
letter encoding is (g, sign) with g = 0 for t and g = i for σ_i.

Looping elements:

    t_i  = σ_i … σ_1 t σ_1 … σ_i          (plain)
    t'_i = σ_i … σ_1 t σ_1^-1 … σ_i^-1    (primed),   t'_0 = t_0 = t.

Closure equivalence is generated by conjugation, stabilization with σ_n^±1
on a fresh strand, loop conjugation by t^±1, and the braid band move
α -> α_+ σ_1^±1 (all indices shifted up; the fresh strand carries the twist).

The two ordering relations used by the rewriting arguments are implemented
verbatim: the exponent-sum/index/tail-reversed ordering on loop monomials,
and the total-degree ordering on pairs (n, m) indexing coil-and-longitude
symbols.  Both are total; the latter is well ordered with minimum (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass

T_GEN = 0  # generator index of the loop letter t

Letter = tuple[int, int]  # (generator, sign)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (token {position})")
        self.position = position


@dataclass(frozen=True)
class MixedBraidWord:
    strands: int
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise ValueError("need at least one moving strand")
        for g, sign in self.letters:
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign}")
            if g != T_GEN and not (1 <= g <= self.strands - 1):
                raise ValueError(f"generator s{g} out of range for {self.strands} strands")

    def __mul__(self, other: MixedBraidWord) -> MixedBraidWord:
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return MixedBraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> MixedBraidWord:
        return MixedBraidWord(
            self.strands, tuple((g, -s) for g, s in reversed(self.letters))
        )

    def crossing_count(self) -> int:
        return sum(1 for g, _ in self.letters if g != T_GEN)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters if g != T_GEN), default=0)

    def on_strands(self, n: int) -> MixedBraidWord:
        """Reinterpret the same letters on a different strand count."""
        return MixedBraidWord(n, self.letters)

    def mirror(self) -> MixedBraidWord:
        """Flip every letter's sign (crossing mirror + loop reversal)."""
        return MixedBraidWord(self.strands, tuple((g, -s) for g, s in self.letters))

    def format(self) -> str:
        out = []
        for g, s in self.letters:
            tok = "t" if g == T_GEN else f"s{g}"
            out.append(tok if s == 1 else tok + "^-1")
        return " ".join(out)


def empty_word(strands: int) -> MixedBraidWord:
    return MixedBraidWord(strands, ())


def letters_word(strands: int, letters: list[Letter]) -> MixedBraidWord:
    return MixedBraidWord(strands, tuple(letters))


def t_power(strands: int, k: int) -> MixedBraidWord:
    sign = 1 if k >= 0 else -1
    return MixedBraidWord(strands, ((T_GEN, sign),) * abs(k))


def expand_looping(strands: int, i: int, primed: bool, k: int) -> MixedBraidWord:
    """Defining word of t_i^k or t'_i^k on the given strand count.

    The primed element is a conjugate, so the conjugator is shared across all
    |k| loop letters; the plain element is not, and repeats per power.
    """
    if i < 0 or i > strands - 1:
        raise ValueError(f"looping index {i} needs {i + 1} strands")
    if k == 0:
        return empty_word(strands)
    sign = 1 if k > 0 else -1
    down = [(g, 1) for g in range(i, 0, -1)]  # σ_i … σ_1
    if primed:
        up = [(g, -1) for g in range(1, i + 1)]  # σ_1^-1 … σ_i^-1
        core = [(T_GEN, sign)] * abs(k)
        return letters_word(strands, down + core + up)
    up_pos = [(g, 1) for g in range(1, i + 1)]  # σ_1 … σ_i
    single = down + [(T_GEN, sign)] + up_pos
    return letters_word(strands, single * abs(k))


_TOKEN_KINDS = ("t", "sigma", "loop")


def _parse_token(tok: str, strands: int, pos: int) -> tuple[str, int, bool, int]:
    """Return (kind, index, primed, exponent) for one token."""
    body, exp = tok, 1
    if "^" in tok:
        body, _, etext = tok.partition("^")
        try:
            exp = int(etext)
        except ValueError:
            raise ParseError(f"malformed exponent {etext!r}", pos) from None
    primed = body.endswith("'")
    if primed:
        body = body[:-1]
    if body == "t":
        if primed:
            return ("loop", 0, True, exp)
        return ("t", 0, False, exp)
    if len(body) >= 2 and body[0] in ("s", "t") and body[1:].isdigit():
        idx = int(body[1:])
        if body[0] == "s":
            if primed:
                raise ParseError(f"unknown token {tok!r}", pos)
            if not (1 <= idx <= strands - 1):
                raise ParseError(f"index out of range in {tok!r}", pos)
            return ("sigma", idx, False, exp)
        if not (0 <= idx <= strands - 1):
            raise ParseError(f"index out of range in {tok!r}", pos)
        return ("loop", idx, primed, exp)
    raise ParseError(f"unknown token {tok!r}", pos)


def parse_word(text: str, strands: int) -> MixedBraidWord:
    """Parse the shared braid-word grammar.

    Whitespace-separated tokens: ``t`` (loop), ``sK`` (σ_K), ``tK``/``tK'``
    (looping elements, expanded on parse), each with optional ``^N``.
    """
    letters: list[Letter] = []
    for pos, tok in enumerate(text.split()):
        kind, idx, primed, exp = _parse_token(tok, strands, pos)
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        if kind == "t":
            letters.extend([(T_GEN, sign)] * abs(exp))
        elif kind == "sigma":
            letters.extend([(idx, sign)] * abs(exp))
        else:
            letters.extend(expand_looping(strands, idx, primed, exp).letters)
    return letters_word(strands, letters)


def exponent_sum(w: MixedBraidWord) -> int:
    """Sum of signs over σ letters; loop letters do not count."""
    return sum(s for g, s in w.letters if g != T_GEN)


def free_reduce(w: MixedBraidWord) -> MixedBraidWord:
    out: list[Letter] = []
    for letter in w.letters:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return letters_word(w.strands, out)


# -- closure-equivalence moves ------------------------------------------


@dataclass(frozen=True)
class Conjugation:
    by: MixedBraidWord


@dataclass(frozen=True)
class Stabilization:
    sign: int


@dataclass(frozen=True)
class LoopConjugation:
    sign: int


@dataclass(frozen=True)
class BraidBandMove:
    sign: int


Move = Conjugation | Stabilization | LoopConjugation | BraidBandMove


def apply_move(w: MixedBraidWord, move: Move) -> MixedBraidWord:
    if isinstance(move, Conjugation):
        if move.by.strands != w.strands:
            raise ValueError("conjugating word must live on the same strands")
        return move.by.inverse() * w * move.by
    if isinstance(move, Stabilization):
        lifted = w.on_strands(w.strands + 1)
        return lifted * letters_word(lifted.strands, [(w.strands, move.sign)])
    if isinstance(move, LoopConjugation):
        t = letters_word(w.strands, [(T_GEN, move.sign)])
        return t * w * t.inverse()
    if isinstance(move, BraidBandMove):
        n = w.strands + 1
        shifted: list[Letter] = []
        for g, s in w.letters:
            if g == T_GEN:
                # t becomes t_1 = σ_1 t σ_1, expanded so downstream modules
                # only ever see plain generator letters.
                block = expand_looping(n, 1, False, s)
                shifted.extend(block.letters)
            else:
                shifted.append((g + 1, s))
        return letters_word(n, shifted + [(1, move.sign)])
    raise TypeError(f"unknown move {move!r}")


def band_move_word(n: int, sign: int) -> MixedBraidWord:
    """The image of the coil t^n under a braid band move: t_1^n σ_1^±1."""
    return apply_move(t_power(1, n), BraidBandMove(sign))


# -- loop monomials and orderings ----------------------------------------


@dataclass(frozen=True)
class LoopMonomial:
    """Normal-form monomial t_{i_1}^{k_1} … t_{i_r}^{k_r} · (braiding tail).

    Indices strictly increasing, exponents nonzero; ``primed`` selects the
    t'-generators.  The tail is a word in σ letters only.
    """

    primed: bool
    exponents: tuple[tuple[int, int], ...]
    tail: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        idxs = [i for i, _ in self.exponents]
        if idxs != sorted(set(idxs)):
            raise ValueError("looping indices must be strictly increasing")
        if any(k == 0 for _, k in self.exponents):
            raise ValueError("looping exponents must be nonzero")
        if any(g == T_GEN for g, _ in self.tail):
            raise ValueError("braiding tail cannot contain loop letters")

    def exponent_total(self) -> int:
        return sum(k for _, k in self.exponents)

    def defining_word(self, strands: int) -> MixedBraidWord:
        w = empty_word(strands)
        for i, k in self.exponents:
            w = w * expand_looping(strands, i, self.primed, k)
        return w * letters_word(strands, list(self.tail))


def index_of(m: LoopMonomial) -> int:
    """Gap-free index: distinct looping indices minus one, 0 if none."""
    return max(len(m.exponents) - 1, 0)


def compare_monomials(a: LoopMonomial, b: LoopMonomial) -> int:
    """Total order on same-kind loop monomials; returns -1, 0, or +1.

    Clauses, in order: exponent sum; gap-free index; index sequences
    lexicographically with *smaller* first index meaning a *larger* monomial;
    exponents compared from the tail inward, first by absolute value, then
    positive-before-negative; equal loop parts fall through to a tail-length
    tiebreak (deterministic refinement, not part of the ordering proper).
    """
    if a.primed != b.primed:
        raise ValueError("monomials must be of the same kind")
    sa, sb = a.exponent_total(), b.exponent_total()
    if sa != sb:
        return -1 if sa < sb else 1
    ia, ib = index_of(a), index_of(b)
    if ia != ib:
        return -1 if ia < ib else 1
    idx_a = tuple(i for i, _ in a.exponents)
    idx_b = tuple(i for i, _ in b.exponents)
    for x, y in zip(idx_a, idx_b):
        if x != y:
            # Lower index at the first difference means the larger monomial.
            return 1 if x < y else -1
    if len(idx_a) != len(idx_b):
        return 1 if len(idx_a) < len(idx_b) else -1
    exps_a = tuple(k for _, k in a.exponents)
    exps_b = tuple(k for _, k in b.exponents)
    for x, y in zip(reversed(exps_a), reversed(exps_b)):
        if x == y:
            continue
        if abs(x) != abs(y):
            return -1 if abs(x) < abs(y) else 1
        return -1 if x > y else 1
    if len(a.tail) != len(b.tail):
        return -1 if len(a.tail) < len(b.tail) else 1
    return 0


def compare_pairs(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Total-degree ordering on (n, m) pairs; returns -1, 0, or +1.

    Sorted first by n + m, then by n; equal pairs compare equal.  Well
    ordered with minimum (0, 0).
    """
    n, m = a
    k, l = b
    if n < 0 or m < 0 or k < 0 or l < 0:
        raise ValueError("indices must be nonnegative")
    if n + m != k + l:
        return -1 if n + m < k + l else 1
    if n != k:
        return -1 if n < k else 1
    return 0
