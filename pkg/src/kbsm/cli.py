"""Command-line front end: evaluate words, build systems, run the verify suite.

Subcommands
-----------

eval          word -> coil-basis class via the state sum
reduce        word -> coil-basis class via the algebraic path
trace         word -> Markov trace (trace symbols over u)
invariant     word -> universal solid-torus invariant
system        N    -> twist and slide equation systems
presentation  N    -> module presentation rows and structure data
verify        run every anchored identity and acceptance check

Exit codes: 0 success, 1 domain error (unsupported word, state cap, failed
check in verify), 2 usage error.  Output is JSON by default; ``--format
csv`` is available for the equation tables, ``--format text`` for humans.
Identical configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .annular import DEFAULT_STATE_CAP, MixedSignPassesError, StateCapExceeded, evaluate_closure
from .basis import SkeinVector
from .braid import MixedBraidWord, ParseError, parse_word
from .coeffs import SUBSTITUTIONS, U_TO_A_SQUARED, SubstitutionRule
from .system import (
    build_presentation,
    eliminate_twist_system,
    equation_for,
    longitude_word,
    torsion_ideal_comparison,
    twist_equation_for,
    slide_image_expansion,
)
from .tl import UnsupportedWordError, algebra_class, bracket_invariant, markov_trace


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kbsm",
        description="Exact skein module computations for mixed braid closures.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_word_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        c = sub.add_parser(name, help=help_text)
        c.add_argument("--n", type=int, required=True, help="moving strands")
        c.add_argument("--word", type=str, required=True, help="braid word")
        return c

    for name, help_text in (
        ("eval", "state-sum class of the closure in the coil basis"),
        ("reduce", "algebraic-path class of the closure in the coil basis"),
        ("trace", "Markov trace of the word"),
        ("invariant", "universal invariant of the closure"),
    ):
        c = add_word_cmd(name, help_text)
        c.add_argument("--sub", choices=sorted(SUBSTITUTIONS), default="u=A2")
        c.add_argument("--cap", type=int, default=DEFAULT_STATE_CAP)
        c.add_argument("--format", choices=("json", "text"), default="json")
        c.add_argument("--out", type=str, default=None)

    for name, help_text in (
        ("system", "twist and slide equation systems up to N"),
        ("presentation", "module presentation rows up to N"),
    ):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("--N", type=int, required=True)
        c.add_argument("--sub", choices=sorted(SUBSTITUTIONS), default="u=A2")
        c.add_argument("--format", choices=("json", "csv", "text"), default="json")
        c.add_argument("--out", type=str, default=None)

    v = sub.add_parser("verify", help="run the anchored-identity suite")
    v.add_argument("--sub", choices=sorted(SUBSTITUTIONS), default="u=A2")
    v.add_argument("--cap", type=int, default=DEFAULT_STATE_CAP)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out", type=str, default=None)
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _word_command(args) -> int:
    word = parse_word(args.word, args.n)
    rule = SUBSTITUTIONS[args.sub]
    if args.command == "eval":
        vec = evaluate_closure(word, args.cap)
        payload = vec.to_json_dict()
        text = vec.format()
    elif args.command == "reduce":
        vec = algebra_class(word, rule)
        payload = vec.to_json_dict()
        text = vec.format()
    elif args.command == "trace":
        tp = markov_trace(word)
        payload = tp.to_json_dict()
        text = tp.format()
    else:
        tp = bracket_invariant(word)
        payload = tp.to_json_dict()
        text = tp.format()
    _emit(_json(payload) if args.format == "json" else text, args.out)
    return 0


def _system_payload(N: int) -> dict:
    slide_rows = []
    for n in range(1, N + 1):
        row = equation_for(n)
        slide_rows.append(
            {
                "n": n,
                "diagonal": row.diagonal.format(),
                "rhs": row.rhs.to_json_dict(),
            }
        )
    twist_rows = []
    for n in range(0, N + 1):
        for sign in (1, -1):
            eq = twist_equation_for(n, sign)
            twist_rows.append(
                {
                    "n": n,
                    "sign": sign,
                    "difference": eq.cleared().to_json_dict(),
                }
            )
    return {"slide_system": slide_rows, "twist_system": twist_rows}


def _system_csv(N: int) -> str:
    lines = ["n,diagonal,rhs_support,rhs"]
    for n in range(1, N + 1):
        row = equation_for(n)
        support = " ".join(f"t^{k}" for k in row.rhs.support())
        rhs = ";".join(f"t^{k}={c.format()}" for k, c in row.rhs.coeffs)
        lines.append(f"{n},{row.diagonal.format()},{support},{rhs}")
    return "\n".join(lines) + "\n"


def _system_command(args) -> int:
    if args.command == "system":
        if args.format == "csv":
            _emit(_system_csv(args.N), args.out)
            return 0
        payload = _system_payload(args.N)
        if args.format == "json":
            _emit(_json(payload), args.out)
        else:
            lines = []
            for row in payload["slide_system"]:
                lines.append(f"({row['diagonal']}) t^{row['n']} = {row['rhs']}")
            for row in payload["twist_system"]:
                lines.append(
                    f"twist n={row['n']} sign={row['sign']:+d}: {row['difference']} = 0"
                )
            _emit("\n".join(lines), args.out)
        return 0
    pres = build_presentation(args.N)
    if args.format == "csv":
        lines = ["n,annihilator,rhs"]
        for n, diag, rhs in pres.annihilators:
            lines.append(f"{n},{diag.format()},{';'.join(f't^{k}={c.format()}' for k, c in rhs.coeffs)}")
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "json":
        payload = {
            "free_part": list(pres.free_part),
            "torsion_rows": [
                {"n": n, "annihilator": d.format(), "rhs": r.to_json_dict()}
                for n, d, r in pres.annihilators
            ],
            "indexing_note": pres.indexing_note,
        }
        _emit(_json(payload), args.out)
    else:
        _emit(pres.format(), args.out)
    return 0


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------


def _check(report: list, name: str, ok: bool, computed: str, expected: str) -> None:
    report.append(
        {
            "check": name,
            "status": "pass" if ok else "fail",
            "computed": computed,
            "expected": expected,
        }
    )


def verify_suite(rule: SubstitutionRule = U_TO_A_SQUARED, cap: int = DEFAULT_STATE_CAP) -> dict:
    """Run every anchored identity; failures are report content, not errors."""
    from .braid import band_move_word, t_power
    from .coeffs import LaurentPoly, LocalizedCoeff, stabilization_trace_value
    from .tl import TracePolynomial, tl_ideal_element, trace_monomial

    t0 = time.time()
    checks: list[dict] = []

    # Trace golden values.
    z = stabilization_trace_value()
    got = markov_trace(parse_word("s1", 2))
    want = TracePolynomial.constant(z)
    _check(checks, "trace of a single twist equals the stabilization value",
           got == want, got.format(), want.format())

    for n in range(1, 7):
        w = longitude_word(n + 1)
        got = markov_trace(w)
        want = TracePolynomial.from_dict(
            {trace_monomial(*([1] * (n + 1))): LocalizedCoeff.one()}
        )
        _check(checks, f"trace of {n + 1} parallel longitudes is s_1^{n + 1}",
               got == want, got.format(), want.format())

    got = markov_trace(parse_word("t1", 2))
    num = LaurentPoly.from_dict("u", {0: 1, 4: 1})
    want = TracePolynomial.symbol(1, LocalizedCoeff.make(num, 2, 1))
    _check(checks, "trace of the first plain looping element",
           got == want, got.format(), want.format())

    # Twist system anchors.
    for n, sign in ((0, -1), (1, -1)):
        eq = twist_equation_for(n, sign)
        _check(checks, f"twist equation ({n},{sign:+d}) is trivial",
               eq.is_trivial(), eq.difference.format(), "0")
    eq = twist_equation_for(1, 1).cleared()
    target = LaurentPoly.parse("1u^0-1u^2-1u^6+1u^8", "u")
    got_c = eq.coeff((1,))
    ok = (len(eq.support()) == 1 and got_c.num == target
          and got_c.u_pow == 0 and got_c.cyclo_pow == 0)
    _check(checks, "positive twist on the coil factors as (1-u^6)(1-u^2) s_1",
           ok, eq.format(), f"({target.format()}) * s_1")

    # Two-move inequivalence.
    tr_t1 = markov_trace(parse_word("t1", 2))
    forced = TracePolynomial.symbol(1, LocalizedCoeff.make(LaurentPoly.one("u"), 4, 0))
    _check(checks, "hypothetical move-equivalence value differs from the trace",
           tr_t1 != forced, tr_t1.format(), f"anything but {forced.format()}")

    # Elimination.
    rep = eliminate_twist_system(8)
    _check(checks, "negative-twist elimination leaves the unknot symbol and s_1",
           rep.remaining == ("s_0", "s_1"), ", ".join(rep.remaining), "s_0, s_1")

    # Slide system anchors.
    r1 = equation_for(1)
    _check(checks, "slide row 1 reads (1-A^6) t = 0",
           r1.rhs.is_zero() and r1.diagonal == LaurentPoly.parse("1A^0-1A^6", "A"),
           r1.format(), "(A^0-A^6) * t^1  =  0")
    r2 = equation_for(2)
    want_rhs = SkeinVector.from_dict({0: LaurentPoly.parse("-1A^8+1A^12", "A")})
    _check(checks, "slide row 2 reads (1-A^8) t^2 = -A^8 (1-A^4)",
           r2.rhs == want_rhs and r2.diagonal == LaurentPoly.parse("1A^0-1A^8", "A"),
           r2.format(), "(A^0-A^8) * t^2  =  (-A^8+A^12) * t^0")

    diag_ok, par_ok = True, True
    for n in range(1, 9):
        row = equation_for(n)
        diag_ok &= row.diagonal == LaurentPoly.one("A") - LaurentPoly.monomial("A", 2 * n + 4)
        par_ok &= all((k - n) % 2 == 0 for k in row.rhs.support())
    _check(checks, "slide diagonals are 1-A^(2n+4) with parity-correct rows (n <= 8)",
           diag_ok and par_ok, "computed rows 1..8", "diagonal and parity laws")

    cross_ok = True
    for n in range(1, 5):
        ra, rd = equation_for(n, "algebra"), equation_for(n, "diagram", cap)
        cross_ok &= ra.diagonal == rd.diagonal and ra.rhs == rd.rhs
    _check(checks, "slide rows agree between conversion and state sum (n <= 4)",
           cross_ok, "rows compared exactly", "equality")

    # Slide-image leading coefficients.
    lead_ok = True
    for n in range(1, 11):
        e = slide_image_expansion(n)
        lead_ok &= e[n] == LaurentPoly.monomial("A", 4 * n - 4, (-1) ** (n - 1))
    _check(checks, "slide images have leading coefficient (-1)^(n-1) A^(4n-4) (n <= 10)",
           lead_ok, "expansions 1..10", "leading law")

    # Cross-path families.
    families: list[tuple[str, MixedBraidWord, bool]] = []
    for n in range(0, 5):
        families.append((f"t^{n}", t_power(1, n), True))
    for n in range(1, 4):
        for s in (1, -1):
            families.append((f"t_1^{n} twist {s:+d}", band_move_word(n, s), n <= 2))
    for k in range(1, 4):
        for m in range(1, 4):
            families.append((f"t^{k} t'_1^{m}", parse_word(f"t^{k} t1'^{m}", 2), True))
    for m in range(0, 5):
        families.append((f"longitudes^{m}", longitude_word(m), True))
    for label, word, expected_ok in families:
        dia = evaluate_closure(word, cap)
        alg = algebra_class(word, rule)
        factor = dia.monomial_ratio(alg)
        ok = factor is not None
        name = f"cross-path [{rule.name}] {label}"
        if expected_ok:
            _check(checks, name, ok, f"factor {factor.format()}" if ok else "no monomial factor",
                   "single monomial factor")
        else:
            _check(
                checks,
                name + " (documented model defect: winding merge is not isotopy-"
                "invariant on this configuration class; see ledger)",
                ok,
                f"factor {factor.format()}" if ok else "paths diverge non-monomially",
                "single monomial factor",
            )

    # Ideal vanishing under the rescaled state sum.  The quadratic relation
    # leaves the root pairing of u against the crossing eigenvalues {A^2,
    # -A^-2} ambiguous; the pairing that kills the ideal (and matches the
    # stabilization value) images u^k as (-1)^k A^(-2k) against the crossing
    # rescale A^e, i.e. a net (-A^-1)^e weight on an e-letter word.
    elt = tl_ideal_element(1, 3)
    total = SkeinVector.zero()
    for mono, coeff in elt.terms:
        word = MixedBraidWord(3, mono.tail)
        e = len(mono.tail)
        weight = LaurentPoly.monomial("A", -e, (-1) ** e)
        total = total + evaluate_closure(word, cap).scale(weight)
    _check(checks, "six-term ideal element vanishes under the rescaled state sum",
           total.is_zero(), total.format(), "0")

    # Curl and framing.
    got = evaluate_closure(parse_word("s1", 2), cap)
    want_curl = SkeinVector.from_dict({0: LaurentPoly.monomial("A", 3, -1)})
    _check(checks, "single twist closure is -A^3 times the unknot",
           got == want_curl, got.format(), want_curl.format())
    from .coeffs import loop_value

    w = parse_word("t s1 t s1^-1", 2)
    padded = w.on_strands(3)
    _check(checks, "a disjoint strand multiplies by the loop value",
           evaluate_closure(padded, cap) == evaluate_closure(w, cap).scale(loop_value()),
           "padded closure", "loop value times closure")

    # Torsion generators comparison.
    cmp = torsion_ideal_comparison(rule)
    _check(checks, "twist torsion generator lies in the slide torsion ideal (not conversely)",
           bool(cmp["twist_in_slide_ideal"]) and not bool(cmp["slide_in_twist_ideal"]),
           json.dumps(cmp, sort_keys=True), "one-way containment")

    # Presentation.
    pres = build_presentation(8)
    _check(checks, "presentation(8): free part {t^0} and diagonals 1-A^(2n+4)",
           pres.free_part == ("t^0",) and len(pres.annihilators) == 8,
           pres.format().splitlines()[0], "free part: t^0")

    passed = sum(1 for c in checks if c["status"] == "pass")
    return {
        "substitution": rule.name,
        "elapsed_seconds": round(time.time() - t0, 3),
        "passed": passed,
        "failed": len(checks) - passed,
        "checks": checks,
    }


def _verify_command(args) -> int:
    rule = SUBSTITUTIONS[args.sub]
    report = verify_suite(rule, args.cap)
    if args.format == "json":
        _emit(_json(report), args.out)
    else:
        lines = []
        for c in report["checks"]:
            lines.append(f"[{c['status'].upper():4s}] {c['check']}")
            if c["status"] == "fail":
                lines.append(f"        computed: {c['computed']}")
                lines.append(f"        expected: {c['expected']}")
        lines.append(
            f"{report['passed']} passed, {report['failed']} failed "
            f"({report['elapsed_seconds']}s, substitution {report['substitution']})"
        )
        _emit("\n".join(lines), args.out)
    return 0 if report["failed"] == 0 else 1


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return 2 if ex.code not in (0, None) else 0
    try:
        if args.command in ("eval", "reduce", "trace", "invariant"):
            return _word_command(args)
        if args.command in ("system", "presentation"):
            return _system_command(args)
        return _verify_command(args)
    except (UnsupportedWordError, StateCapExceeded, MixedSignPassesError) as ex:
        sys.stderr.write(f"domain error: {ex}\n")
        return 1
    except (ParseError, ValueError) as ex:
        sys.stderr.write(f"usage error: {ex}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
