from kbsm.annular import evaluate_closure
from kbsm.basis import SkeinVector
from kbsm.coeffs import LaurentPoly, U_TO_A_SQUARED
from kbsm.system import (
    slide_image,
    build_presentation,
    eliminate_twist_system,
    equation_for,
    longitude_word,
    reduce_modulo_rows,
    longitude_power_class,
    torsion_ideal_comparison,
    twist_equation_for,
    slide_image_expansion,
)


def A(text):
    return LaurentPoly.parse(text, "A")


def test_band_move_images():
    assert slide_image(1).as_dict() == {(1, 0): A("1A^6")}
    assert slide_image(2).as_dict() == {(2, 0): A("1A^6")}
    # the n = 0 slide image is the identity: the unknot equation is free
    assert slide_image(0).as_dict() == {(0, 0): A("1A^0")}


def test_slide_image_expansions():
    assert slide_image_expansion(1) == {1: A("1A^0")}
    assert slide_image_expansion(2) == {2: A("-1A^4"), 0: A("-1A^2")}
    assert slide_image_expansion(3) == {3: A("1A^8"), 1: A("1A^6-1A^8")}


def test_slide_image_leading_law():
    for n in range(1, 11):
        e = slide_image_expansion(n)
        assert e[n] == LaurentPoly.monomial("A", 4 * n - 4, (-1) ** (n - 1))
        assert all((m - n) % 2 == 0 for m in e)


def test_longitude_conversion_against_state_sum():
    assert longitude_power_class(0) == SkeinVector.basis(0)
    assert longitude_power_class(1) == SkeinVector.basis(1)
    assert longitude_power_class(2).to_json_dict() == {"t^2": "-A^-2", "t^0": "-A^2"}
    for m in range(5):
        assert longitude_power_class(m) == evaluate_closure(longitude_word(m))
    lead = longitude_power_class(3).coeff(3)
    assert lead == A("1A^-4")


def test_equation_rows_anchored():
    r1 = equation_for(1)
    assert r1.diagonal == A("1A^0-1A^6")
    assert r1.rhs.is_zero()
    r2 = equation_for(2)
    assert r2.diagonal == A("1A^0-1A^8")
    assert r2.rhs == SkeinVector.from_dict({0: A("-1A^8+1A^12")})
    r3 = equation_for(3)
    assert r3.diagonal == A("1A^0-1A^10")
    assert r3.rhs == SkeinVector.from_dict({1: A("1A^12+1A^14+1A^18")})


def test_equation_rows_diagonal_and_parity():
    for n in range(1, 9):
        row = equation_for(n)
        assert row.diagonal == LaurentPoly.one("A") - LaurentPoly.monomial("A", 2 * n + 4)
        for k in row.rhs.support():
            assert k < n and (k - n) % 2 == 0


def test_equation_rows_cross_path():
    for n in range(1, 5):
        ra = equation_for(n, "algebra")
        rd = equation_for(n, "diagram")
        assert ra.diagonal == rd.diagonal
        assert ra.rhs == rd.rhs


def test_twist_equations_free_rows():
    assert twist_equation_for(0, -1).is_trivial()
    assert twist_equation_for(1, -1).is_trivial()


def test_twist_equation_torsion_factorization():
    eq = twist_equation_for(1, 1).cleared()
    assert eq.support() == ((1,),)
    c = eq.coeff((1,))
    assert c.u_pow == 0 and c.cyclo_pow == 0
    target = LaurentPoly.parse("1u^0-1u^6", "u") * LaurentPoly.parse("1u^0-1u^2", "u")
    assert c.num == target


def test_twist_equation_even_row_support():
    eq = twist_equation_for(2, -1)
    assert eq.difference.support() == ((), (2,))
    eq3 = twist_equation_for(3, -1)
    assert eq3.difference.support() == ((1,), (3,))


def test_elimination_leaves_unknot_and_coil():
    rep = eliminate_twist_system(8)
    assert rep.remaining == ("s_0", "s_1")
    for n in range(2, 9):
        expr = rep.expressions[n]
        assert set(expr) <= {0, 1}
        assert set(expr) == {n % 2}
    # first even row: s_2 = u^6 s_0
    s2 = rep.expressions[2]
    assert s2[0].as_poly() == LaurentPoly.monomial("u", 6)


def test_presentation_structure():
    pres = build_presentation(8)
    assert pres.free_part == ("t^0",)
    assert [n for n, _, _ in pres.annihilators] == list(range(1, 9))
    for n, diag, _ in pres.annihilators:
        assert diag == LaurentPoly.one("A") - LaurentPoly.monomial("A", 2 * n + 4)
    assert "i = 0" in pres.indexing_note


def test_quotient_projection_of_odd_powers():
    rows = build_presentation(8).rows
    for k in range(1, 4):
        reduced = reduce_modulo_rows(SkeinVector.basis(2 * k + 1), rows)
        assert set(reduced) <= {1}, reduced


def test_even_powers_reduce_to_unknot():
    rows = build_presentation(8).rows
    for k in range(1, 4):
        reduced = reduce_modulo_rows(SkeinVector.basis(2 * k), rows)
        assert set(reduced) <= {0}, reduced


def test_torsion_ideal_comparison():
    cmp = torsion_ideal_comparison(U_TO_A_SQUARED)
    assert cmp["twist_in_slide_ideal"] is True
    assert cmp["slide_in_twist_ideal"] is False
    assert cmp["slide_generator"] == "A^0-A^6"
    assert cmp["twist_generator"] == "A^0-A^4-A^12+A^16"
