import pytest

from kbsm.basis import (
    SkeinVector,
    coil_poly,
    coil_product,
    merge_components,
    parallel_power,
)
from kbsm.coeffs import LaurentPoly, loop_value


def P(text):
    return LaurentPoly.parse(text, "A")


def test_two_longitudes_anchor():
    assert parallel_power(2).to_json_dict() == {"t^2": "-A^-2", "t^0": "-A^2"}


def test_parallel_power_leading_terms_and_parity():
    for m in range(1, 9):
        v = parallel_power(m)
        lead = v.coeff(m)
        assert lead == LaurentPoly.monomial("A", -2 * (m - 1), (-1) ** (m - 1))
        assert all((k - m) % 2 == 0 for k in v.support())


def test_coil_poly_leading_coefficients():
    for n in range(1, 9):
        poly = dict(coil_poly(n))
        assert poly[n] == LaurentPoly.monomial("A", 2 * (n - 1), (-1) ** (n - 1))


def test_merge_examples():
    delta = loop_value()
    assert merge_components((1,), 1) == SkeinVector.basis(1, delta)
    assert merge_components((1, 1), 0).to_json_dict() == {
        "t^2": "-A^-2",
        "t^0": "-A^2",
    }
    assert merge_components((), 1) == SkeinVector.basis(0)
    # all-contractible diagrams carry delta^(count-1) on the unknot
    assert merge_components((), 3) == SkeinVector.basis(0, delta * delta)


def test_coil_product_pair_rule():
    # x * tau_k = -A^-2 tau_{k+1} - A^2 tau_{k-1}
    for k in range(1, 6):
        got = coil_product((k, 1))
        want = SkeinVector.from_dict(
            {k + 1: P("-1A^-2"), k - 1: P("-1A^2")}
        )
        assert got == want


def test_merge_is_order_insensitive():
    a = merge_components((3, 1, 2), 1)
    b = merge_components((1, 2, 3), 1)
    c = merge_components((2, 3, 1), 1)
    assert a == b == c


def test_rejects_nonpositive_windings():
    with pytest.raises(ValueError):
        merge_components((0,), 0)
    with pytest.raises(ValueError):
        SkeinVector.from_dict({-1: P("1A^0")})
