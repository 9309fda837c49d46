from math import comb

import pytest
from hypothesis import given, strategies as st

from gf2inv import reference as ref
from gf2inv.gf2core import closure_from_generators, permutation_on_basis
from gf2inv.hilbert import (
    CycleTypeCensus,
    IncompatibleDegrees,
    IntegerPolynomial,
    RationalSeries,
    expand,
    molien_permutation,
    numerator_for_degrees,
    secondary_profile,
    strip_trivial_summand,
)

PRINTED = RationalSeries.of(ref.HILBERT_NUMERATOR, ref.HILBERT_DENOMINATOR)
PRINTED_ALT = RationalSeries.of(ref.ALT_HILBERT_NUMERATOR, ref.ALT_HILBERT_DENOMINATOR)
TRIVIAL7 = CycleTypeCensus.from_mapping({(1,) * 7: 1})


# -- integer polynomials --------------------------------------------------------


def test_trimmed_and_printed():
    p = IntegerPolynomial([1, 0, 2, 0, 0])
    assert p.coeffs == (1, 0, 2)
    assert str(p) == "1 + 2*t^2"
    assert str(IntegerPolynomial()) == "0"
    assert str(IntegerPolynomial([0, -1, 3])) == "-t + 3*t^2"


coeff_lists = st.lists(st.integers(-20, 20), max_size=8)


@given(coeff_lists, st.integers(1, 6))
def test_exact_division_roundtrip(c, d):
    p = IntegerPolynomial(c)
    div = IntegerPolynomial.one_minus_t_pow(d)
    q, r = (p * div).divmod_exact(div)
    assert q == p and not r


@given(coeff_lists, coeff_lists)
def test_ring_laws(a, b):
    p, q = IntegerPolynomial(a), IntegerPolynomial(b)
    assert p * q == q * p
    assert (p + q) - q == p
    assert (p * q).evaluate(2) == p.evaluate(2) * q.evaluate(2)


def test_exact_div_by_integer():
    assert IntegerPolynomial([4, 8]).exact_div(4) == IntegerPolynomial([1, 2])
    with pytest.raises(ArithmeticError):
        IntegerPolynomial([3]).exact_div(2)


# -- series -------------------------------------------------------------------


def test_cross_multiplication_equality():
    a = RationalSeries.of([1], [1])
    b = RationalSeries.of([1, 1], [2])
    assert a == b and hash(a) == hash(b)
    assert RationalSeries.of([1], [1, 1]) != a


def test_printed_forms_agree():
    assert PRINTED == PRINTED_ALT


def test_series_text():
    assert str(RationalSeries.of([1, 0, 0, 2], [1, 2])) == "(1 + 2*t^3)/((1-t)*(1-t^2))"


def test_trivial_molien():
    series = molien_permutation(TRIVIAL7)
    assert series == RationalSeries.of([1], [1] * 7)
    assert expand(series, 2)[2] == 28


def test_cyclic_molien_is_necklace_count(mats):
    c = closure_from_generators([mats["DW_C"]])
    census = CycleTypeCensus.from_image(permutation_on_basis(c, list(mats["OMEGA"].data)))
    coeffs = expand(molien_permutation(census), 10)
    assert coeffs[2] == 4
    # necklaces: (C(d+6, d) + 6 * [7 | d]) / 7
    assert coeffs == [(comb(d + 6, d) + (6 if d % 7 == 0 else 0)) // 7 for d in range(11)]


def test_g_series_matches_printed(setting):
    full = molien_permutation(setting.census())
    assert expand(full, 4) == [1, 1, 2, 4, 7]
    stripped = strip_trivial_summand(full)
    assert stripped == PRINTED
    assert expand(stripped, 7) == [1, 0, 1, 2, 3, 4, 8, 10]


def test_strip_examples(setting):
    assert strip_trivial_summand(RationalSeries.of([1], [1])) == RationalSeries.of([1], [])
    d_full = molien_permutation(setting.census(setting.sylow.group))
    assert strip_trivial_summand(d_full) == setting.hilbert_series(setting.sylow.group)
    assert strip_trivial_summand(RationalSeries.of([1], [2])) == RationalSeries.of([1, -1], [2])


def test_expand_bounds():
    with pytest.raises(ValueError):
        expand(PRINTED, 65)
    assert len(expand(PRINTED, 64)) == 65


def test_census_validation():
    with pytest.raises(ValueError, match="sum to the group order"):
        CycleTypeCensus(3, 2, (((1, 1, 1), 1),))
    with pytest.raises(ValueError, match="bad census entry"):
        CycleTypeCensus.from_mapping({(1, 1, 1): 1, (2,): 1})


# -- numerators and profiles ------------------------------------------------------


def test_numerators_for_printed_degrees():
    num = numerator_for_degrees(PRINTED, ref.PRIMARY_DEGREES)
    assert str(num) == ("1 + t^4 + 2*t^5 + t^6 + t^7 + t^8 + 2*t^9 + 2*t^10 + t^11 + t^12 + t^13 "
                        "+ 2*t^14 + t^15 + t^19")
    alt = numerator_for_degrees(PRINTED, (2, 3, 3, 4, 4, 7))
    assert str(alt) == "1 + 2*t^5 + 2*t^6 + t^7 + t^10 + 2*t^11 + 2*t^12 + t^17"
    assert numerator_for_degrees(RationalSeries.of([1], [1, 1]), (1, 1)) == IntegerPolynomial([1])


def test_incompatible_degrees():
    with pytest.raises(IncompatibleDegrees, match="incompatible with free-module structure"):
        numerator_for_degrees(PRINTED, (2, 3, 3, 4, 6))
    with pytest.raises(IncompatibleDegrees):
        numerator_for_degrees(RationalSeries.of([1], [2]), (1,))


def test_secondary_profiles(setting):
    s, degs = secondary_profile(numerator_for_degrees(PRINTED, ref.PRIMARY_DEGREES))
    assert (s, tuple(degs)) == (18, ref.SECONDARY_DEGREES)
    assert secondary_profile(IntegerPolynomial([1])) == (1, [0])
    d_num = numerator_for_degrees(setting.hilbert_series(setting.sylow.group), ref.SYLOW_PRIMARY_DEGREES)
    s, degs = secondary_profile(d_num)
    assert (s, tuple(degs)) == (4, ref.SYLOW_SECONDARY_DEGREES)
    # product criterion bookkeeping for the Sylow subgroup
    assert s * 8 == 1 * 1 * 2 * 2 * 2 * 4
    with pytest.raises(ValueError, match="negative"):
        secondary_profile(IntegerPolynomial([1, -1]))
