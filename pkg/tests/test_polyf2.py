from math import comb

import pytest
from hypothesis import given, strategies as st

from gf2inv import reference as ref
from gf2inv.gf2core import BitMatrix, closure_from_generators, sylow_subgroup
from gf2inv.polyf2 import (
    M_RING,
    W_RING,
    WPRIME_RING,
    LinearVariableMap,
    PolyRing,
    PolynomialSyntaxError,
    act,
    count_monomials,
    format_polynomial,
    invariant_component,
    is_invariant,
    orbit_sums,
    parse_polynomial,
    relative_reynolds,
    substitute,
)
from strategies import polys

F1_TEXT = "a*e + b*f + c*d + d*e + d*f + e*f + d^2 + e^2 + f^2"


# -- arithmetic and parsing ---------------------------------------------------


def test_addition_is_symmetric_difference():
    x, y = M_RING.var("x"), M_RING.var("y")
    assert (x + y) + y == x
    assert x + x == M_RING.zero


def test_frobenius():
    x, y, z = M_RING.gens()
    p = x + y * z
    assert p * p == x ** 2 + y ** 2 * z ** 2
    assert p.square() == p * p


def test_parse_examples():
    f1 = WPRIME_RING.parse(F1_TEXT)
    assert len(f1) == 9
    assert f1 == ref.quadratic_form()
    assert WPRIME_RING.parse("0") == WPRIME_RING.zero
    assert format_polynomial(WPRIME_RING.zero) == "0"
    assert WPRIME_RING.parse("1") == WPRIME_RING.one


def test_parse_printed_fhat3():
    hat = ref.primary_hat()
    f3 = parse_polynomial(W_RING, ref.PRIMARY_HAT_TEXT[3])
    assert f3 == hat[3] and len(f3) == 7


@pytest.mark.parametrize(
    "text, pos",
    [("a + + b", 4), ("a*q", 2), ("a^", 2), ("a b", 2), ("", 0)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(PolynomialSyntaxError) as info:
        WPRIME_RING.parse(text)
    assert info.value.position == pos


@given(polys(WPRIME_RING))
def test_format_parse_roundtrip(p):
    assert WPRIME_RING.parse(format_polynomial(p)) == p


def test_format_is_grevlex_descending():
    p = M_RING.parse("z + x*y + x^2 + y^3")
    assert str(p) == "y^3 + x^2 + x*y + z"


# -- actions ----------------------------------------------------------------


def test_identity_action():
    p = WPRIME_RING.parse(F1_TEXT)
    assert act(p, BitMatrix.identity(6)) == p


def test_action_arity_mismatch():
    with pytest.raises(ValueError, match="arity"):
        act(M_RING.var("x"), BitMatrix.identity(6))


def test_calibration_quadratic_form(mats):
    f1 = ref.quadratic_form()
    assert act(f1, mats["DWd_A"]) == f1
    assert act(f1, mats["DWd_B"]) == f1


def test_calibration_klein_twist(mats):
    ck = ref.klein_twist()
    assert act(ck, mats["A3"]) == ck
    assert act(ck, mats["B3"]) == ck


def test_calibration_primary_hat(setting):
    for f in ref.primary_hat():
        assert is_invariant(f, setting.w.group)


# -- components and orbit sums -----------------------------------------------


def test_component_examples(setting):
    assert len(invariant_component(setting.wpp.group, M_RING, 4)) == 1
    deg2 = invariant_component(setting.wp.group, WPRIME_RING, 2)
    assert list(deg2) == [ref.quadratic_form()]
    dims = [len(invariant_component(setting.wp.group, WPRIME_RING, d)) for d in range(8)]
    assert dims == [1, 0, 1, 2, 3, 4, 8, 10]


@pytest.mark.parametrize("n, d", [(3, 4), (6, 2), (7, 3)])
def test_trivial_group_component(n, d):
    ring = PolyRing([f"v{i}" for i in range(n)])
    trivial = closure_from_generators([BitMatrix.identity(n)])
    assert len(invariant_component(trivial, ring, d)) == comb(n + d - 1, d) == count_monomials(n, d)


def test_component_bounds(setting):
    with pytest.raises(ValueError):
        invariant_component(setting.wp.group, WPRIME_RING, -1)
    with pytest.raises(ValueError, match="cap"):
        invariant_component(setting.wp.group, WPRIME_RING, 26)


def test_orbit_sums_on_w(setting):
    hat = ref.primary_hat()
    assert orbit_sums(setting.w.group, W_RING, 1) == [hat[0]]
    deg3 = orbit_sums(setting.w.group, W_RING, 3)
    assert len(deg3) == 4
    by_size = {len(p): p for p in deg3}
    assert by_size[7] == hat[3]
    assert by_size[28] == hat[2]


def test_orbit_sums_trivial_group():
    trivial = closure_from_generators([BitMatrix.identity(3)])
    sums = orbit_sums(trivial, M_RING, 2)
    assert len(sums) == 6 and all(len(p) == 1 for p in sums)


def test_orbit_sums_need_permutations(setting):
    with pytest.raises(ValueError, match="invariant_component"):
        orbit_sums(setting.wp.group, WPRIME_RING, 2)


# -- relative Reynolds ---------------------------------------------------------


def test_reynolds_projection(setting):
    g, d = setting.wp.group, setting.sylow.group
    for p in setting.wp.component(4):
        assert relative_reynolds(d, g, p) == p
    # D-invariants of degree 2 land in the span of f1
    f1 = ref.quadratic_form()
    for p in setting.sylow.component(2):
        assert relative_reynolds(d, g, p) in (WPRIME_RING.zero, f1)


def test_reynolds_errors(setting):
    g = setting.wp.group
    a = WPRIME_RING.var("a")
    with pytest.raises(ValueError, match="not invariant"):
        relative_reynolds(setting.sylow.group, g, a)
    trivial = closure_from_generators([BitMatrix.identity(6)])
    with pytest.raises(ValueError, match="index not invertible"):
        relative_reynolds(trivial, g, a)
    with pytest.raises(ValueError, match="index not invertible"):
        relative_reynolds(sylow_subgroup(g, 3), g, WPRIME_RING.one)


# -- substitution ---------------------------------------------------------------


def test_restriction_examples(setting):
    hat = ref.primary_hat()
    assert setting.restriction(hat[0]) == WPRIME_RING.zero
    assert setting.restriction(hat[1]) == ref.quadratic_form()
    assert setting.quotient(ref.quadratic_form()) == M_RING.zero


def test_substitute_arity_mismatch(setting):
    with pytest.raises(ValueError, match="arity"):
        substitute(setting.quotient, M_RING.var("x"))


def test_linear_map_rejects_nonlinear_images():
    with pytest.raises(ValueError, match="linear"):
        LinearVariableMap(M_RING, M_RING, (M_RING.var("x") ** 2, M_RING.var("y"), M_RING.var("z")))


@given(polys(W_RING), polys(W_RING))
def test_substitution_is_homomorphism(setting, p, q):
    r = setting.restriction
    assert r(p + q) == r(p) + r(q)
    assert r(p * q) == r(p) * r(q)


@given(polys(W_RING), st.integers(0, 4))
def test_substitution_preserves_degree(setting, p, d):
    image = setting.restriction(p.homogeneous_part(d))
    assert not image.terms or (image.is_homogeneous() and image.degree() == d)
