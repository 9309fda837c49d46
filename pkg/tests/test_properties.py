"""Property suites that hold independently of any printed data."""
import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from gf2inv.groebner import groebner_basis
from gf2inv.hilbert import expand, molien_permutation
from gf2inv.polyf2 import M_RING, W_RING, WPRIME_RING, act, is_invariant, orbit_sums, relative_reynolds
from strategies import homogeneous_polys, polys

RANDOM_TRIPLES = 200
GB_PERMUTATIONS = 10


# -- Molien series against orbit counts ---------------------------------------------


@pytest.mark.parametrize("which", ["G", "D"])
def test_molien_counts_monomial_orbits(setting, which):
    sub = None if which == "G" else setting.sylow.group
    census = setting.census(sub)
    series = molien_permutation(census)
    if sub is None:
        perm_group = setting.w.group
    else:
        perm_group = [setting.to_perm[g] for g in sub.generators]
    counts = [len(orbit_sums(perm_group, W_RING, d)) for d in range(11)]
    assert expand(series, 10) == counts


# -- relative Reynolds ---------------------------------------------------------------


@settings(max_examples=30)
@given(st.integers(2, 6), st.integers(1, 2 ** 12))
def test_reynolds_is_idempotent(setting, d, mask):
    basis = setting.sylow.component(d)
    p = WPRIME_RING.zero
    for i, b in enumerate(basis):
        if mask >> i & 1:
            p = p + b
    g, sub = setting.wp.group, setting.sylow.group
    r = relative_reynolds(sub, g, p)
    assert is_invariant(r, g)
    # odd index: averaging a G-invariant multiplies it by 21 = 1
    assert relative_reynolds(sub, g, r) == r


# -- the action is a homomorphism --------------------------------------------------


def _random_poly(ring, rng, terms=5, max_deg=4):
    monos = [m for d in range(max_deg + 1) for m in ring.monomials_of_degree(d)]
    return ring.poly({rng.choice(monos) for _ in range(terms)})


@pytest.mark.parametrize("module", ["wp", "w", "wpp"])
def test_action_homomorphism_random_triples(setting, module):
    amb = getattr(setting, module)
    rng = random.Random(2024)
    elems = amb.group.elements
    for _ in range(RANDOM_TRIPLES):
        p, q = _random_poly(amb.ring, rng), _random_poly(amb.ring, rng)
        g, h = rng.choice(elems), rng.choice(elems)
        assert act(act(p, g), h) == act(p, g @ h)
        assert act(p + q, g) == act(p, g) + act(q, g)
        assert act(p * q, g) == act(p, g) * act(q, g)


@given(polys(M_RING, max_deg=5))
def test_identity_acts_trivially(setting, p):
    assert act(p, setting.wpp.group.identity()) == p


# -- reduced Groebner bases -------------------------------------------------------


def test_reduced_basis_unique_under_permutation(setting):
    gens = [setting.wp.component(d)[0] for d in (2, 3, 4, 5)]
    reference = groebner_basis(gens).generators
    orders = list(permutations(range(len(gens))))
    random.Random(7).shuffle(orders)
    for order in orders[:GB_PERMUTATIONS]:
        assert groebner_basis([gens[i] for i in order]).generators == reference


@given(st.lists(homogeneous_polys(WPRIME_RING, 2, max_terms=5), min_size=2, max_size=4),
       st.randoms(use_true_random=False))
def test_random_reduced_basis_unique(gens, rnd):
    reference = groebner_basis(gens).generators
    for _ in range(GB_PERMUTATIONS):
        shuffled = list(gens)
        rnd.shuffle(shuffled)
        assert groebner_basis(shuffled).generators == reference


# -- decomposition round trips ------------------------------------------------------


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(1, 5), st.integers(0, 2 ** 12)), min_size=1, max_size=2))
def test_decomposition_roundtrip(pipeline, factors):
    pres = pipeline.presentation
    sylow = pipeline.setting.sylow
    p = WPRIME_RING.one
    for d, mask in factors:
        basis = sylow.component(d)
        p = p * sum((b for i, b in enumerate(basis) if mask >> i & 1), WPRIME_RING.zero)
    if p.is_zero():
        return
    expr = pres.decompose(p)
    assert pres.evaluate(expr) == p
    assert pres.decompose(pres.evaluate(expr)) == expr


def test_g_invariants_roundtrip(pipeline):
    pres = pipeline.presentation
    for d in range(2, 8):
        for p in pipeline.setting.wp.component(d):
            assert pres.evaluate(pres.decompose(p)) == p
