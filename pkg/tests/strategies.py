"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st


def monomials(ring, max_deg=4):
    """A monomial as a multiset of at most ``max_deg`` variable indices."""

    def build(idx):
        exps = [0] * ring.n
        for i in idx:
            exps[i] += 1
        return ring.monomial(exps)

    return st.lists(st.integers(0, ring.n - 1), max_size=max_deg).map(build)


def polys(ring, max_terms=6, max_deg=4):
    return st.lists(monomials(ring, max_deg), max_size=max_terms).map(
        lambda ms: ring.poly(set(ms))
    )


def homogeneous_polys(ring, degree, max_terms=6):
    def build(idx_lists):
        out = set()
        for idx in idx_lists:
            exps = [0] * ring.n
            for i in idx:
                exps[i] += 1
            out ^= {ring.monomial(exps)}
        return ring.poly(out)

    term = st.lists(st.integers(0, ring.n - 1), min_size=degree, max_size=degree)
    return st.lists(term, max_size=max_terms).map(build)
