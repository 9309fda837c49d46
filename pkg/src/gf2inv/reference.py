"""Published reference objects used for cross-checks, in canonical variable names.

``w1..w7`` are coordinates for the permuted basis of the 7-dimensional
coefficient module, ``a..f`` coordinates on its 6-dimensional submodule, and
``x, y, z`` coordinates on the natural 3-dimensional module.
"""

from __future__ import annotations

from .polyf2 import M_RING, W_RING, WPRIME_RING, Polynomial

PRIMARY_HAT_TEXT = (
    "w1 + w2 + w3 + w4 + w5 + w6 + w7",
    "w1*w2 + w1*w3 + w1*w4 + w1*w5 + w1*w6 + w1*w7 + w2*w3 + w2*w4 + w2*w5 + w2*w6 + w2*w7"
    " + w3*w4 + w3*w5 + w3*w6 + w3*w7 + w4*w5 + w4*w6 + w4*w7 + w5*w6 + w5*w7 + w6*w7",
    "w1*w2*w3 + w1*w2*w4 + w1*w2*w5 + w1*w2*w7 + w1*w3*w4 + w1*w3*w5 + w1*w3*w6 + w1*w4*w6"
    " + w1*w4*w7 + w1*w5*w6 + w1*w5*w7 + w1*w6*w7 + w2*w3*w5 + w2*w3*w6 + w2*w3*w7 + w2*w4*w5"
    " + w2*w4*w6 + w2*w4*w7 + w2*w5*w6 + w2*w6*w7 + w3*w4*w5 + w3*w4*w6 + w3*w4*w7 + w3*w5*w7"
    " + w3*w6*w7 + w4*w5*w6 + w4*w5*w7 + w5*w6*w7",
    "w1*w2*w6 + w1*w3*w7 + w1*w4*w5 + w2*w3*w4 + w2*w5*w7 + w3*w5*w6 + w4*w6*w7",
    "w1*w2*w3*w5 + w1*w2*w4*w7 + w1*w3*w4*w6 + w1*w5*w6*w7 + w2*w3*w6*w7 + w2*w4*w5*w6"
    " + w3*w4*w5*w7",
    "w1*w2*w3*w4*w5*w6 + w1*w2*w3*w4*w5*w7 + w1*w2*w3*w4*w6*w7 + w1*w2*w3*w5*w6*w7"
    " + w1*w2*w4*w5*w6*w7 + w1*w3*w4*w5*w6*w7 + w2*w3*w4*w5*w6*w7",
    "w1*w2*w3*w4*w5*w6*w7",
)
PRIMARY_HAT_DEGREES = (1, 2, 3, 3, 4, 6, 7)
PRIMARY_DEGREES = (2, 3, 3, 4, 6, 7)

QUADRATIC_FORM_TEXT = "a*e + b*f + c*d + d*e + d*f + e*f + d^2 + e^2 + f^2"

DICKSON_TEXT = {
    "c2": "x^4 + y^4 + z^4 + x^2*y^2 + x^2*z^2 + y^2*z^2 + x^2*y*z + x*y^2*z + x*y*z^2",
    "c1": "x^4*y^2 + x^2*y^4 + x^4*z^2 + x^2*z^4 + y^4*z^2 + y^2*z^4 + x^4*y*z + x*y^4*z"
    " + x*y*z^4 + x^2*y^2*z^2",
    "c0": "x^4*y^2*z + x^4*y*z^2 + x^2*y^4*z + x*y^4*z^2 + x^2*y*z^4 + x*y^2*z^4",
}

# x^4+y^4+z^4+(xy)^2+(yz)^2+(zx)^2+xyz(x+y+z), expanded
KLEIN_TWIST_TEXT = "x^4 + y^4 + z^4 + x^2*y^2 + y^2*z^2 + x^2*z^2 + x^2*y*z + x*y^2*z + x*y*z^2"

HILBERT_NUMERATOR = (1, 0, 0, 0, 1, 2, 1, 1, 1, 2, 2, 1, 1, 1, 2, 1, 0, 0, 0, 1)
HILBERT_DENOMINATOR = (2, 3, 3, 4, 6, 7)
ALT_HILBERT_NUMERATOR = (1, 0, 0, 0, 0, 2, 2, 1, 0, 0, 1, 2, 2, 0, 0, 0, 0, 1)
ALT_HILBERT_DENOMINATOR = (2, 3, 3, 4, 4, 7)

SECONDARY_DEGREES = (0, 4, 5, 5, 6, 7, 8, 9, 9, 10, 10, 11, 12, 13, 14, 14, 15, 19)
GENERATOR_SECONDARY_DEGREES = (0, 4, 5, 5, 6, 7)

# g_k = product of earlier g's (1-based indices), with degrees
PRODUCT_TABLE = {
    7: ((2, 2), 8),
    8: ((2, 3), 9),
    9: ((2, 4), 9),
    10: ((2, 5), 10),
    11: ((3, 4), 10),
    12: ((2, 6), 11),
    13: ((2, 2, 2), 12),
    14: ((2, 2, 3), 13),
    15: ((2, 2, 5), 14),
    16: ((2, 3, 4), 14),
    17: ((2, 2, 6), 15),
    18: ((2, 2, 2, 6), 19),
}

SYLOW_PRIMARY_DEGREES = (1, 1, 2, 2, 2, 4)
SYLOW_SECONDARY_DEGREES = (0, 3, 3, 6)

# Action of the two generators on the 7 basis vectors, 1-based cycle notation.
PERMUTATION_A = "(1,4)(2,7)"
PERMUTATION_B = "(2,4,3)(5,7,6)"

# Relation presentation of the Sylow-2 invariants (informational only: it
# depends on a particular, unpublished choice of generators).
SYLOW_RELATIONS_TEXT = (
    "(F1+F2)^2(F1F2F4+F3F5+F4^2+F4F5) + (F3+F4)F5^2 + (F1^3+F1F2^2+F1F5+F2F5)G1"
    " + (F1^2F2+F2^3)G2 + G1^2",
    "(F1F2+F2^2+F3)F3F4 + (F1F2^2+F1F3+F2^3+F2F5)G1 + (F1F2^2+F1F5+F2^3+F2F5)G2 + G1G2 + G3",
    "(F2^2F6 + F3^2F5) + F2F3G2 + G2^2",
)


def primary_hat() -> list[Polynomial]:
    return [W_RING.parse(t) for t in PRIMARY_HAT_TEXT]


def quadratic_form() -> Polynomial:
    return WPRIME_RING.parse(QUADRATIC_FORM_TEXT)


def dickson_reference() -> dict[str, Polynomial]:
    return {k: M_RING.parse(v) for k, v in DICKSON_TEXT.items()}


def klein_twist() -> Polynomial:
    return M_RING.parse(KLEIN_TWIST_TEXT)
