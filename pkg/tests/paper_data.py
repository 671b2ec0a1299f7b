"""Frozen reference values used across the test suite.

COUNTING_TABLE holds all 48 published counts: for a coset u of the given
type, the number of cosets v of each type with the given pairing value.
DIVISOR_COUNTS and ORBIT_COUNTS were produced by the independent
brute-force oracle in test_borcherds (meet-in-the-middle box scan) and
frozen here.
"""

from fractions import Fraction

# (u_type label, pairing) -> counts for v types ("00", "0", "1", "2")
COUNTING_TABLE = {
    ("00", Fraction(0)): (1, 80, 90, 72),
    ("00", Fraction(1, 3)): (0, 0, 0, 0),
    ("00", Fraction(2, 3)): (0, 0, 0, 0),
    ("0", Fraction(0)): (1, 26, 36, 18),
    ("0", Fraction(1, 3)): (0, 27, 27, 27),
    ("0", Fraction(2, 3)): (0, 27, 27, 27),
    ("1", Fraction(0)): (1, 32, 24, 24),
    ("1", Fraction(1, 3)): (0, 24, 33, 24),
    ("1", Fraction(2, 3)): (0, 24, 33, 24),
    ("2", Fraction(0)): (1, 20, 30, 30),
    ("2", Fraction(1, 3)): (0, 30, 30, 21),
    ("2", Fraction(2, 3)): (0, 30, 30, 21),
}

S_MATRIX_ROWS = (
    (1, 80, 90, 72),
    (1, -1, 9, -9),
    (1, 8, -9, 0),
    (1, -10, 0, 9),
)

TYPE_CLASS_SIZES = (1, 80, 90, 72)

# f-component reference coefficients
F00_COEFFS = {Fraction(0): 24, Fraction(1): 216, Fraction(2): 1296}
F0_CONSTANT = -3
F2_COEFFS = {Fraction(-1, 3): 1, Fraction(2, 3): 14, Fraction(5, 3): 92}

# brute-force oracle fixtures: numerator box bound -> counts
DIVISOR_COUNTS = {1: 56, 2: 1608, 3: 31320}
CLOSURE_COUNTS = {1: 168, 2: 2184, 3: 70584}
ORBIT_COUNTS = {1: 56, 2: 728, 3: 23528}
