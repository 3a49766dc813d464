"""Published claims the toolkit checks its computations against.

Every constant here is a statement from the literature, not a parameter of
an algorithm. Commands compare their results with these and exit with the
claim-violation status when a result contradicts one.
"""

from typing import Final

# Exceptional (b, q) pairs for (2^k - 1)(b^k - 1) = y^q with b < 10^6 and
# q > log2(b + 1). Values are closed forms so the table reads like its source.
EXCEPTIONAL_TABLE: Final[dict[int, frozenset[int]]] = {
    3: frozenset(),
    5: frozenset({15, 17}),
    7: frozenset(),
    11: frozenset({2**10 - 1, 2**10 + 1}),
    13: frozenset({2**12 - 1, 2**12 + 1}),
    17: frozenset(t * 2**14 + s for t in range(1, 8) for s in (-1, 1)),
    19: frozenset(),
}
EXCEPTIONAL_TABLE_B_MAX: Final = 10**6

# Wieferich primes base 2 below 2828.
WIEFERICH_P_MAX: Final = 2828
WIEFERICH_FINDINGS: Final[frozenset[tuple[int, int]]] = frozenset({(1093, 2)})

# max nu_p(b^(p-1) - 1) over odd b < 10^6 and primes p < 2828 with p not dividing b.
FERMAT_QUOTIENT_BOUND: Final = 11
FERMAT_QUOTIENT_B_MAX: Final = 10**6
FERMAT_QUOTIENT_P_MAX: Final = 2828

# (X, q) = (2, 5): lower bound CORRECTION_CONSTANT / Y^CORRECTION_EXPONENT on
# |31^(1/5) - Z/Y| and the stated conclusion Y < QUINTIC_Y_BOUND.
CORRECTION_CONSTANT: Final = "0.01"
CORRECTION_EXPONENT: Final = "2.83"
QUINTIC_Y_BOUND: Final = 6

# Stated shapes of the irrationality exponent and the implied bound B < C A^E.
# Keys are the exponent ranges they are asserted for.
SHAPE_Q_AT_LEAST_7: Final = {"lambda": "3.15", "constant": "300", "exponent": "2.7"}
SHAPE_Q_EQUALS_5: Final = {"lambda": "2.8", "constant": "1400", "exponent": "3.6"}

# A convergent h/k of the cube root of (X^3 - 1) with k < CUBIC_DENOMINATOR_FACTOR * X^6
# is claimed to exist whenever a cubic solution exists.
CUBIC_DENOMINATOR_FACTOR: Final = 5

# Cells of the condition grid where the irrationality-measure condition is
# known to fail; every other cell X in [2, 100], q odd prime <= 97 should hold.
CONDITION_FAILURES: Final[frozenset[tuple[int, int]]] = frozenset({(2, 3), (3, 3)})
CONDITION_GRID_X_MAX: Final = 100
CONDITION_GRID_Q_MAX: Final = 97

# nu_3 branches for the resolved bases as listed in the literature; 29 appears
# under both b - 1 and b + 1.
NU3_BRANCHES_AS_PUBLISHED: Final[dict[str, tuple[int, ...]]] = {
    "3 | b - 1": (7, 13, 29),
    "3 | b + 1": (11, 23, 29),
    "3 | b": (21, 27),
}
RESOLVED_BASES: Final = (5, 7, 11, 13, 21, 23, 27, 29)
