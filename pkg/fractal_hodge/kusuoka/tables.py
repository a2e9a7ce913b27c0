"""Tabulated transfer matrices and growth constants for SG_3^2, kept as printed.

Several of these values disagree with the ones derived from the harmonic
extension matrices; `growth.discrepancy_report` lists every entry.
"""
from fractions import Fraction


def _scaled(factor, rows):
    return tuple(tuple(factor * v for v in row) for row in rows)


PRINTED_E1 = _scaled(Fraction(98, 5**4 * 3**3), [[287, 962, -283],
                                                [-49, 3701, -49],
                                                [-283, 962, 287]])

PRINTED_E2 = _scaled(Fraction(98, 5**4 * 3**3), [[287, -283, 962],
                                                [-283, 287, 962],
                                                [-49, -49, 3701]])

PRINTED_E3 = _scaled(Fraction(1, 5**4 * 3**3 * 4), [[1174, 49, 49],
                                                   [-962, 3613, 1213],
                                                   [-962, 1213, 3613]])

PRINTED_C = _scaled(Fraction(1, 60), [[-2, 13, 13],
                                      [13, -2, 13],
                                      [13, 13, -2]])

PRINTED_A = _scaled(Fraction(1, 5**4 * 3**2 * 4), [[75394, 94619, 94619],
                                                   [-37822, 522303, 119703],
                                                   [-37822, 119703, 522303]])

# restriction of A to vectors (c, d, d)
PRINTED_B = _scaled(Fraction(1, 5**4 * 3**2 * 4), [[75394, 189238],
                                                   [-37822, 534006]])

PRINTED_LAMBDA_ANTI = Fraction(1342, 75)
PRINTED_LAMBDA_ANTI_VECTOR = (0, 1, 1)
PRINTED_LAMBDA_PLUS = "(15235 + 21*sqrt(257505))/3375"
PRINTED_LAMBDA_MINUS = "(15235 - 21*sqrt(257505))/3375"
