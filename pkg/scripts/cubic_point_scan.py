"""Scan for rational points on the interior-stratum cubic of a three-line
arrangement.

The full-triangle stratum with divisor (1, 1, 1) is parametrised by points
(z, w), z, w nonzero, on w(kz - w) = c1 c2 c3 z^3.  For each candidate z
the quadratic in w has a rational root iff its discriminant is a rational
square; this scans small rationals z = num/den.

Usage: python scripts/cubic_point_scan.py [a1,b1 a2,b2 a3,b3]
(default lines: 0,0 1,1 0,2)
"""

import sys
from fractions import Fraction

from spectral_strata import (
    interior_cubic_coefficients,
    interior_cubic_points,
    line_arrangement,
)


def main(argv) -> None:
    if argv:
        lines = [tuple(part.split(",")) for part in argv]
    else:
        lines = [("0", "0"), ("1", "1"), ("0", "2")]
    arr = line_arrangement(lines)
    c1, c2, c3, k = interior_cubic_coefficients(arr)
    print(f"lines: {lines}")
    print(f"cubic: w({k} z - w) = {c1 * c2 * c3} z^3")
    candidates = [Fraction(n, d) for d in range(1, 7) for n in range(-30, 31)]
    points = interior_cubic_points(arr, candidates)
    if not points:
        print("no rational points found in the scanned range")
        return
    print(f"{len(points)} rational points (z, w):")
    for z, w in points[:20]:
        print(f"  z = {z!s:8} w = {w}")


if __name__ == "__main__":
    main(sys.argv[1:])
