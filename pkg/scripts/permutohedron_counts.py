"""Lattice-point and vertex counts of permutohedra.

The lattice counts follow the forest-counting sequence 1, 2, 7, 38, 291,
2932, ...; the vertex counts are the factorials.

Usage: python scripts/permutohedron_counts.py [max_n]
"""

import sys
import time

from spectral_strata import permutohedron


def main(max_n: int = 6) -> None:
    print(" n  lattice  vertices  seconds")
    for n in range(1, max_n + 1):
        start = time.monotonic()
        z = permutohedron(n)
        elapsed = time.monotonic() - start
        print(
            f"{n:2d}  {len(z.lattice_points):7d}  {len(z.vertex_points):8d}  {elapsed:7.2f}"
        )


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 6)
