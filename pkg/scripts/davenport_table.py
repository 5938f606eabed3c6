"""Davenport constants of small abelian groups by exhaustive search.

    python scripts/davenport_table.py
"""

from sepnoether.septool import davenport

GROUPS = [(2,), (4,), (2, 2), (4, 2), (2, 2, 2), (3, 3), (6, 2), (8, 2), (4, 4), (2, 2, 4), (2, 2, 2, 2),
          (12, 2)]

if __name__ == "__main__":
    for g in GROUPS:
        name = " x ".join(f"C{n}" for n in g)
        print(f"{name:18} D = {davenport(g)}")
