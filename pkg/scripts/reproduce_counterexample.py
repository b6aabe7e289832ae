"""K0 and degree-0 dimensions for E, its out-split, and their squares.

E and its out-split have graded-isomorphic path algebras, but the squares
differ: both K0 and the degree-0 dimension tell them apart.
"""

from quiverlab import lpa
from quiverlab.fixtures import E, E_PARTITION
from quiverlab.harness import line_union_cross_control
from quiverlab.ktheory import k0_group
from quiverlab.quiver import kronecker_square, out_split


def main():
    split = out_split(E, E_PARTITION)
    for q in (E, split):
        sq = kronecker_square(q)
        print(f"{q.name:>8}  K0 {str(k0_group(q)):<6}  dim_0 {lpa.dim_graded(q, 0):>3}  |  "
              f"{sq.name:>9}  K0 {str(k0_group(sq)):<6}  dim_0 {lpa.dim_graded(sq, 0):>3}")
    got, product = line_union_cross_control(0)
    print(f"dim L(E^)_0 = {got}, dim L(E)_0 squared = {product}")


if __name__ == "__main__":
    main()
