"""Divisor-class pairings, anticanonical degrees, and the pairing matrix.

Each divisor meets each one-dimensional class in +1, -1, or 0, read off
from the P-set and N-set of the class.  Summing the pairings recovers
the anticanonical degree two independent ways, and the full matrix has
rank equal to the Picard rank.
"""

from __future__ import annotations

from stablecurves import (
    DistinguishedPartition,
    LabelSet,
    TwoPartition,
    intersection_matrix,
    k_plus_b_pairing,
    matrix_rank,
    minus_k_closed,
    minus_k_divisor_coefficients,
    minus_k_expanded,
    pair_divisor_curve,
    picard_rank,
)


def main() -> None:
    s = LabelSet.numbered(6)
    pi = DistinguishedPartition.of(s, [[1], [2], [3], [4, 5, 6]])
    print(f"class {pi.literal()} against a few divisors:")
    for part in ([1, 2], [4, 5, 6], [1, 4], [2, 3]):
        sigma = TwoPartition.of(s, part)
        print(f"  {sigma.literal():>10}: {pair_divisor_curve(sigma, pi):+d}")

    print(f"\nanticanonical degree of {pi.literal()}:")
    print(f"  closed form:   {minus_k_closed(pi)}")
    print(f"  expanded form: {minus_k_expanded(pi)}")
    print(f"  (K+B) pairing: {k_plus_b_pairing(pi)}")

    print("\ndivisor coefficients of the anticanonical class for n=5:")
    s5 = LabelSet.numbered(5)
    for sigma, coeff in sorted(
        minus_k_divisor_coefficients(s5).items(), key=lambda kv: kv[0].literal()
    ):
        print(f"  {sigma.literal():>7}: {coeff}")

    print("\npairing matrix ranks:")
    for n in (5, 6):
        m = intersection_matrix(LabelSet.numbered(n))
        rank = matrix_rank(m)
        print(
            f"  n={n}: {len(m.rows)} x {len(m.cols)} matrix,"
            f" rank {rank}, Picard rank {picard_rank(n)}"
        )

    print("\nthe n=5 matrix itself (rows are divisors, columns are classes):")
    print(intersection_matrix(LabelSet.numbered(5)).to_tsv(), end="")


if __name__ == "__main__":
    main()
