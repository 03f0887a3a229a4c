"""Exact diagonals for matrix-unit algebras, and what truncation costs.

The n-by-n matrix algebra with the entrywise l1 norm carries the symmetric
tensor (1/n) sum E_ij (x) E_ji.  Its four defects vanish identically, and
the truncated versions inside a larger ambient algebra fail only by the
coefficient mass outside the block, which this script tabulates next to
the proven tail bound.
"""

from fractions import Fraction

from amlab import (DiagonalNet, basis_test_set, defect_report, defects,
                   matrix_algebra, matrix_diagonal, matrix_unit_index,
                   max_defect, proj_norm, support_block, tail_mass,
                   truncated_matrix_diagonal)

print("== exact diagonals for M_n ==")
for n in range(1, 5):
    A = matrix_algebra(n)
    t = matrix_diagonal(n, algebra=A)
    els, labels = basis_test_set(A)
    report = defect_report(DiagonalNet([t], els, 0, labels), require_symmetric=True)
    print(f"M{n}: symmetric={report.entries[0].symmetric}, "
          f"verdict={report.verdict}, projective norm={proj_norm(t)}")

print()
print("== truncation inside the 6x6 ambient algebra ==")
N = 6
A = matrix_algebra(N)
probe = A.element({
    matrix_unit_index(N, 1, 4): Fraction(2),
    matrix_unit_index(N, 5, 2): Fraction(-1, 2),
    matrix_unit_index(N, 2, 2): Fraction(1),
})
print(f"test element: {probe}")
print(f"support block: {support_block(probe)}")
print(f"{'n':>3} {'d1':>6} {'d2':>6} {'d3':>6} {'d4':>6} {'tail bound':>11}")
for n in range(1, N + 1):
    tn = truncated_matrix_diagonal(n, N, algebra=A)
    d1, d2, d3, d4 = defects(tn, probe)
    print(f"{n:>3} {str(d1):>6} {str(d2):>6} {str(d3):>6} {str(d4):>6} "
          f"{str(tail_mass(probe, n)):>11}")
print()
print("the defects sit under the tail bound for every n and vanish once")
print("the block covers the support:",
      max_defect(truncated_matrix_diagonal(support_block(probe), N, algebra=A),
                 probe) == 0)
