"""Diagonals travel well: along direct sums, epimorphisms, and into ideals.

Block diagonals add up to a diagonal of the l1 direct sum, any
multiplicative surjection pushes a diagonal forward, and compressing by an
ideal's identity keeps symmetry.  The defect bookkeeping is exact in each
case.
"""

from amlab import (block_projection, defects, direct_sum_algebra,
                   direct_sum_diagonal, ideal_diagonal, matrix_algebra,
                   matrix_diagonal, max_defect, proj_norm,
                   pushforward_diagonal)

A2, A3 = matrix_algebra(2), matrix_algebra(3)
S = direct_sum_algebra([A2, A3])
print(f"ambient: {S.name}, dimension {S.dim}")

ts = direct_sum_diagonal([matrix_diagonal(2, algebra=A2),
                          matrix_diagonal(3, algebra=A3)], ambient=S)
worst = max(max_defect(ts, a) for a in S.basis_elements())
print(f"summed diagonal: {len(ts.coeffs)} terms, projective norm {proj_norm(ts)}, "
      f"worst defect {worst}, symmetric {ts.is_symmetric()}")

print()
print("== pushforward along the projection onto the first block ==")
pushed = pushforward_diagonal(block_projection(S, 0), ts)
print("projection of the sum diagonal equals the block diagonal:",
      pushed == matrix_diagonal(2, algebra=A2))

print()
print("== compression by an ideal identity ==")
e1 = S.element({0: 1, 3: 1})   # unit of the first block, an ideal of S
m = ideal_diagonal(ts, e1)
print(f"(t o e) e keeps {len(m.coeffs)} of {len(ts.coeffs)} terms, "
      f"symmetric {m.is_symmetric()}")
print("defects of the compressed tensor on the ideal's basis:")
for j in range(4):
    a = S.basis_element(j)
    print(f"  at {a}: {defects(m, a)}")
full = ideal_diagonal(ts, S.unit_element())
print("compressing by the full unit returns the tensor unchanged:", full == ts)
