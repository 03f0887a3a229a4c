"""Trace witnesses: who gets a commutator-killing functional, and who cannot.

A functional f with f(z) = 1 that vanishes on every commutator exists
exactly when z stays outside the commutator span.  The decision is a
finite, exact linear-algebra question, and the negative answer comes with
a certificate writing z as a combination of commutators.
"""

from amlab import (Functional, commutator, matrix_algebra, matrix_diagonal,
                   trace_feasibility, witness_from_diagonal)

A = matrix_algebra(2)
I = A.unit_element()

print("== the identity of M2 ==")
res = trace_feasibility(A, I)
print("decision:", res.decision)
print("functional values on E11,E12,E21,E22:", res.functional.values)
print("this is the normalized trace; on a commutator it gives",
      res.functional(commutator(A.element({"E12": 1}), A.element({"E21": 1}))))

print()
print("== a trace-zero direction ==")
z = A.element({"E11": 1, "E22": -1})
res = trace_feasibility(A, z)
print("decision:", res.decision)
print("certificate:")
rebuilt = A.zero()
for p, q, c in res.certificate:
    print(f"  {c} * [{A.labels[p]}, {A.labels[q]}]")
    rebuilt = rebuilt + commutator(A.basis_element(p), A.basis_element(q)).scaled(c)
print("certificate reproduces z:", rebuilt == z)

print()
print("== building the witness from the exact diagonal ==")
t = matrix_diagonal(2, algebra=A)
g = Functional(A, [1, 0, 0, 0])     # evaluation of the (1,1) coefficient
rep = witness_from_diagonal(t, I, g)
print("witness values:", rep.functional.values)
print("largest value on basis commutators:", rep.commutator_defect)
print("|f(z) - 1| =", rep.unit_residual)
