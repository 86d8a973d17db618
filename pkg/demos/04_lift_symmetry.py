"""Lift an index-one cusp form and audit the coefficient symmetry."""

import time

from fjcert import check_symmetry, gritsenko_lift, jacobi_space

t0 = time.perf_counter()
phi = jacobi_space(10, True, 5 * 6 + 1)[0]
f = gritsenko_lift(phi, 6, 6)
print("weight-10 lift, prec %d, M_max %d, built in %.2fs" % (f.prec, f.M_max, time.perf_counter() - t0))
print("cuspidal:", f.is_cuspidal())

# c(n, r, m) is symmetric in n and m and invariant under the index shift
c = f.phis[2].coeff
print("c(1, 0, 2) =", c(1, 0), " c(2, 0, 1) =", f.phis[1].coeff(2, 0))
print("c(1, 1, 2) =", c(1, 1), " shifted c(4, 5, 2) =", c(4, 5))

rep = check_symmetry(f, 5)
print("symmetry audit: %d checked, %d skipped, %d violations" % (rep.checked, rep.skipped, len(rep.violations)))
