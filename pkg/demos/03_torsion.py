"""Decompose a rational torsion vector and list specialization windows."""

from fractions import Fraction

from fjcert import enumerate_S, torsion_decomposition

lam = (Fraction(1, 3), Fraction(2, 3))
u, rho, xi = torsion_decomposition(lam, 3)
print("lambda =", lam)
print("u   =", u.rows)
print("rho =", rho)
print("xi  =", xi)
det = rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]
print("|det rho| =", abs(det), "(equals the denominator)")

# exponent windows S_b for the specialized expansions
for n, b in ((1, Fraction(1)), (2, Fraction(1, 128))):
    s = enumerate_S(n, b, 2)
    exps = [t[0, 0] for t in s]
    print("N=%d, b=%s: %d exponents, max %s" % (n, b, len(exps), max(exps)))
