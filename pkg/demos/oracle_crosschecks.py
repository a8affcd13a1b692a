"""Quadrature reference evaluators versus closed forms.

The oracle computes tempered fractional integrals and derivatives directly
from their defining singular integrals, sharing nothing with the difference
schemes; agreement with closed-form power rules and the semigroup identity
is the ground truth the rest of the package is checked against.

Run:  python demos/oracle_crosschecks.py
"""

import math

from tempfrac import (
    TemperedParams,
    exact_power_derivative,
    quadrature_oracle,
    tempered_derivative,
    tempered_integral,
)

alpha, lam = 1.5, 1.0
params = TemperedParams(alpha, lam)

print("=== Conjugated derivative of e^(-lam x) x^5 ===")
u = lambda s: math.exp(-lam * s) * s**5
for x in (0.4, 0.7, 1.0):
    got = tempered_derivative("left", alpha, params, 0.0, u, x, tol=1e-9)
    want = exact_power_derivative("left", params, 0.0, 5, x)
    print(f"x = {x}: quadrature {got:+.10e}   closed form {want:+.10e}   diff {abs(got - want):.1e}")
print()

print("=== Normalized tempered derivative ===")
du = lambda s: math.exp(-lam * s) * (5 * s**4 - lam * s**5)
x = 0.7
got = quadrature_oracle("left", params, 0.0, u, x, tol=1e-9)
want = (
    exact_power_derivative("left", params, 0.0, 5, x)
    - lam**alpha * u(x)
    - alpha * lam ** (alpha - 1) * du(x)
)
print(f"x = {x}: oracle {got:+.10e}   analytic {want:+.10e}   diff {abs(got - want):.1e}")
print()

print("=== Semigroup of tempered integrals ===")
p = TemperedParams(1.5, 0.5)
inner = lambda s: tempered_integral("left", 0.7, p, 0.0, math.sin, s, tol=1e-11)
nested = tempered_integral("left", 0.7, p, 0.0, inner, 1.2, tol=1e-9)
direct = tempered_integral("left", 1.4, p, 0.0, math.sin, 1.2, tol=1e-11)
print(f"I^0.7 applied twice: {nested:.12f}")
print(f"I^1.4 applied once:  {direct:.12f}")
print(f"difference: {abs(nested - direct):.2e}")
