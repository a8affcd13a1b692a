"""Walk through the coefficient machinery behind the quasi-compact schemes.

Run:  python demos/weights_and_operators.py
"""

import math

import numpy as np

from tempfrac import (
    Grid1D,
    TemperedParams,
    apply_compact,
    apply_quasi_compact_derivative,
    exact_power_derivative,
    grunwald_weights,
    quasi_compact_coefficients,
    tempered_weights,
    weight_sum_limit,
)

alpha, lam, h = 1.5, 1.0, 0.1
params = TemperedParams(alpha, lam)

print("=== Grunwald-Letnikov weights ===")
g = grunwald_weights(alpha, 8).values
print(f"g_0..g_8 for order {alpha}: {np.array2string(g, precision=6)}")
print("g_0 = 1, g_1 = -alpha, then all positive and decaying like k^(-1-alpha).\n")

print("=== Quasi-compact combination ===")
mu = quasi_compact_coefficients(alpha)
print(f"mu_minus = {mu.mu_minus:.10f}")
print(f"mu_zero  = {mu.mu_zero:.10f}")
print(f"mu_plus  = {mu.mu_plus:.10f}")
print(f"sum      = {mu.mu_minus + mu.mu_zero + mu.mu_plus:.1f}")
print("These weights recombine three shifted convolutions so the residual is")
print("exactly the tridiagonal compact filter acting on the derivative.\n")

print("=== Tempered weight table ===")
table = tempered_weights(params, h, 12)
print(f"w_0..w_12 (order {alpha}, rate {lam}, h = {h}):")
print(np.array2string(table.values, precision=6))
partial = math.fsum(tempered_weights(params, h, 400).values)
print(f"sum of first 401 weights: {partial:.12f}")
print(f"closed-form limit:        {weight_sum_limit(params, h):.12f}\n")

print("=== Compact filter reproduces matched exponentials ===")
x = np.linspace(0.0, 1.0, 11)
v = np.exp(-lam * x)
out = apply_compact("left", lam, h, v)
print(f"max |B e^(-lam x) - e^(-lam x)| on interior nodes: {np.max(np.abs(out - v[1:-1])):.2e}\n")

print("=== Third-order convergence of the discrete derivative ===")
j = 5
for M in (10, 20, 40):
    grid = Grid1D(0.0, 1.0, M)
    xs = grid.nodes()
    u = np.exp(-lam * xs) * xs**j
    du = np.exp(-lam * xs) * (j * xs ** (j - 1) - lam * xs**j)
    core = np.array(
        [exact_power_derivative("left", params, 0.0, j, xi) if xi > 0 else 0.0 for xi in xs]
    )
    exact = core - lam**alpha * u - alpha * lam ** (alpha - 1) * du
    discrete = apply_quasi_compact_derivative("left", params, grid, u)
    filtered = apply_compact("left", lam, grid.h, exact)
    gap = np.max(np.abs(discrete - filtered))
    print(f"M = {M:3d}: max gap vs compact-filtered exact derivative = {gap:.3e}")
print("Each halving of h divides the gap by about 8.")
