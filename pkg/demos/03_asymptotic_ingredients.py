"""All the ingredients of the leading-order formula, one ray at a time.

For a ray v = n/t inside the light cone the phase (t/2)(z^2 - z^-2)
- n log z has four stationary points S_1..S_4 on the circle.  Each one
carries a local exponent nu_j, arc integrals chi_j and hat_delta_j, the
constant delta_j^0, and a Gamma-function cross entry (m1^j)_12 of
modulus sqrt(nu_j).  The scalar function delta ties them together
through the product identity delta = prod_j delta_j.
"""

import cmath
import math

from dmkdv import (
    InitialProfile,
    RayParams,
    coefficient_set,
    cross_solutions,
    delta_at,
    delta_j_at,
    leading_term,
    oscillation_decomposition,
    phase_derivative,
    reflection_evaluator,
    staggered,
    stationary_points,
)

profile = InitialProfile(kind="single_site", amplitude=0.3)
r_eval = reflection_evaluator(staggered(profile.support_state()))

ray = RayParams(n=50, t=100.0)
stat = stationary_points(ray)
print(f"ray v = {ray.v}: theta0 = {stat.theta0:.6f}")
print(f"{'j':>2} {'S_j':>22} {'|phi_prime|':>12} {'phi_dd*beta^2':>22}")
for j in (1, 2, 3, 4):
    k = j - 1
    ident = stat.phi_dd[k] * stat.beta[k] ** 2
    print(f"{j:2d} {stat.S[k]:22.6f} {abs(phase_derivative(stat.S[k], ray)):12.2e} "
          f"{ident:22.6f}")
print("(the last column alternates +-i/2 by construction)")

coeffs = coefficient_set(r_eval, stat)
print(f"\ndelta(0) = {coeffs.delta_at_zero:.9f}")
print(f"{'j':>2} {'nu_j':>10} {'|chi_j(S_j)|':>13} {'hat_delta_j(S_j)':>26} "
      f"{'|delta_j^0|':>12}")
for j in (1, 2, 3, 4):
    k = j - 1
    print(f"{j:2d} {coeffs.nu[k]:10.6f} {abs(coeffs.chi_at_S[k]):13.2e} "
          f"{coeffs.hat_delta_at_S[k]:26.9f} {abs(coeffs.delta_j0[k]):12.9f}")

z = 1.7 * cmath.exp(0.8j)
product = 1.0
for j in (1, 2, 3, 4):
    product *= delta_j_at(r_eval, stat, j, z)
print(f"\nproduct identity at z = {z:.3f}: "
      f"|delta - prod delta_j| = {abs(delta_at(r_eval, stat, z) - product):.2e}")

crosses = cross_solutions(r_eval, stat, coeffs)
print(f"\n{'j':>2} {'(m1^j)_12':>24} {'|m1| - sqrt(nu)':>16}")
for cross in crosses:
    gap = abs(abs(cross.m1_12) - math.sqrt(cross.nu))
    print(f"{cross.j:2d} {cross.m1_12:24.6e} {gap:16.2e}")

result = leading_term(ray, stat, coeffs, crosses)
print(f"\nleading term at (n=50, t=100): {result.q_asym:+.6e} "
      f"(imaginary residual {result.imag_residual:.2e})")
for j in (1, 2, 3, 4):
    amp, slope_t, slope_logt = oscillation_decomposition(ray, stat, coeffs, j)
    print(f"  j={j}: amplitude {amp:.3e}, phase rates: {slope_t:+.4f} per t, "
          f"{slope_logt:+.5f} per log t")
