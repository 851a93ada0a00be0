"""Evolve the lattice and watch its conserved structure.

The equation dq_n/dt = (1 - q_n^2)(q_{n+1} - q_{n-1}) conserves the
product c_inf = prod(1 - q_n^2), and sup|q_n(t)| never exceeds
rho_0 = sqrt(1 - c_inf).  Signals spread at speed at most 2 sites per
unit time, so a window of half-width 2.5 t stays effectively exact.
"""

import numpy as np

from dmkdv import InitialProfile, conserved_c_inf, integrate, rho_zero

profile = InitialProfile(kind="single_site", amplitude=0.3)
state = profile.realize(-160, 160)

print("initial data: single site 0.3 at n=0, window [-160, 160]")
print(f"c_inf = {conserved_c_inf(state):.12f}, sup bound rho_0 = {rho_zero(state):.12f}")
print()
print(f"{'t':>5} {'sup|q|':>12} {'c_inf drift':>12} {'support radius':>15}")
current = state
for t_end in (5.0, 10.0, 20.0, 40.0):
    current = integrate(current, t_end, 0.01)
    drift = abs(conserved_c_inf(current) - conserved_c_inf(state))
    occupied = np.abs(current.values) > 1e-8
    radius = np.max(np.abs(current.sites[occupied]))
    print(f"{t_end:5.0f} {np.max(np.abs(current.values)):12.6f} "
          f"{drift:12.2e} {radius:15d}")

print()
print("the support tracks the light cone |n| = 2t plus a slowly widening")
print("transition layer; the sup norm stays below rho_0 and c_inf is")
print("conserved to the integrator tolerance.")

# time reversibility: one step forward then one step back
fwd = integrate(state, 0.1, 0.1)
back = integrate(fwd, 0.0, 0.1)
print(f"\none-step reversal defect: {np.max(np.abs(back.values - state.values)):.2e}"
      f" (O(dt^5) = {0.1 ** 5:.0e})")
