"""Eigenstructure of the walk step and of the phase-flipped walk.

Three views at increasing n: the exact 3-state anchor where the walk
is a plain 3-cycle, the closed-form eigenphases sin(theta_j/2) =
sqrt(j(alpha + beta - j alpha beta)) on a grid, and the slow rotation
of W^t1 P whose half-angle equals the start/marked overlap <w|s>.
"""
import numpy as np

from johnson_walk import (
    algorithm_rotation, choose_parameters, delta_decomposition, walk_spectrum,
)

# --- the 3-cycle anchor ------------------------------------------------
rep = walk_spectrum(3, 1, 1)
print("n=3, m=1, l=1 phases:", np.round(rep.phases, 10))
print("expected:            ", np.round([-2 * np.pi / 3, 0.0, 2 * np.pi / 3], 10))
print(f"closed-form residual: {rep.closed_form_residual:.3e}\n")

# --- closed form across a grid -----------------------------------------
print("closed-form residual and extreme-pair fidelity on a grid:")
for n in (50, 200, 1000):
    for l in (1, 2, 3):
        m = choose_parameters(n, l).m
        r = walk_spectrum(n, m, l)
        print(f"  n={n:5d} l={l} m={m:4d}: residual {r.closed_form_residual:.2e}, "
              f"pair fidelity {r.extreme_pair_fidelity:.6f}")

# --- the reflection decomposition --------------------------------------
print("\nwalk step as C + corrections (scaled norms should be Theta(1)):")
for n, l in ((200, 2), (1000, 2), (1000, 3)):
    m = choose_parameters(n, l).m
    d = delta_decomposition(n, m, l)
    print(f"  n={n:5d} l={l}: |D1| sqrt(n-m) = {d.scaled_norm_delta1:.4f}, "
          f"|D2| sqrt(m+1) = {d.scaled_norm_delta2:.4f}")

# --- the algorithm's rotation ------------------------------------------
print("\nsmallest eigenphase pair of W^t1 P vs 2<w|s>:")
for n, m, l in ((10 ** 4, 464, 2), (10 ** 5, 316, 1)):
    r = algorithm_rotation(n, m, l)
    print(f"  n={n} m={m} l={l}: theta_+ = {r.theta_plus:.6f}, "
          f"2<w|s> = {2 * r.w_s_overlap:.6f}, ratio {r.ratio_plus:.4f}, "
          f"eigenvector fidelity {r.eigvec_fidelity:.4f}")
