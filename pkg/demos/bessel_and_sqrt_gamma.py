"""The Bessel product formula and the sqrt-gamma-product exploration.

K_a(x) K_a(y) equals a cosine-weighted integral of K_2a, which is what
makes sqrt(gamma_t gamma_s) provably HCM for |t - s| <= 1/2.  Whether
the HCM property extends to ALL shape pairs is open; the battery below
produces numerical evidence only, and is labeled as such.
"""

import numpy as np

from hcmlab import (bessel_k, density_sqrt_gamma_product, density_sqrt_Z_one_third,
                    hcm_check, verify_bessel_product_formula)
from hcmlab.monotone import ScanGrid

print("== product formula, relative agreement of both sides ==")
for alpha in (0.0, 1.0 / 6.0, 0.25):
    for (x, y) in ((1.0, 1.0), (1.0, 2.0), (0.5, 3.0)):
        v = verify_bessel_product_formula(alpha, x, y)
        rel = v.witness[1]
        print(f"  a = {alpha:6.4f}, (x, y) = ({x}, {y}): rel diff {rel:.2e}  {v.status}")

print("\n== the K-density of sqrt(Z_(1/3)) at a few points ==")
for x in (0.2, 0.5, 1.0, 3.0):
    print(f"  x = {x}: density {density_sqrt_Z_one_third(x):.8f}")

print("\n== evidence scan: is sqrt(gamma_t gamma_s) HCM beyond |t - s| <= 1/2? ==")
print("(open question; PASS below is evidence at the scanned resolution, not proof)")
for (t, s) in ((1.0, 1.0), (0.3, 1.1), (5.0, 0.2)):
    dens = lambda x: density_sqrt_gamma_product(np.atleast_1d(x), t, s)
    v = hcm_check(dens, u_grid=ScanGrid(0.05, 2.0, 7),
                  w_grid=ScanGrid(2.01, 60.0, 12), order=6)
    gap = abs(t - s)
    zone = "proved zone" if gap <= 0.5 else "open zone"
    print(f"  (t, s) = ({t}, {s}) [{zone}]: {v.status}")

print("\n== half-integer orders reduce to elementary functions ==")
for x in (0.5, 1.0, 2.0):
    exact = np.sqrt(np.pi / (2.0 * x)) * np.exp(-x)
    print(f"  K_(1/2)({x}) = {bessel_k(0.5, x):.12f}   closed form {exact:.12f}")
