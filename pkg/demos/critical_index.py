"""Bracketing the open critical index t_alpha.

f_(alpha, t) is completely monotone for every t <= 1 - alpha and fails
at t = 1; somewhere in between sits a critical index whose exact value
is an open problem.  Bisection against the numerical-inversion predicate
produces reproducible evidence brackets.  The reciprocal 1/t_alpha is
the conjectured threshold power for the GGC property of T^beta.
"""

from hcmlab import estimate_critical_t

print("alpha   1-alpha   bracket for t_alpha      1/t bracket (GGC power)")
for alpha in (0.2, 0.3, 0.4, 0.5):
    lo, hi = estimate_critical_t(alpha, bisect_tol=0.01)
    print(f"{alpha:5.2f}   {1 - alpha:7.2f}   [{lo:.4f}, {hi:.4f}]      "
          f"[{1 / hi:.4f}, {1 / lo:.4f}]")

print()
print("Notes: brackets are numerical evidence at the scanned resolution,")
print("not proofs.  PASS holds at the left end and certified FAIL at the")
print("right end; halving the tolerance refines the same bracket (nested).")
