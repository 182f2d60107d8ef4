"""The excised-roots-of-unity toy model.

Deleting the two roots of unity adjacent to 1 from x^n - 1 produces a
polynomial f_n whose derivative has a real zero near 1 - b0/n, where
b0 = 2.3565... solves 4 pi^2 + 2b + b^2 = 2b e^b.  The error term is
O(1/n^2).  Relocating the next-nearest roots to e^{2 pi i c/n} for a
range of c keeps the derivative zero in the same neighborhood.

Run: python3 demos/04_toy_model.py
"""

from unideriv.toymodel import (
    grid_sweep,
    run_modified_toy,
    solve_b0,
    verify_proposition,
)

b0 = solve_b0()
print(f"b0 = {b0:.10f}")

print("\nreal derivative zero of f_n versus the prediction 1 - b0/n:")
for n in (20, 40, 80, 160, 320):
    r = verify_proposition(n)
    print(f"  n={n:4d}  root={r.root:.8f}  "
          f"n^2 * |root - (1 - b0/n)| = {r.error * n * n:.4f}")

print("\nsymmetric modified model (c+ = 2, c- = -2) reproduces f_n:")
r = run_modified_toy(30, 2.0, -2.0)
print(f"  n=30  root={r.root:.6f}  target={r.target:.6f}  "
      f"distance={r.distance:.2e}  within 0.8/n: {r.within}")

results = grid_sweep(30, grid=3)
n_ok = sum(r.within for r in results)
print(f"\n3x3 sweep of (c+, c-) at n=30: {n_ok}/{len(results)} roots "
      f"within 0.8/n of 1 - 2.6/n")
