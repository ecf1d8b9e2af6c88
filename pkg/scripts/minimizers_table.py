#!/usr/bin/env python3
"""Optimal limiting sizes and the resulting norm ratios for e = 1..8."""

from littlewood import optimize as opt

print(f"{'e':>2} {'x* (nonquad)':>14} {'A_e^4':>12} {'x* (quad)':>14} {'B_e^4':>12} {'B_e':>10} {'(B_1^4)^e':>12}")
b1 = opt.minimize(1, "quadratic").value4
for e in range(1, opt.E_MAX + 1):
    a = opt.minimize(e, "nonquadratic")
    b = opt.minimize(e, "quadratic")
    print(f"{e:>2} {a.x_star:14.10f} {a.value4:12.8f} {b.x_star:14.10f} {b.value4:12.8f} "
          f"{b.ratio:10.7f} {b1**e:12.8f}")

print()
for e in range(1, 6):
    br = opt.certified_bracket(e)
    print(f"e={e}: B_e^4 in ({float(br.lower):.8f}, {float(br.upper):.8f}) "
          f"inside ({br.stated[0]}, {br.stated[1]})")
print("real roots of 27y^3 - 498y^2 + 1164y - 722:", ", ".join(f"{r:.10f}" for r in opt.cubic_real_roots()))
