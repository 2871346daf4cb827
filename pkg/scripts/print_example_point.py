#!/usr/bin/env python3
"""Print the explicit rational point on E_8 over F_49(t) and its translates.

Builds the q = 7 tower, takes the distinguished line datum (a a primitive
sixth root of unity, b a primitive twelfth root with b^2 = a^2 + 1), pushes
the line through the dominant map to E_8 : y^2 + xy - t^8 y = x^3, and
prints the resulting point, its defining degrees, and the on-curve check
for all eight mu_8-translates (t -> zeta t).

Example:
    python3 scripts/print_example_point.py
"""

from fermatlines.efield import construct_point, mu_d_translate
from fermatlines.fermat import line_for_thm1
from fermatlines.gf import make_field


def main() -> int:
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    print(f"q = {ctx.q}, d = {ctx.d}, curve: y^2 + x*y - t^{ctx.d}*y = x^3")
    print(f"line datum: a = {L.a}, b = {L.b}, c = b^2 = {L.c}")
    print()

    P = construct_point(ctx, L)
    print("P_x =", P.x.pretty())
    print("P_y =", P.y.pretty())
    print(
        f"degrees: x = {P.x.num.degree}/{P.x.den.degree}, "
        f"y = {P.y.num.degree}/{P.y.den.degree}"
    )
    print("on curve:", P.on_curve())
    print()

    zeta = ctx.mu_d_gen()
    print(f"mu_{ctx.d} translates (t -> zeta^j t):")
    for j in range(ctx.d):
        T = mu_d_translate(ctx, P, zeta**j)
        tag = " (= P)" if T == P else ""
        print(f"  j = {j}: on curve {T.on_curve()}{tag}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
