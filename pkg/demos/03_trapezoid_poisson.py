"""Trapezoid rule on the real line: exact error laws, by Poisson summation.

For f(x) = 1/(1+x^2) the infinite trapezoid sum has the closed form
pi*coth(pi/h), so the lattice error pi*coth(pi/h) - pi is known exactly
and the Fourier-side bound 2B/(e^{2*pi*a/h} - 1) can be checked against
it digit by digit.  The sinc integrand shows the flip side: its
transform is compactly supported, so the rule is exact until h reaches
1, then the error jumps by a full Fourier period.
"""

import math

from lightningpoly import (
    FourierDecayProfile,
    closed_form_E1,
    closed_form_I1,
    closed_form_sinc,
    poisson_error_bound,
    trapezoid_real_line,
)


def runge(x: float) -> float:
    return 1.0 / (1.0 + x * x)


def main() -> None:
    profile = FourierDecayProfile(a=1.0, B=math.pi)
    print("f = 1/(1+x^2), integral = pi")
    print(f"{'h':>6} {'engine':>20} {'pi*coth(pi/h)':>20} "
          f"{'lattice error':>14} {'bound':>12}")
    for h in (2.0, 1.0, 0.5, 0.25):
        n_max = max(8, math.ceil(200.0 / h))
        got = trapezoid_real_line(runge, h, n_max, em_order=3)
        closed = closed_form_I1(h)
        print(f"{h:>6} {got.value:>20.15f} {closed:>20.15f} "
              f"{closed_form_E1(h):>14.3e} "
              f"{poisson_error_bound(profile, h):>12.3e}")

    print("\nHalving h squares the error term, up to the (e^x - 1) shape:")
    for h in (1.0, 0.5):
        ratio = closed_form_E1(h / 2.0) / closed_form_E1(h)
        law = math.expm1(2.0 * math.pi / h) / math.expm1(4.0 * math.pi / h)
        print(f"  E({h/2})/E({h}) = {ratio:.15e}   law: {law:.15e}")

    print("\nsinc integrand, integral = 1/2; lattice sum vs h:")
    for h in (0.3, 0.7, 0.999, 1.0, 1.5, 2.5):
        val = closed_form_sinc(h)
        note = "exact" if val == 0.5 else f"error {0.5 - val:+.1f}"
        print(f"  h = {h:<6} sum = {val:<6} ({note})")
    print("Below h=1 the rule is exact; at h=1 and h=2.5 whole periodized"
          "\ncopies of the box transform land on the origin and the sum jumps.")


if __name__ == "__main__":
    main()
