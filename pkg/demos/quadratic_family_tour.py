"""Tour of the quadratic family f_a = h_a + conj(g_a).

Every member shares the same weighted derivative modulus, so the whole
segment between two members sits on the unit sphere of the Bloch-type norm.
The script walks through the shared profile, the unit level circle, the
midpoint identity, and what the extreme-point screen makes of it.
"""

import numpy as np

from blochmap import (
    bloch_constant,
    counterexample_family,
    extreme_necessity,
    lambda_set,
    midpoint_check,
    mu,
)


def main():
    print("== shared derivative profile ==")
    radii = np.array([0.2, 1.0 / np.sqrt(3.0), 0.8])
    for a in (0.25, 1.0, 1.75):
        f = counterexample_family(a)
        vals = ", ".join(f"mu({r:.3f})={mu(f, r):.6f}" for r in radii)
        print(f"a={a:<5} beta={bloch_constant(f):.9f}  {vals}")
    print("mu depends only on |z|; the peak value 1 sits at |z| = 1/sqrt(3)")

    print()
    print("== unit level set ==")
    rep = lambda_set(counterexample_family(0.5))
    r = np.abs(rep.points)
    print(f"classification: {rep.classification.value}")
    print(f"{rep.points.size} located points, radius spread "
          f"[{r.min():.9f}, {r.max():.9f}] around 1/sqrt(3) = {1/np.sqrt(3):.9f}")

    print()
    print("== midpoint identity ==")
    f1 = counterexample_family(1.0)
    for a in (0.3, 0.8, 1.6):
        print(f"f_1 == (f_{a:g} + f_{2 - a:.1f}) / 2 ?  {midpoint_check(f1, a)}")
    print("f_1 is an average of distinct norm-one mappings, so the norm is not "
          "strictly convex on this segment")

    print()
    print("== extreme-point screen ==")
    rep = extreme_necessity(f1)
    print(f"verdict: {rep.verdict.value} (level set {rep.lambda_report.classification.value})")
    print("an infinite unit level set is necessary for extremity, so the screen "
          "cannot rule f_1 out; the midpoint identity above rules it out directly")


if __name__ == "__main__":
    main()
