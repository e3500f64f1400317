"""Dispersion-free value maps: definite outcomes that average to quantum stats.

A qubit in a pure state has no definite answer for a generic projective
question; the value map construction pretends otherwise.  For every state s
and measurement axis m it assigns a definite 0-or-1 answer at each point of a
hidden interval, arranged so that the *average* answer over the interval is
exactly the quantum probability (1 + s.m)/2.
"""

import numpy as np

from hvlab import PureState, bell_value, expectation, integrate, projector

rng = np.random.default_rng(1)

z = np.array([0.0, 0.0, 1.0])
psi = PureState(z)

print("state: Bloch vector", psi.bloch.tolist())
print()

for label, axis in [
    ("same axis      ", np.array([0.0, 0.0, 1.0])),
    ("tilted (s.m=0.6)", np.array([0.8, 0.0, 0.6])),
    ("perpendicular  ", np.array([1.0, 0.0, 0.0])),
    ("opposite       ", np.array([0.0, 0.0, -1.0])),
]:
    assignment = bell_value(psi, axis)
    quantum = expectation(psi, projector(axis))
    print(f"axis {label} -> map {assignment.values}")
    print(
        f"     integral {integrate(assignment.values):.6f}"
        f"  vs quantum probability {quantum:.6f}"
    )
print()

print("The map is always 0/1-valued (dispersion-free): at every hidden point")
print("the measurement 'already has' a definite outcome; randomness only")
print("enters through the uniform measure on the interval.")
print()

worst = 0.0
for _ in range(100_000):
    s = rng.normal(size=3)
    s /= np.sqrt(s @ s)
    m = rng.normal(size=3)
    m /= np.sqrt(m @ m)
    state = PureState(s)
    worst = max(worst, abs(bell_value(state, m).integral() - expectation(state, projector(m))))
print(f"measure reproduction over 10^5 random (state, axis) pairs: worst error {worst:.3e}")
print("(exact interval arithmetic; no quadrature involved)")
