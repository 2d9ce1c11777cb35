#!/usr/bin/env python3
"""Grid scan pinning the curvature bound used for the sigmoid-squared loss.

Scans |d^2/dz^2 (1 - sigmoid(z))^2| on z in [-20, 20] with step 1e-4 using
central second differences of the loss value only, and prints the maximum.
The constant kSigmoidSqCurvatureBound in include/vropt/objective.hpp is this
value rounded up in its last digit.
"""

import math


def g(z: float) -> float:
    s = 1.0 / (1.0 + math.exp(-z))
    return (1.0 - s) ** 2


def main() -> None:
    h = 1e-4  # ~eps^(1/4): balances truncation against cancellation
    best_val, best_z = 0.0, 0.0
    steps = int(40.0 / 1e-4)
    for i in range(steps + 1):
        z = -20.0 + 1e-4 * i
        second = (g(z + h) - 2.0 * g(z) + g(z - h)) / (h * h)
        if abs(second) > best_val:
            best_val, best_z = abs(second), z
    print(f"max |g''(z)| = {best_val:.12f} at z = {best_z:.4f}")
    print("pinned constant: 0.15405857012136")


if __name__ == "__main__":
    main()
