import numpy as np


def smooth_step(t):
    """S(t) = g(t) / (g(t) + g(1 - t)) with g(t) = exp(-1/t) for t > 0, else 0.

    Clipped to [0, 1]; exactly 0 at t <= 0 and exactly 1 at t >= 1.
    """
    t = np.clip(np.asarray(t, dtype=np.float64), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        left = np.where(t > 0.0, np.exp(-1.0 / np.where(t > 0.0, t, 1.0)), 0.0)
        right = np.where(t < 1.0, np.exp(-1.0 / np.where(t < 1.0, 1.0 - t, 1.0)), 0.0)
    return left / (left + right)


def plateau(x, edge: float = 2.0):
    """Even profile equal to 1 on |x| <= 1 and 0 on |x| >= edge."""
    ax = np.abs(np.asarray(x, dtype=np.float64))
    return smooth_step((edge - ax) / (edge - 1.0))
