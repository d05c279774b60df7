"""Compensated summation of float64 arrays.

``compensated_sum`` is a cascaded pairwise sum in which every addition is an
error-free TwoSum; the rounding errors are collected and added back at the
end.  The result is as accurate as summing in roughly twice the working
precision, the order of operations is fixed by the array length alone (so the
result is bit-reproducible), and every pass is vectorised.
"""
from __future__ import annotations

import numpy as np


def two_sum(a, b):
    """s, e with s = fl(a + b) and a + b = s + e exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def compensated_sum(x) -> float:
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size == 0:
        return 0.0
    errors = []
    while x.size > 1:
        if x.size % 2:
            x = np.append(x, 0.0)
        s, e = two_sum(x[0::2], x[1::2])
        errors.append(e)
        x = s
    if not errors:
        return float(x[0])
    # each correction is below one ulp of a partial sum, so a plain pairwise
    # sum of them is accurate to O(eps^2) of the total
    return float(x[0] + np.sum(np.concatenate(errors)))

