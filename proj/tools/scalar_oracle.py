#!/usr/bin/env python3
"""Closed-form region extremes for a scalar nearest-neighbour model.

With one phase the interior generating function is
    a(t1, t2) = p00 + pR e^t1 + pL e^-t1 + pU e^t2 + pD e^-t2
and each extreme of {a < 1} solves a quadratic after the other
coordinate is minimized out. Independent cross-check of the region code.
"""
import json
import math
import sys

path = sys.argv[1] if len(sys.argv) > 1 else "data/m1.json"
blocks = json.load(open(path))["blocks"]["b12"]


def w(key):
    return blocks.get(key, [[0.0]])[0][0]


p00, pR, pL = w("0,0"), w("1,0"), w("-1,0")
pU, pD = w("0,1"), w("0,-1")


def roots(c, up, down):
    d = math.sqrt(c * c - 4.0 * up * down)
    return (c - d) / (2.0 * up), (c + d) / (2.0 * up)


lo1, hi1 = roots(1.0 - p00 - 2.0 * math.sqrt(pU * pD), pR, pL)
lo2, hi2 = roots(1.0 - p00 - pR - pL, pU, pD)
print(json.dumps({
    "theta1_min": math.log(lo1), "theta1_max": math.log(hi1),
    "eta2_lower_at_0": math.log(lo2), "eta2_upper_at_0": math.log(hi2),
}))
