#!/usr/bin/env python3
"""Recomputes every hand-frozen constant used by the C++ test suites.

Each section derives a value independently of the library implementation
(closed forms, exact rational arithmetic, or brute-force linear algebra)
and asserts the number that the tests pin. Run it whenever a frozen
constant looks suspicious:

    python3 tests/oracles/reference_values.py
"""

import math
from fractions import Fraction

import numpy as np

CHECKS = []


def check(name, got, expected, tol=0.0):
    ok = abs(got - expected) <= tol if tol else got == expected
    CHECKS.append((name, ok, got, expected))
    assert ok, f"{name}: got {got!r}, expected {expected!r}"


# ---------------------------------------------------------------------------
# difference-of-gamma response, defaults alpha=1 a1=6 a2=12 b1=1 b2=0.9 c=0.35
# peak delays d1 = a1*b1, d2 = a2*b2

def response(t, alpha=1.0, a1=6.0, a2=12.0, b1=1.0, b2=0.9, c=0.35, d1=None, d2=None):
    if t <= 0.0:
        return 0.0
    d1 = a1 * b1 if d1 is None else d1
    d2 = a2 * b2 if d2 is None else d2
    pos = (t / d1) ** a1 * math.exp(-(t - d1) / b1)
    neg = (t / d2) ** a2 * math.exp(-(t - d2) / b2)
    return alpha * pos - c * neg


check("response at t=6", response(6.0), 0.937333531683703, tol=1e-15)
check("response at t=0", response(0.0), 0.0)
check("response vanishes by t=60", abs(response(60.0)) < 1e-6, True)
check("undershoot at t=15", response(15.0) < 0.0, True)

# quadratic-rise regressor ((t-d)/tau)^2 exp(-(t-d)/tau): peak where u = 2,
# i.e. t = delta + 2*tau = 5.5 s -> sample 11 at a 0.5 s step, value 4 e^-2
check("quadratic-rise peak value", 2.0**2 * math.exp(-2.0), 4.0 * math.exp(-2.0))
check("quadratic-rise peak sample", round((2.5 + 2.0 * 1.5) / 0.5), 11)

# ---------------------------------------------------------------------------
# least-squares line removal, exact residuals via rational arithmetic

def detrend_exact(row):
    n = len(row)
    ts = [Fraction(t) for t in range(n)]
    ys = [Fraction(y) for y in row]
    t_mean = sum(ts) / n
    y_mean = sum(ys) / n
    slope = sum((t - t_mean) * (y - y_mean) for t, y in zip(ts, ys)) / sum(
        (t - t_mean) ** 2 for t in ts
    )
    intercept = y_mean - slope * t_mean
    return [y - (intercept + slope * t) for t, y in zip(ts, ys)]


check(
    "detrend residual, 4 alternating samples 1,0,...",
    detrend_exact([1, 0, 1, 0]),
    [Fraction(1, 5), Fraction(-3, 5), Fraction(3, 5), Fraction(-1, 5)],
)
check(
    "detrend residual, 8 alternating samples 1,0,...",
    detrend_exact([1, 0, 1, 0, 1, 0, 1, 0]),
    [
        Fraction(1, 3),
        Fraction(-13, 21),
        Fraction(3, 7),
        Fraction(-11, 21),
        Fraction(11, 21),
        Fraction(-3, 7),
        Fraction(13, 21),
        Fraction(-1, 3),
    ],
)

# ---------------------------------------------------------------------------
# expected first-passage steps by first-step analysis: remove the target
# row/column of the transition matrix and solve (I - Q) h = 1

def hitting_matrix(weights):
    w = np.asarray(weights, dtype=float)
    p = w / w.sum(axis=1, keepdims=True)
    n = len(w)
    out = np.zeros((n, n))
    for j in range(n):
        keep = [i for i in range(n) if i != j]
        q = p[np.ix_(keep, keep)]
        h = np.linalg.solve(np.eye(n - 1) - q, np.ones(n - 1))
        for row, i in enumerate(keep):
            out[i, j] = h[row]
    return out


path3 = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
check(
    "three-node path hitting matrix",
    np.allclose(hitting_matrix(path3), [[0, 1, 4], [3, 0, 3], [4, 1, 0]], atol=1e-12),
    True,
)

path5 = np.diag([1.0] * 4, 1) + np.diag([1.0] * 4, -1)
h5 = hitting_matrix(path5)
check("five-node path end to end", round(h5[0, 4], 9), 16.0)
check("five-node path two steps", round(h5[0, 2], 9), 4.0)

cycle6 = np.zeros((6, 6))
for i in range(6):
    cycle6[i, (i + 1) % 6] = cycle6[(i + 1) % 6, i] = 1.0
h6 = hitting_matrix(cycle6)
for k in range(1, 6):
    check(f"six-cycle hitting 0->{k} equals k(6-k)", round(h6[0, k], 9), k * (6 - k))

# commute distances on the unit path 1-2-3: kappa = H(i,j) + H(j,i)
h3 = hitting_matrix(path3)
check("path commute adjacent", round(h3[0, 1] + h3[1, 0], 9), 4.0)
check("path commute end to end", round(h3[0, 2] + h3[2, 0], 9), 8.0)

# two-node commute time and embedding length
w2 = np.array([[0.0, 1.0], [1.0, 0.0]])
h2 = hitting_matrix(w2)
check("two-node commute time", round(h2[0, 1] + h2[1, 0], 9), 2.0)
# squared embedding distance equals the commute time 2; by symmetry the two
# coordinates sit at +/- 1/sqrt(2)
check("two-node coordinate length", math.sqrt(2.0) / 2.0, 1.0 / math.sqrt(2.0), tol=1e-15)

# ---------------------------------------------------------------------------
# student-t upper tail closed forms, cross-checked against scipy

from scipy import special, stats  # noqa: E402

ts = [-3.0, -1.0, -0.25, 0.0, 0.5, 1.0, 2.5]
for t in ts:
    check(
        f"t survival dof=1 at {t}",
        0.5 - math.atan(t) / math.pi,
        stats.t.sf(t, 1),
        tol=1e-14,
    )
    check(
        f"t survival dof=2 at {t}",
        0.5 * (1.0 - t / math.sqrt(2.0 + t * t)),
        stats.t.sf(t, 2),
        tol=1e-14,
    )

# regularized incomplete beta special cases used by the tests
for x in [0.0, 0.1, 0.5, 0.9, 1.0]:
    check(f"I_x(1,1) at {x}", x, special.betainc(1, 1, x), tol=1e-14)
    check(f"I_x(2,1) at {x}", x * x, special.betainc(2, 1, x), tol=1e-14)
    check(f"I_x(1,3) at {x}", 1 - (1 - x) ** 3, special.betainc(1, 3, x), tol=1e-14)
check("I_0.5(a,a) symmetry point", special.betainc(3.7, 3.7, 0.5), 0.5, tol=1e-14)

# ---------------------------------------------------------------------------
# order-1 autoregression with coefficient rho and unit innovations:
# stationary variance sigma^2 / (1 - rho^2)

check("ar(1) stationary variance at rho=0.3", 1.0 / (1.0 - 0.3**2), 1.0 / 0.91, tol=1e-15)

# hand-built threshold sweep: scores .9/.8/.7/.6 against truth 1/0/1/0
# -> staircase (0,0) (0,.5) (.5,.5) (.5,1) (1,1), area 0.75
check("hand staircase area", 0.5 * 0.5 + 0.5 * 1.0, 0.75)


if __name__ == "__main__":
    width = max(len(name) for name, *_ in CHECKS)
    for name, ok, got, expected in CHECKS:
        print(f"{name:<{width}}  {'ok' if ok else 'MISMATCH'}")
    print(f"{len(CHECKS)} reference values verified")
