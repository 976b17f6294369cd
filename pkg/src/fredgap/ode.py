"""Adaptive Cash-Karp Runge-Kutta integration with a per-step monitor hook.

The monitor lets callers reject accepted-by-error-control steps (used to
keep sigma-form trajectories on the manifold of the undifferentiated
equation) or raise their own guards (invariant drift, pole collision).
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .exceptions import BlowUp, NoConvergence

_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0),
    (-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0),
    (1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0),
)
_C = (0.0, 0.2, 0.3, 0.6, 1.0, 0.875)
_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_B4 = (2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0, 277.0 / 14336.0, 0.25)


def rk_integrate(
    f: Callable[[float, np.ndarray], np.ndarray],
    t0: float,
    y0: np.ndarray,
    t1: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    targets: Sequence[float] | None = None,
    monitor: Callable[[float, np.ndarray], bool] | None = None,
    blowup: float = 1e6,
    max_steps: int = 200_000,
) -> list[tuple[float, np.ndarray]]:
    """Integrate y' = f(t, y) from t0 to t1, recording states at `targets`.

    Targets must be ordered in the direction of integration (t0 and t1 may
    be included).  The monitor is called on every step candidate within
    tolerance; returning False rejects the step, which is retried with half
    the size.  Raises BlowUp when |y| exceeds `blowup`.
    """
    direction = 1.0 if t1 >= t0 else -1.0
    y = np.array(y0, dtype=float)
    t = float(t0)
    out: list[tuple[float, np.ndarray]] = []
    queue = [float(v) for v in (targets if targets is not None else [t1])]
    for a, b in zip(queue, queue[1:]):
        if (b - a) * direction < 0:
            raise ValueError("targets must be ordered in the direction of integration")
    qi = 0
    while qi < len(queue) and queue[qi] == t:
        out.append((t, y.copy()))
        qi += 1

    h = direction * min(0.1, abs(t1 - t0) / 10.0 + 1e-12)
    hmin = 1e-12 * max(1.0, abs(t1 - t0))
    k = [np.empty_like(y) for _ in range(6)]
    steps = 0
    while (t1 - t) * direction > 0:
        if steps > max_steps:
            raise NoConvergence("step budget exhausted in rk_integrate")
        steps += 1
        if (t + h - t1) * direction > 0:
            h = t1 - t
        if qi < len(queue) and (t + h - queue[qi]) * direction > 0:
            h = queue[qi] - t
        k[0] = f(t, y)
        for i in range(1, 6):
            yi = y + h * sum(_A[i][j] * k[j] for j in range(i))
            k[i] = f(t + _C[i] * h, yi)
        y5 = y + h * sum(b * ki for b, ki in zip(_B5, k))
        y4 = y + h * sum(b * ki for b, ki in zip(_B4, k))
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err = float(np.max(np.abs(y5 - y4) / scale))
        accept = err <= 1.0
        if accept and monitor is not None and not monitor(t + h, y5):
            accept = False
            h *= 0.5
            if abs(h) < hmin:
                raise NoConvergence("monitor kept rejecting steps below minimum size")
            continue
        if accept:
            t += h
            y = y5
            if float(np.max(np.abs(y))) > blowup:
                raise BlowUp(f"|state| exceeded {blowup:g} at t = {t}")
            while qi < len(queue) and abs(queue[qi] - t) <= 1e-12 * max(1.0, abs(t)):
                out.append((t, y.copy()))
                qi += 1
        fac = 0.9 * err ** -0.2 if err > 0 else 5.0
        h *= min(5.0, max(0.2, fac))
        if abs(h) < hmin:
            raise NoConvergence("step size underflow in rk_integrate")
    return out
