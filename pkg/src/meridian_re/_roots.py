"""Bracketing root finders."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import PreconditionError


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-14, maxiter: int = 200) -> float:
    """Root of ``f`` in ``[lo, hi]`` by plain bisection.

    Raises:
        PreconditionError: if ``f(lo)`` and ``f(hi)`` share a strict sign.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise PreconditionError(f"no sign change on [{lo!r}, {hi!r}]: f = {flo!r}, {fhi!r}")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid in (lo, hi):
            return mid
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0.0) == (flo < 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bracketed_roots(f: Callable[[float], float], lo: float, hi: float, samples: int = 64, xtol: float = 1e-14) -> list[float]:
    """All roots of ``f`` on ``[lo, hi]`` whose sign changes show up on a uniform scan."""
    grid = np.linspace(lo, hi, samples + 1)
    values = [f(t) for t in grid]
    roots = []
    for (t0, v0), (t1, v1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if v0 == 0.0:
            roots.append(float(t0))
        elif v0 * v1 < 0.0:
            roots.append(bisect(f, float(t0), float(t1), xtol))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def bisect_vectorized(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray, iterations: int = 80) -> np.ndarray:
    """Elementwise bisection over arrays of brackets; ``f`` must be vectorized.

    Each bracket must already straddle a sign change.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    flo = f(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        left = np.signbit(fmid) == np.signbit(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fmid, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)
