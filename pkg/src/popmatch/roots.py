"""Bracketing root finder shared by the transition-point and fixed-point solvers."""

from __future__ import annotations

from typing import Callable


class BracketError(ValueError):
    pass


def bisect(func: Callable[[float], float], lo: float, hi: float, max_iter: int = 200) -> float:
    """Root of ``func`` in ``[lo, hi]`` by bisection down to float resolution.

    Requires a strict sign change.  Returns the endpoint with the smaller
    residual once the bracket cannot be halved any further.
    """
    flo, fhi = func(lo), func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = func(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return lo if abs(flo) <= abs(fhi) else hi
