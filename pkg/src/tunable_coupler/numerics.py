"""Scalar root finding, peak/half-width location and phase unwrapping."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import optimize

DEFAULT_REL_TOL = 1e-10
MIN_REL_TOL = 1e-14


class NumericsError(RuntimeError):
    """A numerical procedure could not produce a trustworthy answer."""


class BracketError(NumericsError):
    pass


class PoleError(BracketError):
    """The sign change inside a bracket comes from a pole, not a root."""


class NonFiniteError(NumericsError):
    def __init__(self, x: float, value: float):
        super().__init__(f"function returned {value!r} at x={x!r}")
        self.x = x
        self.value = value


class PeakNotBracketed(NumericsError):
    def __init__(self, message: str = "peak not bracketed"):
        super().__init__(message)


class HalfWidthNotBracketed(NumericsError):
    def __init__(self, message: str = "half width not bracketed"):
        super().__init__(message)


def _finite(f: Callable[[float], float], x: float) -> float:
    y = float(f(x))
    if not math.isfinite(y):
        raise NonFiniteError(x, y)
    return y


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise BracketError(f"bracket needs lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.f_lo * self.f_hi > 0:
            raise BracketError(
                f"no sign change on [{self.lo!r}, {self.hi!r}]: "
                f"f(lo)={self.f_lo!r}, f(hi)={self.f_hi!r}"
            )

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> Bracket:
        return cls(lo, hi, _finite(f, lo), _finite(f, hi))


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    rel_tol: float = DEFAULT_REL_TOL,
) -> float:
    """Root of ``f`` inside ``bracket``.

    Uses Brent's method (bisection safeguarding secant and inverse quadratic
    steps).  A root that turns out to be a pole, i.e. ``|f|`` at the
    converged point exceeds both endpoint magnitudes, raises
    :class:`PoleError`.
    """
    if not rel_tol >= MIN_REL_TOL:
        raise ValueError(f"rel_tol must be >= {MIN_REL_TOL}, got {rel_tol!r}")
    if bracket.f_lo == 0.0:
        return bracket.lo
    if bracket.f_hi == 0.0:
        return bracket.hi

    def g(x: float) -> float:
        return _finite(f, x)

    root = optimize.brentq(
        g, bracket.lo, bracket.hi, xtol=1e-300, rtol=max(rel_tol, 4 * np.finfo(float).eps),
        maxiter=2000,
    )
    f_root = abs(g(root))
    if f_root > max(abs(bracket.f_lo), abs(bracket.f_hi)):
        raise PoleError(
            f"sign change on [{bracket.lo!r}, {bracket.hi!r}] is a pole near x={root!r} "
            f"(|f|={f_root!r})"
        )
    return root


@dataclass(frozen=True)
class GridFunction:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and ys must be 1-d arrays of equal length")
        if xs.size < 2:
            raise ValueError("grid needs at least two samples")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("grid values must be finite")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self) -> int:
        return self.xs.size


def unwrap_phase(grid: GridFunction) -> GridFunction:
    """Remove 2*pi jumps so adjacent samples differ by at most pi."""
    return GridFunction(grid.xs, np.unwrap(grid.ys))


class PeakWidth(NamedTuple):
    x_peak: float
    x_left: float
    x_right: float
    y_peak: float

    @property
    def width(self) -> float:
        return self.x_right - self.x_left


def peak_and_halfmax(grid: GridFunction, refine: Callable[[float], float]) -> PeakWidth:
    """Locate the maximum of ``refine`` and its half-maximum abscissas.

    ``grid`` holds samples of ``refine``.  The best sample seeds a bounded
    scalar maximisation between its neighbours; the half-maximum points are
    then found by root finding on ``refine(x) - y_peak/2``, bracketed by
    the first samples below half maximum on each side.  Offsets from the
    peak are solved for instead of absolute abscissas so narrow peaks far
    from the origin keep their relative accuracy.
    """
    xs, ys = grid.xs, grid.ys
    i = int(np.argmax(ys))
    if i == 0 or i == xs.size - 1:
        raise PeakNotBracketed()

    x0 = xs[i]
    res = optimize.minimize_scalar(
        lambda u: -refine(x0 + u),
        bounds=(xs[i - 1] - x0, xs[i + 1] - x0),
        method="bounded",
        options={"xatol": 1e-10 * (xs[i + 1] - xs[i - 1])},
    )
    u_peak = float(res.x) if -res.fun >= ys[i] else 0.0
    x_peak = x0 + u_peak
    y_peak = float(refine(x_peak))
    half = y_peak / 2.0

    below = np.nonzero(ys < half)[0]
    left = below[below < i]
    right = below[below > i]
    if left.size == 0 or right.size == 0:
        raise HalfWidthNotBracketed()

    def offset(u: float) -> float:
        return refine(x_peak + u) - half

    u_left = find_root(offset, Bracket.of(offset, xs[left[-1]] - x_peak, 0.0))
    u_right = find_root(offset, Bracket.of(offset, 0.0, xs[right[0]] - x_peak))
    return PeakWidth(x_peak, x_peak + u_left, x_peak + u_right, y_peak)
