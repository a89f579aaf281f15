"""Analytic test functions that carry their first two derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

Array = np.ndarray


@dataclass(frozen=True)
class SmoothFunction:
    """A function with exact first and second derivatives.

    The callables accept real scalars or arrays and may return complex values.
    """

    f: Callable[[Array], Array]
    df: Callable[[Array], Array]
    d2f: Callable[[Array], Array]
    name: str = ""

    def __call__(self, x):
        return self.f(x)

    def scaled(self, c: complex) -> SmoothFunction:
        return SmoothFunction(
            lambda x: c * self.f(x), lambda x: c * self.df(x), lambda x: c * self.d2f(x),
            name=f"{c}*{self.name}",
        )


def gaussian(alpha: float = 0.5) -> SmoothFunction:
    """``exp(-alpha xi^2)``."""
    def f(x):
        return np.exp(-alpha * np.square(x))

    return SmoothFunction(
        f,
        lambda x: -2 * alpha * x * f(x),
        lambda x: (4 * alpha**2 * np.square(x) - 2 * alpha) * f(x),
        name=f"exp(-{alpha}*xi^2)",
    )


def hermite_values(m: int, t) -> np.ndarray:
    """Orthonormal Hermite functions ``h_0 .. h_{m-1}`` at ``t``; shape ``(m, len(t))``.

    Uses the stable three-term recurrence for the normalized functions.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    H = np.zeros((m, t.size))
    if m == 0:
        return H
    H[0] = np.pi ** -0.25 * np.exp(-0.5 * t * t)
    if m > 1:
        H[1] = np.sqrt(2.0) * t * H[0]
    for k in range(2, m):
        H[k] = np.sqrt(2.0 / k) * t * H[k - 1] - np.sqrt((k - 1) / k) * H[k - 2]
    return H


def hermite_function(k: int) -> SmoothFunction:
    """Normalized Hermite function ``h_k``.

    Derivatives follow from ``h_k' = sqrt(k/2) h_{k-1} - sqrt((k+1)/2) h_{k+1}``
    and ``h_k'' = (t^2 - 2k - 1) h_k``.
    """
    def f(x):
        return _scalar_like(x, hermite_values(k + 1, x)[k])

    def df(x):
        H = hermite_values(k + 2, x)
        lower = H[k - 1] if k > 0 else 0.0
        return _scalar_like(x, np.sqrt(k / 2) * lower - np.sqrt((k + 1) / 2) * H[k + 1])

    def d2f(x):
        x_ = np.asarray(x, dtype=float)
        return (x_ * x_ - 2 * k - 1) * f(x)

    return SmoothFunction(f, df, d2f, name=f"h_{k}")


def _scalar_like(x, values):
    return values[0] if np.ndim(x) == 0 else values.reshape(np.shape(x))


def exp_decay() -> SmoothFunction:
    """``exp(-xi)`` on the semiaxis."""
    f = lambda x: np.exp(-np.asarray(x, dtype=float))  # noqa: E731
    return SmoothFunction(f, lambda x: -f(x), f, name="exp(-xi)")


def xi2_exp() -> SmoothFunction:
    """``xi^2 exp(-xi)`` on the semiaxis."""
    def f(x):
        x = np.asarray(x, dtype=float)
        return x * x * np.exp(-x)

    def df(x):
        x = np.asarray(x, dtype=float)
        return (2 * x - x * x) * np.exp(-x)

    def d2f(x):
        x = np.asarray(x, dtype=float)
        return (2 - 4 * x + x * x) * np.exp(-x)

    return SmoothFunction(f, df, d2f, name="xi^2*exp(-xi)")


def xi_exp() -> SmoothFunction:
    """``xi exp(-xi)``."""
    def f(x):
        x = np.asarray(x, dtype=float)
        return x * np.exp(-x)

    def df(x):
        x = np.asarray(x, dtype=float)
        return (1 - x) * np.exp(-x)

    def d2f(x):
        x = np.asarray(x, dtype=float)
        return (x - 2) * np.exp(-x)

    return SmoothFunction(f, df, d2f, name="xi*exp(-xi)")


def power(s: float) -> SmoothFunction:
    """``xi^s`` (only meaningful for ``xi > 0`` unless ``s`` is an integer)."""
    def f(x):
        return np.power(np.asarray(x, dtype=float), s)

    def df(x):
        return s * np.power(np.asarray(x, dtype=float), s - 1) if s != 0 else np.zeros_like(f(x))

    def d2f(x):
        if s in (0, 1):
            return np.zeros_like(f(x))
        return s * (s - 1) * np.power(np.asarray(x, dtype=float), s - 2)

    return SmoothFunction(f, df, d2f, name=f"xi^{s}")


def constant(c: float = 1.0) -> SmoothFunction:
    def f(x):
        return np.full(np.shape(x), c, dtype=float) if np.ndim(x) else float(c)

    def zero(x):
        return np.zeros(np.shape(x)) if np.ndim(x) else 0.0

    return SmoothFunction(f, zero, zero, name=f"{c}")


def parabola(a: float = 1.0) -> SmoothFunction:
    """``1 - xi^2 / a^2`` (equals ``1 - xi^2`` for ``a = 1``)."""
    def f(x):
        x = np.asarray(x, dtype=float)
        return 1 - x * x / a**2

    return SmoothFunction(
        f,
        lambda x: -2 * np.asarray(x, dtype=float) / a**2,
        lambda x: np.full(np.shape(x), -2 / a**2) if np.ndim(x) else -2 / a**2,
        name="1-xi^2/a^2",
    )


def log_endpoint(a: float = 1.0) -> SmoothFunction:
    """``ln(a - xi)``: logarithmic singularity at the right endpoint."""
    def f(x):
        return np.log(a - np.asarray(x, dtype=float))

    def df(x):
        return -1.0 / (a - np.asarray(x, dtype=float))

    def d2f(x):
        return -1.0 / np.square(a - np.asarray(x, dtype=float))

    return SmoothFunction(f, df, d2f, name="ln(a-xi)")


def inverse_endpoint(a: float = 1.0) -> SmoothFunction:
    """``1 / (a - xi)``: pole at the right endpoint."""
    def f(x):
        return 1.0 / (a - np.asarray(x, dtype=float))

    def df(x):
        return 1.0 / np.square(a - np.asarray(x, dtype=float))

    def d2f(x):
        return 2.0 / (a - np.asarray(x, dtype=float)) ** 3

    return SmoothFunction(f, df, d2f, name="1/(a-xi)")


def reciprocal() -> SmoothFunction:
    """``1 / xi``."""
    def f(x):
        return 1.0 / np.asarray(x, dtype=float)

    def df(x):
        return -1.0 / np.square(np.asarray(x, dtype=float))

    def d2f(x):
        return 2.0 / np.asarray(x, dtype=float) ** 3

    return SmoothFunction(f, df, d2f, name="1/xi")
