"""Domains, quadrature grids and sampled functions.

Three domains are supported: the full real line, a symmetric interval
``(-a, a)`` and the positive semiaxis ``(0, inf)``.  Unbounded domains are
truncated at a finite ``cutoff``.  Grids on symmetric domains are built by
mirroring one half so that ``node[i] == -node[n-1-i]`` and
``weight[i] == weight[n-1-i]`` hold bit for bit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

SEMIAXIS_DEFAULT_CUTOFF = 40.0


class DomainKind(enum.Enum):
    FULL_LINE = "fullline"
    INTERVAL = "interval"
    SEMIAXIS = "semiaxis"


def default_cutoff(kind: DomainKind, n: int) -> float:
    """Truncation radius used when none is given.

    On the full line the Fourier kernel phase reaches ``cutoff**2`` at the
    corner of the grid.  ``n`` Gauss nodes resolve it with margin while
    ``n >= 2 * cutoff**2``; beyond that the discrete Gram operator stops
    being contractive.
    """
    if kind is DomainKind.FULL_LINE:
        return math.sqrt(n / 2)
    if kind is DomainKind.SEMIAXIS:
        return SEMIAXIS_DEFAULT_CUTOFF
    raise ValueError("interval domains are not truncated")


@dataclass(frozen=True)
class DomainSpec:
    kind: DomainKind
    a: float | None = None
    cutoff: float | None = None

    def __post_init__(self):
        if not isinstance(self.kind, DomainKind):
            object.__setattr__(self, "kind", DomainKind(self.kind))
        if self.kind is DomainKind.INTERVAL:
            if self.a is None or not math.isfinite(self.a) or self.a <= 0:
                raise ValueError(f"interval half-width must be positive, got {self.a!r}")
        elif self.cutoff is not None and (not math.isfinite(self.cutoff) or self.cutoff <= 0):
            raise ValueError(f"cutoff must be positive, got {self.cutoff!r}")

    @classmethod
    def full_line(cls, cutoff: float | None = None) -> DomainSpec:
        return cls(DomainKind.FULL_LINE, cutoff=cutoff)

    @classmethod
    def interval(cls, a: float) -> DomainSpec:
        return cls(DomainKind.INTERVAL, a=a)

    @classmethod
    def semiaxis(cls, cutoff: float | None = None) -> DomainSpec:
        return cls(DomainKind.SEMIAXIS, cutoff=cutoff)

    @property
    def symmetric(self) -> bool:
        return self.kind is not DomainKind.SEMIAXIS

    def resolved_cutoff(self, n: int) -> float | None:
        if self.kind is DomainKind.INTERVAL:
            return None
        return self.cutoff if self.cutoff is not None else default_cutoff(self.kind, n)

    def bounds(self, n: int) -> tuple[float, float]:
        """Finite ``(lo, hi)`` covered by a grid of ``n`` nodes."""
        if self.kind is DomainKind.INTERVAL:
            return -self.a, self.a
        c = self.resolved_cutoff(n)
        return (-c, c) if self.kind is DomainKind.FULL_LINE else (0.0, c)

    def contains(self, t: float) -> bool:
        if self.kind is DomainKind.FULL_LINE:
            return math.isfinite(t)
        if self.kind is DomainKind.INTERVAL:
            return -self.a < t < self.a
        return 0.0 < t < math.inf


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    nodes: np.ndarray
    weights: np.ndarray
    symmetric: bool
    domain: DomainSpec | None = None

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if not np.all(np.isfinite(nodes)) or not np.all(np.isfinite(weights)):
            raise ValueError("grid contains non-finite values")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if self.symmetric and not (
            np.array_equal(nodes, -nodes[::-1]) and np.array_equal(weights, weights[::-1])
        ):
            raise ValueError("grid flagged symmetric but nodes/weights are not mirrored")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.nodes.size

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def sqrt_weights(self) -> np.ndarray:
        return np.sqrt(self.weights)

    @property
    def cutoff(self) -> float | None:
        if self.domain is None:
            return None
        return self.domain.resolved_cutoff(self.n)

    def reversal(self) -> np.ndarray:
        """Index map ``i -> n-1-i`` pairing each node with its mirror image."""
        self.require_symmetric()
        return np.arange(self.n)[::-1].copy()

    def require_symmetric(self) -> None:
        if not self.symmetric:
            raise ValueError("operation needs a symmetric grid")

    def integrate(self, values) -> complex:
        return np.dot(self.weights, np.asarray(values))

    def metadata(self) -> dict:
        d = self.domain
        return {
            "kind": d.kind.value if d else None,
            "a": d.a if d else None,
            "cutoff": self.cutoff,
            "n": self.n,
        }


def _gauss_half(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Positive half of the n-point Gauss-Legendre rule on (-1, 1), ascending."""
    x, w = leggauss(n)
    return x[n // 2:].copy(), w[n // 2:].copy()


def _mirrored(half_nodes: np.ndarray, half_weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.concatenate([-half_nodes[::-1], half_nodes]),
        np.concatenate([half_weights[::-1], half_weights]),
    )


def build_grid(domain: DomainSpec, n: int) -> QuadratureGrid:
    """Gauss-Legendre grid with ``n`` nodes adapted to ``domain``.

    Symmetric domains get a mirrored rule and require even ``n``.  The
    semiaxis rule maps Gauss nodes ``u`` on (0, 1) through
    ``xi = cutoff * u**2`` which clusters nodes near the origin.
    """
    if isinstance(n, bool) or int(n) != n or n < 4:
        raise ValueError(f"need an integer node count >= 4, got {n!r}")
    n = int(n)
    if domain.kind is DomainKind.SEMIAXIS:
        c = domain.resolved_cutoff(n)
        u, w = leggauss(n)
        u = 0.5 * (u + 1.0)
        w = 0.5 * w
        return QuadratureGrid(c * u * u, w * 2.0 * c * u, symmetric=False, domain=domain)

    if n % 2:
        raise ValueError(f"symmetric domains need an even node count, got {n}")
    scale = domain.a if domain.kind is DomainKind.INTERVAL else domain.resolved_cutoff(n)
    hx, hw = _gauss_half(n)
    nodes, weights = _mirrored(scale * hx, scale * hw)
    return QuadratureGrid(nodes, weights, symmetric=True, domain=domain)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    values: np.ndarray
    grid: QuadratureGrid

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, f, grid: QuadratureGrid) -> SampledFunction:
        return cls(f(grid.nodes), grid)

    @classmethod
    def from_weighted(cls, v, grid: QuadratureGrid) -> SampledFunction:
        return cls(np.asarray(v) / grid.sqrt_weights, grid)

    def weighted(self) -> np.ndarray:
        """Coordinates ``sqrt(w_k) * x(node_k)`` used by the operator matrices."""
        return self.grid.sqrt_weights * self.values

    def __add__(self, other: SampledFunction) -> SampledFunction:
        _same_grid(self, other)
        return SampledFunction(self.values + other.values, self.grid)

    def __sub__(self, other: SampledFunction) -> SampledFunction:
        _same_grid(self, other)
        return SampledFunction(self.values - other.values, self.grid)


def _same_grid(f: SampledFunction, g: SampledFunction) -> None:
    if f.grid is g.grid:
        return
    if not (
        np.array_equal(f.grid.nodes, g.grid.nodes)
        and np.array_equal(f.grid.weights, g.grid.weights)
    ):
        raise ValueError("functions live on different grids")


def inner_product(f: SampledFunction, g: SampledFunction) -> complex:
    """Quadrature approximation of the L2 inner product, conjugate-linear in ``f``."""
    _same_grid(f, g)
    return complex(np.sum(f.grid.weights * np.conj(f.values) * g.values))


def project_even_odd(f: SampledFunction) -> tuple[SampledFunction, SampledFunction]:
    f.grid.require_symmetric()
    rev = f.values[::-1]
    even = SampledFunction((f.values + rev) / 2, f.grid)
    odd = SampledFunction((f.values - rev) / 2, f.grid)
    return even, odd
