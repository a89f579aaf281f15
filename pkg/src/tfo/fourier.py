"""Discretized truncated Fourier operator and its relatives.

All matrices act in weighted coordinates.  The kernel carries the unitary
normalization ``exp(i t xi) / sqrt(2 pi)`` and both ``t`` and ``xi`` run over
the same grid, so the operator maps samples on ``E`` to samples on ``E``.
"""

from __future__ import annotations

import math

import numpy as np

from .domain import QuadratureGrid
from .operators import OperatorMatrix, Storage, dense_complex, dense_real_sym

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
GRAM_IMAG_TOL = 1e-13


def _weight_outer(grid: QuadratureGrid) -> np.ndarray:
    s = grid.sqrt_weights
    return INV_SQRT_2PI * np.outer(s, s)


def build_truncated_fourier(grid: QuadratureGrid) -> OperatorMatrix:
    phase = np.outer(grid.nodes, grid.nodes)
    # cos/sin instead of exp(1j*...) keeps cos(-x) == cos(x), sin(-x) == -sin(x) exact
    kernel = np.cos(phase) + 1j * np.sin(phase)
    return dense_complex(_weight_outer(grid) * kernel, label="F")


def build_adjoint(F: OperatorMatrix) -> OperatorMatrix:
    if F.storage is Storage.DENSE_REAL_SYM:
        return F
    if F.storage is not Storage.DENSE_COMPLEX:
        raise TypeError(f"adjoint needs a dense operator, got {F.storage}")
    return dense_complex(F.data.conj().T, label=(F.label + "*") if F.label else "")


def build_parity(grid: QuadratureGrid) -> OperatorMatrix:
    """Permutation matrix of ``x(t) -> x(-t)``.

    Mirrored weights are equal, so the weighting cancels and the matrix is a
    pure permutation.
    """
    grid.require_symmetric()
    n = grid.n
    J = np.zeros((n, n), dtype=complex)
    J[np.arange(n), grid.reversal()] = 1.0
    return dense_complex(J, label="J")


def build_cosine_transform(grid: QuadratureGrid) -> OperatorMatrix:
    grid.require_symmetric()
    return dense_real_sym(_weight_outer(grid) * np.cos(np.outer(grid.nodes, grid.nodes)), label="C")


def build_sine_transform(grid: QuadratureGrid) -> OperatorMatrix:
    grid.require_symmetric()
    return dense_real_sym(_weight_outer(grid) * np.sin(np.outer(grid.nodes, grid.nodes)), label="S")


def build_gram(F: OperatorMatrix) -> OperatorMatrix:
    """``F* F`` as a real symmetric matrix.

    On a symmetric grid ``F* F`` is real; a sizeable imaginary part means the
    grid symmetry is broken, so it raises instead of silently dropping it.
    """
    if F.storage is not Storage.DENSE_COMPLEX:
        raise TypeError(f"gram needs a dense complex operator, got {F.storage}")
    G = F.data.conj().T @ F.data
    imag = np.max(np.abs(G.imag)) if G.size else 0.0
    if imag > GRAM_IMAG_TOL:
        raise ValueError(f"gram matrix has imaginary part {imag:.3e}; grid not symmetric?")
    return dense_real_sym(G.real, label="F*F")


def sinc_gram_kernel(grid: QuadratureGrid, a: float) -> np.ndarray:
    """Closed-form Gram matrix for the interval ``(-a, a)``.

    The xi-integral of ``exp(i (t - s) xi) / (2 pi)`` over ``(-a, a)`` is
    ``sin(a (t - s)) / (pi (t - s))``; sampled with ``sqrt(w_j w_k)``.
    """
    d = grid.nodes[:, None] - grid.nodes[None, :]
    k = (a / math.pi) * np.sinc(a * d / math.pi)
    s = grid.sqrt_weights
    return np.outer(s, s) * k
