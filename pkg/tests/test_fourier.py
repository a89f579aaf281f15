import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from tfo.domain import DomainSpec, QuadratureGrid, build_grid
from tfo.fourier import (
    build_adjoint,
    build_cosine_transform,
    build_gram,
    build_parity,
    build_sine_transform,
    build_truncated_fourier,
    sinc_gram_kernel,
)
from tfo.operators import Storage, sym_tridiag


def _interval(a=1.0, n=64):
    return build_grid(DomainSpec.interval(a), n)


def test_kernel_matches_direct_formula():
    g = _interval(1.3, 12)
    F = build_truncated_fourier(g).data
    for j in range(12):
        for k in range(12):
            expect = math.sqrt(g.weights[j] * g.weights[k]) * complex(
                math.cos(g.nodes[j] * g.nodes[k]), math.sin(g.nodes[j] * g.nodes[k])) / math.sqrt(2 * math.pi)
            assert abs(F[j, k] - expect) <= 1e-16


def test_action_on_function_matches_quadrature():
    # (F x)(t) = int_{-1}^{1} x(xi) e^{i t xi} dxi / sqrt(2 pi), sampled at the nodes
    g = _interval(1.0, 64)
    x = np.exp(-g.nodes**2 / 2)
    y = (build_truncated_fourier(g) @ (g.sqrt_weights * x)) / g.sqrt_weights
    for j in (0, 7, 31, 50):
        t = g.nodes[j]
        re = integrate.quad(lambda s: math.exp(-s * s / 2) * math.cos(t * s), -1, 1, epsabs=1e-14)[0]
        im = integrate.quad(lambda s: math.exp(-s * s / 2) * math.sin(t * s), -1, 1, epsabs=1e-14)[0]
        assert abs(y[j] - complex(re, im) / math.sqrt(2 * math.pi)) <= 1e-14


def test_parity_identities_are_exact():
    g = _interval(1.0, 64)
    F = build_truncated_fourier(g).data
    J = build_parity(g).data
    Fs = build_adjoint(build_truncated_fourier(g)).data
    assert np.max(np.abs(J @ J - np.eye(64))) == 0.0
    assert np.max(np.abs(F @ J - J @ F)) == 0.0
    assert np.max(np.abs(Fs - F @ J)) == 0.0


def test_euler_split():
    g = _interval(2.0, 40)
    F = build_truncated_fourier(g).data
    C = build_cosine_transform(g).to_dense()
    S = build_sine_transform(g).to_dense()
    assert np.max(np.abs(F - (C + 1j * S))) <= 1e-16
    assert np.array_equal(C, C.T) and np.array_equal(S, S.T)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_gram_matches_sinc_kernel(a):
    g = _interval(a, 64)
    G = build_gram(build_truncated_fourier(g)).to_dense()
    assert np.max(np.abs(G - sinc_gram_kernel(g, a))) <= 1e-14


def test_gram_is_real_symmetric_storage():
    G = build_gram(build_truncated_fourier(_interval()))
    assert G.storage is Storage.DENSE_REAL_SYM


def test_gram_rejects_asymmetric_grid():
    g = build_grid(DomainSpec.semiaxis(), 40)
    with pytest.raises(ValueError, match="imaginary"):
        build_gram(build_truncated_fourier(g))


def test_parity_needs_symmetric_grid():
    with pytest.raises(ValueError):
        build_parity(build_grid(DomainSpec.semiaxis(), 8))


def test_adjoint_rejects_tridiagonal():
    with pytest.raises(TypeError):
        build_adjoint(sym_tridiag([1.0, 2.0], [0.5]))


@given(st.integers(4, 30).map(lambda k: 2 * k), st.floats(0.2, 3.0))
def test_parity_commutes_on_any_interval(n, a):
    g = _interval(a, n)
    F = build_truncated_fourier(g).data
    J = build_parity(g).data
    assert np.max(np.abs(F @ J - J @ F)) == 0.0
    assert np.max(np.abs(F.conj().T - F @ J)) == 0.0


@given(st.integers(8, 30).map(lambda k: 2 * k), st.floats(0.2, 2.5))
def test_gram_spectrum_in_unit_interval(n, a):
    # resolved grids only: the kernel phase a^2 must be well sampled
    g = _interval(a, n)
    ev = np.linalg.eigvalsh(build_gram(build_truncated_fourier(g)).to_dense())
    assert ev.min() >= -1e-10
    assert ev.max() <= 1 + 1e-10


def test_broken_mirror_breaks_parity_commutation():
    g = _interval(1.0, 32)
    nodes = g.nodes.copy()
    nodes[-1] -= 1e-3
    bent = QuadratureGrid(nodes, g.weights, symmetric=False)
    F = build_truncated_fourier(bent).data
    J = np.eye(32)[::-1]
    assert np.max(np.abs(F @ J - J @ F)) > 1e6 * 1e-14
