import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tfo.domain import (
    DomainKind,
    DomainSpec,
    QuadratureGrid,
    SampledFunction,
    build_grid,
    default_cutoff,
    inner_product,
    project_even_odd,
)

even_sizes = st.integers(2, 60).map(lambda k: 2 * k)


def test_interval_grid_integrates_polynomials():
    g = build_grid(DomainSpec.interval(1.0), 64)
    # Gauss rule: exact through degree 2n - 1
    assert g.integrate(np.ones(64)) == pytest.approx(2.0, abs=1e-14)
    assert g.integrate(g.nodes**2) == pytest.approx(2 / 3, abs=1e-14)
    assert g.integrate(g.nodes**3) == pytest.approx(0.0, abs=1e-15)


def test_full_line_grid_integrates_gaussian():
    g = build_grid(DomainSpec.full_line(8.0), 200)
    assert g.integrate(np.exp(-g.nodes**2)) == pytest.approx(math.sqrt(math.pi), abs=1e-13)


def test_semiaxis_grid_integrates_exponential():
    g = build_grid(DomainSpec.semiaxis(), 400)
    assert g.integrate(np.exp(-g.nodes)) == pytest.approx(1.0, abs=1e-12)
    assert g.nodes.min() > 0 and g.nodes.max() < 40
    assert not g.symmetric


def test_default_cutoffs():
    assert default_cutoff(DomainKind.SEMIAXIS, 400) == 40.0
    assert default_cutoff(DomainKind.FULL_LINE, 200) == pytest.approx(10.0)
    with pytest.raises(ValueError):
        default_cutoff(DomainKind.INTERVAL, 10)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_interval_rejects_bad_half_width(bad):
    with pytest.raises(ValueError):
        DomainSpec.interval(bad)


def test_symmetric_grid_needs_even_size():
    with pytest.raises(ValueError):
        build_grid(DomainSpec.interval(1.0), 63)
    with pytest.raises(ValueError):
        build_grid(DomainSpec.interval(1.0), 2)


def test_grid_validation():
    with pytest.raises(ValueError):
        QuadratureGrid(np.array([0.0, 1.0]), np.array([1.0, -1.0]), symmetric=False)
    with pytest.raises(ValueError):
        QuadratureGrid(np.array([1.0, 0.0]), np.array([1.0, 1.0]), symmetric=False)
    with pytest.raises(ValueError):
        QuadratureGrid(np.array([-1.0, 0.5]), np.array([1.0, 1.0]), symmetric=True)


def test_grid_arrays_are_read_only():
    g = build_grid(DomainSpec.interval(1.0), 8)
    with pytest.raises(ValueError):
        g.nodes[0] = 0.0


@given(even_sizes, st.floats(0.1, 10.0))
def test_symmetric_grids_mirror_exactly(n, a):
    g = build_grid(DomainSpec.interval(a), n)
    assert np.array_equal(g.nodes, -g.nodes[::-1])
    assert np.array_equal(g.weights, g.weights[::-1])
    assert np.all(np.abs(g.nodes) < a)
    assert g.integrate(np.ones(n)) == pytest.approx(2 * a, rel=1e-13)


@given(even_sizes, st.integers(0, 2**32 - 1))
def test_even_odd_split_is_orthogonal(n, seed):
    g = build_grid(DomainSpec.interval(1.0), n)
    rng = np.random.default_rng(seed)
    f = SampledFunction(rng.standard_normal(n) + 1j * rng.standard_normal(n), g)
    e, o = project_even_odd(f)
    assert np.array_equal(e.values, e.values[::-1])
    assert np.array_equal(o.values, -o.values[::-1])
    norm = inner_product(f, f).real
    assert abs(inner_product(e, o)) <= 1e-14 * norm
    assert np.max(np.abs((e + o).values - f.values)) <= 1e-15 * np.max(np.abs(f.values))


def test_weighted_coordinates_round_trip():
    g = build_grid(DomainSpec.full_line(6.0), 40)
    f = SampledFunction.from_callable(lambda t: np.exp(-t * t), g)
    v = f.weighted()
    assert np.vdot(v, v).real == pytest.approx(inner_product(f, f).real, rel=1e-15)
    back = SampledFunction.from_weighted(v, g)
    assert np.allclose(back.values, f.values, rtol=1e-15)


def test_inner_product_rejects_mismatched_grids():
    g1 = build_grid(DomainSpec.interval(1.0), 8)
    g2 = build_grid(DomainSpec.interval(2.0), 8)
    with pytest.raises(ValueError):
        inner_product(SampledFunction(np.ones(8), g1), SampledFunction(np.ones(8), g2))


def test_parity_split_needs_symmetric_grid():
    g = build_grid(DomainSpec.semiaxis(), 8)
    with pytest.raises(ValueError):
        project_even_odd(SampledFunction(np.ones(8), g))


def test_metadata():
    g = build_grid(DomainSpec.full_line(8.0), 20)
    assert g.metadata() == {"kind": "fullline", "a": None, "cutoff": 8.0, "n": 20}
