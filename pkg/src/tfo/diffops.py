"""Second-order differential operators commuting with the truncated Fourier operator.

* Hermite, full line:   ``-x'' + t^2 x``
* prolate, ``(-a, a)``:  ``-((1 - t^2/a^2) x')' + t^2 x``
* semiaxis, ``(0, inf)``: ``-(t^2 x')'``

Also here: the integration-by-parts boundary terms and numerical checks of
the endpoint limits that make those terms vanish.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .domain import DomainKind, DomainSpec, QuadratureGrid
from .eigensolve import eig_sym_dense, eig_sym_tridiagonal
from .functions import SmoothFunction, hermite_values
from .operators import OperatorMatrix, dense_real_sym, sym_tridiag
from .report import Claim

HERMITE_TAIL_TOL = 1e-10
LIMIT_TOL = 1e-6
SEQUENCE_RATIO = 0.5
SEQUENCE_TERMS = 12


class DiffOpKind(enum.Enum):
    HERMITE = "hermite"
    PROLATE = "prolate"
    SEMIAXIS = "semiaxis"


@dataclass(frozen=True)
class DiffOpSpec:
    kind: DiffOpKind
    a: float | None = None

    def __post_init__(self):
        if not isinstance(self.kind, DiffOpKind):
            object.__setattr__(self, "kind", DiffOpKind(self.kind))
        if self.kind is DiffOpKind.PROLATE and (
            self.a is None or not math.isfinite(self.a) or self.a <= 0
        ):
            raise ValueError(f"prolate operator needs a > 0, got {self.a!r}")

    def domain(self, cutoff: float | None = None) -> DomainSpec:
        if self.kind is DiffOpKind.HERMITE:
            return DomainSpec.full_line(cutoff)
        if self.kind is DiffOpKind.PROLATE:
            return DomainSpec.interval(self.a)
        return DomainSpec.semiaxis(cutoff)


# --------------------------------------------------------------------------
# Hermite


def build_hermite_operator(grid: QuadratureGrid, m: int | None = None) -> OperatorMatrix:
    """Galerkin discretization of ``-d^2/dt^2 + t^2`` on the first ``m`` Hermite functions.

    The sampled Hermite functions are orthonormalized on the grid (QR in the
    natural order) and the operator is ``Q diag(2k+1) Q^T``; it vanishes on the
    orthogonal complement of the Galerkin space.  ``n_faithful`` counts the
    leading modes in the lower half whose value at the cutoff is below
    ``HERMITE_TAIL_TOL``, i.e. those the truncated grid represents.
    """
    if grid.domain is None or grid.domain.kind is not DomainKind.FULL_LINE:
        raise ValueError("Hermite operator lives on a full-line grid")
    n = grid.n
    m = n // 2 if m is None else int(m)
    if not 1 <= m <= n:
        raise ValueError(f"mode count must be in [1, {n}], got {m}")
    Phi = hermite_values(m, grid.nodes).T * grid.sqrt_weights[:, None]
    Q, R = np.linalg.qr(Phi)
    Q = Q * np.sign(np.diag(R))
    values = 2.0 * np.arange(m) + 1.0
    H = (Q * values) @ Q.T

    tails = np.abs(hermite_values(m, [grid.cutoff])[:, 0])
    bad = np.flatnonzero(tails[: m // 2] > HERMITE_TAIL_TOL)
    n_faithful = int(bad[0]) if bad.size else m // 2
    return dense_real_sym(H, modes=Q, mode_values=values, n_faithful=n_faithful,
                          label="hermite")


# --------------------------------------------------------------------------
# prolate


def _alpha(k):
    k = np.asarray(k, dtype=float)
    return k / np.sqrt(4.0 * k * k - 1.0)


def legendre_values(m: int, xi, a: float = 1.0) -> np.ndarray:
    """Legendre polynomials orthonormal on ``(-a, a)``, degrees ``0 .. m-1``; shape ``(m, len(xi))``."""
    u = np.atleast_1d(np.asarray(xi, dtype=float)) / a
    P = np.zeros((m, u.size))
    P[0] = math.sqrt(0.5)
    if m > 1:
        P[1] = u * P[0] / _alpha(1)
    for k in range(1, m - 1):
        P[k + 1] = (u * P[k] - _alpha(k) * P[k - 1]) / _alpha(k + 1)
    return P / math.sqrt(a)


def prolate_matrix(a: float, m: int) -> np.ndarray:
    """Full (pentadiagonal) Legendre-Galerkin matrix of the prolate operator."""
    k = np.arange(m)
    al_k = np.where(k > 0, _alpha(np.maximum(k, 1)), 0.0)
    al_k1 = _alpha(k + 1)
    diag = k * (k + 1) / a**2 + a**2 * (al_k1**2 + al_k**2)
    off2 = a**2 * _alpha(k[:-2] + 1) * _alpha(k[:-2] + 2)
    return np.diag(diag) + np.diag(off2, 2) + np.diag(off2, -2)


def build_prolate_operator(a: float, m: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Even- and odd-degree tridiagonal blocks of the prolate operator.

    In the orthonormal Legendre basis of ``(-a, a)`` the first-order part is
    diagonal, ``k(k+1)/a^2``, and multiplication by ``xi^2`` couples degree
    ``k`` to ``k +- 2``.  Parity splits the pentadiagonal matrix into two
    tridiagonal blocks.  The basis builds in the endpoint behaviour
    ``(xi -+ a) x' -> 0``.
    """
    if not (math.isfinite(a) and a > 0):
        raise ValueError(f"a must be positive, got {a!r}")
    if int(m) != m or m < 4:
        raise ValueError(f"need at least 4 modes, got {m!r}")
    m = int(m)
    T = prolate_matrix(a, m)
    blocks = []
    for parity in (0, 1):
        deg = np.arange(parity, m, 2)
        d = T[deg, deg]
        e = T[deg[:-1], deg[1:]]
        blocks.append(sym_tridiag(d, e, label="prolate-even" if parity == 0 else "prolate-odd",
                                  extra={"degrees": deg, "a": a}))
    return blocks[0], blocks[1]


@dataclass(frozen=True, eq=False)
class ProlateModes:
    """Joint eigen-data of the two prolate blocks, merged by ascending eigenvalue."""

    a: float
    chi: np.ndarray
    parity: np.ndarray        # 0 even, 1 odd
    coefficients: np.ndarray  # (m, n_modes) Legendre coefficients


def prolate_modes(a: float, m: int) -> ProlateModes:
    even, odd = build_prolate_operator(a, m)
    chis, parities, cols = [], [], []
    for parity, block in ((0, even), (1, odd)):
        dec = eig_sym_tridiagonal(block)
        deg = block.extra["degrees"]
        for j in range(len(dec)):
            c = np.zeros(m)
            c[deg] = dec.eigenvectors[:, j]
            chis.append(dec.eigenvalues[j])
            parities.append(parity)
            cols.append(c)
    order = np.argsort(chis, kind="stable")
    return ProlateModes(
        a=a,
        chi=np.asarray(chis)[order],
        parity=np.asarray(parities)[order],
        coefficients=np.column_stack(cols)[:, order],
    )


def _interval_a(grid: QuadratureGrid) -> float:
    if grid.domain is None or grid.domain.kind is not DomainKind.INTERVAL:
        raise ValueError("prolate operator lives on an interval grid")
    return grid.domain.a


def build_prolate_grid_operator(grid: QuadratureGrid, m: int | None = None) -> OperatorMatrix:
    """The prolate operator moved to weighted grid coordinates.

    ``P T P^T`` with ``P`` the weighted samples of the orthonormal Legendre
    polynomials; ``P`` has orthonormal columns exactly (Gauss rule) when
    ``m <= n``.  Modes are the merged block eigenvectors.
    """
    a = _interval_a(grid)
    n = grid.n
    m = n // 2 if m is None else int(m)
    if not 4 <= m <= n:
        raise ValueError(f"mode count must be in [4, {n}], got {m}")
    P = legendre_values(m, grid.nodes, a).T * grid.sqrt_weights[:, None]
    pm = prolate_modes(a, m)
    modes = P @ pm.coefficients
    L = (modes * pm.chi) @ modes.T
    return dense_real_sym(L, modes=modes, mode_values=pm.chi, n_faithful=m // 2,
                          label="prolate", extra={"parity": pm.parity, "a": a})


def build_dirichlet_prolate_operator(grid: QuadratureGrid, m: int | None = None) -> OperatorMatrix:
    """Prolate expression with the boundary condition ``x(+-a) = 0`` instead.

    A different selfadjoint realization of the same differential expression,
    kept as a negative control: Galerkin on ``P_k(u) - P_{k+2}(u)`` (all
    vanishing at ``u = +-1``), orthonormalized on the grid, with the weak form
    ``int (1 - xi^2/a^2) x' y' + xi^2 x y``.
    """
    from numpy.polynomial import legendre as leg

    a = _interval_a(grid)
    n = grid.n
    m = n // 2 if m is None else int(m)
    if not 4 <= m <= n - 2:
        raise ValueError(f"mode count must be in [4, {n - 2}], got {m}")
    u = grid.nodes / a
    vals = np.empty((n, m))
    ders = np.empty((n, m))
    for k in range(m):
        c = np.zeros(k + 3)
        c[k], c[k + 2] = 1.0, -1.0
        vals[:, k] = leg.legval(u, c)
        ders[:, k] = leg.legval(u, leg.legder(c)) / a
    sw = grid.sqrt_weights[:, None]
    Q, R = np.linalg.qr(vals * sw)
    w = grid.weights
    K = ders.T @ (((1 - grid.nodes**2 / a**2) * w)[:, None] * ders) \
        + vals.T @ ((grid.nodes**2 * w)[:, None] * vals)
    Rinv = np.linalg.inv(R)
    Kq = Rinv.T @ K @ Rinv
    dec = eig_sym_dense(0.5 * (Kq + Kq.T))
    modes = Q @ dec.eigenvectors
    L = (modes * dec.eigenvalues) @ modes.T
    return dense_real_sym(L, modes=modes, mode_values=dec.eigenvalues.copy(),
                          n_faithful=m // 2, label="prolate-dirichlet")


# --------------------------------------------------------------------------
# semiaxis


def build_semiaxis_operator(grid: QuadratureGrid) -> OperatorMatrix:
    """Weak form of ``-(xi^2 x')'`` with hat functions on the grid nodes.

    Element stiffness ``int xi^2 dxi / h^2`` is exact for linear hats; the
    quadrature weights serve as the lumped mass, giving ``W^-1/2 K W^-1/2``.
    No boundary rows: the natural condition is the one that commutes.
    """
    if grid.domain is None or grid.domain.kind is not DomainKind.SEMIAXIS:
        raise ValueError("semiaxis operator lives on a semiaxis grid")
    x = grid.nodes
    n = x.size
    h = np.diff(x)
    k = (x[1:] ** 3 - x[:-1] ** 3) / (3.0 * h * h)
    K = np.zeros((n, n))
    i = np.arange(n - 1)
    K[i, i] += k
    K[i + 1, i + 1] += k
    K[i, i + 1] -= k
    K[i + 1, i] -= k
    s = 1.0 / grid.sqrt_weights
    return dense_real_sym(s[:, None] * K * s[None, :], label="semiaxis")


# --------------------------------------------------------------------------
# pointwise evaluation


def apply_diffop_pointwise(spec: DiffOpSpec, x: SmoothFunction, t) -> complex:
    """Evaluate the differential expression at ``t`` from exact derivatives.

    The expressions have polynomial coefficients and are evaluated for any
    finite real ``t`` (the transformed side of the commutation relations is
    needed outside the domain, e.g. ``|t| > a``).
    """
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    v, d1, d2 = complex(x.f(t)), complex(x.df(t)), complex(x.d2f(t))
    if spec.kind is DiffOpKind.HERMITE:
        return -d2 + t * t * v
    if spec.kind is DiffOpKind.PROLATE:
        a2 = spec.a**2
        return -(1 - t * t / a2) * d2 + (2 * t / a2) * d1 + t * t * v
    return -t * t * d2 - 2 * t * d1


# --------------------------------------------------------------------------
# boundary terms


def _phase(t: float, xi: float) -> complex:
    return complex(math.cos(t * xi), math.sin(t * xi))


def boundary_terms_fullline(x: SmoothFunction, t: float, lo: float, hi: float) -> tuple[complex, complex]:
    """``[-x' e^{it xi}]_lo^hi`` and ``[it x e^{it xi}]_lo^hi``."""
    def at(xi):
        e = _phase(t, xi)
        return -complex(x.df(xi)) * e, 1j * t * complex(x.f(xi)) * e

    (d_hi, v_hi), (d_lo, v_lo) = at(hi), at(lo)
    return d_hi - d_lo, v_hi - v_lo


def boundary_terms_interval(x: SmoothFunction, a: float, t: float, eps: float) -> tuple[complex, complex]:
    """Bracket terms ``[-(1 - xi^2/a^2) x' e^{it xi}]`` and ``[it (1 - xi^2/a^2) x e^{it xi}]``
    evaluated between ``-a + eps`` and ``a - eps``."""
    if not 0 < eps < a:
        raise ValueError(f"need 0 < eps < a, got eps={eps}, a={a}")

    def at(xi):
        p = 1 - xi * xi / (a * a)
        e = _phase(t, xi)
        return -p * complex(x.df(xi)) * e, 1j * t * p * complex(x.f(xi)) * e

    (d_hi, v_hi), (d_lo, v_lo) = at(a - eps), at(-a + eps)
    return d_hi - d_lo, v_hi - v_lo


def boundary_terms_semiaxis(x: SmoothFunction, t: float, eps: float, N: float) -> tuple[complex, complex]:
    """Bracket terms ``[-xi^2 x' e^{it xi}]`` and ``[it xi^2 x e^{it xi}]`` between ``eps`` and ``N``."""
    if not 0 < eps < N:
        raise ValueError(f"need 0 < eps < N, got eps={eps}, N={N}")

    def at(xi):
        e = _phase(t, xi)
        return -xi * xi * complex(x.df(xi)) * e, 1j * t * xi * xi * complex(x.f(xi)) * e

    (d_hi, v_hi), (d_lo, v_lo) = at(N), at(eps)
    return d_hi - d_lo, v_hi - v_lo


@dataclass(frozen=True, eq=False)
class BoundaryTermReport:
    """Per-endpoint bracket terms along a shrinking sequence.

    ``term_values`` maps labels like ``"right:derivative"`` to the values at
    each ``epsilon_sequence`` entry; ``limits`` holds the extrapolated limits.
    """

    epsilon_sequence: np.ndarray
    term_values: dict
    limits: dict
    converges_to_zero: dict

    @property
    def all_vanish(self) -> bool:
        return all(self.converges_to_zero.values())


def geometric_sequence(start: float, terms: int = SEQUENCE_TERMS,
                       ratio: float = SEQUENCE_RATIO) -> np.ndarray:
    return start * ratio ** np.arange(terms)


def _aitken(g: np.ndarray) -> np.ndarray:
    d1 = g[1:-1] - g[:-2]
    d2 = g[2:] - g[1:-1]
    den = d2 - d1
    safe = den != 0
    out = g[2:].copy()
    out[safe] = g[2:][safe] - d2[safe] ** 2 / den[safe]
    return out


def _contracting(g: np.ndarray) -> bool:
    d1, d2 = g[-2] - g[-3], g[-1] - g[-2]
    return d1 != 0 and d2 != 0 and abs(d2) < abs(d1)


def estimate_limit(values, passes: int = 2) -> complex:
    """Limit of a sampled sequence by repeated Aitken extrapolation of its tail.

    Falls back to the last value when the tail is constant or not
    contracting; a diverging geometric sequence must not be extrapolated
    to its spurious "antilimit".
    """
    g = np.asarray(values, dtype=complex)
    if not np.all(np.isfinite(g)):
        return complex(np.inf)
    for _ in range(passes):
        if g.size < 3 or not _contracting(g):
            break
        g = _aitken(g)
    return complex(g[-1])


def boundary_term_report(spec: DiffOpSpec, x: SmoothFunction, t: float,
                         eps0: float | None = None, far0: float = 1.0) -> BoundaryTermReport:
    """Bracket terms at each endpoint as the endpoint is approached.

    Interval endpoints are approached as ``+-(a - eps)``, the origin as
    ``eps`` and infinity as ``far0 / eps`` with ``eps`` shrinking by half.
    """
    terms: dict[str, list] = {}

    def put(label, d, v):
        terms.setdefault(label + ":derivative", []).append(d)
        terms.setdefault(label + ":value", []).append(v)

    if spec.kind is DiffOpKind.PROLATE:
        a = spec.a
        eps_seq = geometric_sequence(eps0 if eps0 is not None else 1e-2 * a)
        for eps in eps_seq:
            for label, xi in (("left", -a + eps), ("right", a - eps)):
                p = 1 - xi * xi / (a * a)
                e = _phase(t, xi)
                put(label, -p * complex(x.df(xi)) * e, 1j * t * p * complex(x.f(xi)) * e)
    else:
        eps_seq = geometric_sequence(eps0 if eps0 is not None else 0.5)
        for eps in eps_seq:
            far = far0 / eps
            if spec.kind is DiffOpKind.SEMIAXIS:
                ends = (("zero", eps, eps * eps), ("inf", far, far * far))
            else:
                ends = (("-inf", -far, 1.0), ("+inf", far, 1.0))
            for label, xi, weight in ends:
                e = _phase(t, xi)
                put(label, -weight * complex(x.df(xi)) * e, 1j * t * weight * complex(x.f(xi)) * e)

    arrays = {k: np.asarray(v) for k, v in terms.items()}
    limits = {k: estimate_limit(v) for k, v in arrays.items()}
    return BoundaryTermReport(
        epsilon_sequence=eps_seq,
        term_values=arrays,
        limits=limits,
        converges_to_zero={k: bool(abs(v) <= LIMIT_TOL) for k, v in limits.items()},
    )


# --------------------------------------------------------------------------
# endpoint conditions


def _limit_claim(id_, anchor, g, points) -> Claim:
    with np.errstate(all="ignore"):
        vals = np.array([complex(g(p)) for p in points])
    lim = estimate_limit(vals)
    return Claim.at_most(id_, anchor, abs(lim), LIMIT_TOL)


def check_endpoint_conditions(x: SmoothFunction, domain: DomainSpec) -> list[Claim]:
    """Numerical endpoint limits required for integration by parts on ``domain``.

    Each limit is sampled on a geometric approach (ratio 1/2, 12 terms),
    extrapolated, and passes when its modulus is at most ``LIMIT_TOL``.
    """
    claims = []
    if domain.kind is DomainKind.FULL_LINE:
        far = 1.0 / geometric_sequence(1.0)
        for side, sgn in (("-inf", -1.0), ("+inf", 1.0)):
            pts = sgn * far
            claims.append(_limit_claim(f"x.{side}", f"x(xi) -> 0 as xi -> {side}", x.f, pts))
            claims.append(_limit_claim(f"dx.{side}", f"x'(xi) -> 0 as xi -> {side}", x.df, pts))
    elif domain.kind is DomainKind.INTERVAL:
        a = domain.a
        eps = geometric_sequence(1e-2 * min(a, 1.0))
        for side, sgn in (("-a", -1.0), ("+a", 1.0)):
            pts = sgn * (a - eps)
            sign = "+" if sgn < 0 else "-"
            claims.append(_limit_claim(
                f"edge_dx.{side}", f"(xi {sign} a) x'(xi) -> 0 as xi -> {side}",
                lambda p, s=sgn: (p - s * a) * x.df(p), pts))
            claims.append(_limit_claim(
                f"edge_x.{side}", f"(xi {sign} a) x(xi) -> 0 as xi -> {side}",
                lambda p, s=sgn: (p - s * a) * x.f(p), pts))
    else:
        near = geometric_sequence(0.5)
        far = 1.0 / geometric_sequence(1.0)
        for side, pts in (("0", near), ("inf", far)):
            claims.append(_limit_claim(
                f"xi2_x.{side}", f"xi^2 x(xi) -> 0 as xi -> {side}", lambda p: p * p * x.f(p), pts))
            claims.append(_limit_claim(
                f"xi2_dx.{side}", f"xi^2 x'(xi) -> 0 as xi -> {side}", lambda p: p * p * x.df(p), pts))
    return claims


def log_bound_check(x: SmoothFunction, a: float) -> bool:
    """Whether ``|x(xi)| = O(|ln|xi -+ a||)`` near both endpoints of ``(-a, a)``.

    The ratio ``|x| / |ln dist|`` is sampled on a halving approach; it passes
    when every ratio is finite and the last one does not exceed the one a
    decade of distance earlier.
    """
    eps = geometric_sequence(1e-2 * min(a, 1.0))
    decade = int(math.ceil(math.log(10) / math.log(1 / SEQUENCE_RATIO)))
    for sgn in (-1.0, 1.0):
        with np.errstate(all="ignore"):
            vals = np.abs(np.array([complex(x.f(sgn * (a - e))) for e in eps]))
        ratio = vals / np.abs(np.log(eps))
        if not np.all(np.isfinite(ratio)):
            return False
        if ratio[-1] > ratio[-1 - decade] * (1 + 1e-9) + 1e-15:
            return False
    return True
