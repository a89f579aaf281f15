"""Symmetric eigensolvers and Rayleigh quotients.

``eig_sym_tridiagonal`` is the implicit-shift QL iteration; ``eig_sym_dense``
is cyclic Jacobi with a round-robin ordering so that each of the ``n - 1``
steps of a sweep applies ``n / 2`` disjoint rotations at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import OperatorMatrix, Storage

SIGN_THRESHOLD = 1e-8


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_norms: np.ndarray

    def __len__(self):
        return self.eigenvalues.size

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


def _fix_signs(V: np.ndarray) -> np.ndarray:
    for k in range(V.shape[1]):
        col = V[:, k]
        idx = np.flatnonzero(np.abs(col) > SIGN_THRESHOLD)
        if idx.size and col[idx[0]] < 0:
            V[:, k] = -col
    return V


def _finish(A: np.ndarray, evals: np.ndarray, V: np.ndarray) -> EigenDecomposition:
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    V = _fix_signs(V[:, order])
    res = np.linalg.norm(A @ V - V * evals, axis=0)
    evals.setflags(write=False)
    V.setflags(write=False)
    res.setflags(write=False)
    return EigenDecomposition(evals, V, res)


def eig_sym_tridiagonal(T: OperatorMatrix) -> EigenDecomposition:
    if T.storage is not Storage.SYM_TRIDIAG:
        raise TypeError(f"expected a symmetric tridiagonal operator, got {T.storage}")
    d0, e0 = T.data
    n = d0.size
    d = d0.astype(float).copy()
    e = np.zeros(n)
    e[: n - 1] = e0
    Z = np.eye(n)
    max_iter = 30 * max(n, 1)

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= np.finfo(float).eps * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise ConvergenceError(f"QL iteration did not converge for eigenvalue {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi1 = Z[:, i + 1].copy()
                Z[:, i + 1] = s * Z[:, i] + c * zi1
                Z[:, i] = c * Z[:, i] - s * zi1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    return _finish(T.to_dense(), d, Z)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings covering every (p, q) once; ``n`` must be even."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p = np.array(players[: n // 2])
        q = np.array(players[n // 2:][::-1])
        rounds.append((np.minimum(p, q), np.maximum(p, q)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M - np.diag(np.diag(M))))


def eig_sym_dense(A: OperatorMatrix | np.ndarray, tol: float = 1e-15,
                  max_sweeps: int = 30) -> EigenDecomposition:
    if isinstance(A, OperatorMatrix):
        if A.storage is not Storage.DENSE_REAL_SYM:
            raise TypeError(f"expected a dense real symmetric operator, got {A.storage}")
        A0 = A.to_dense()
    else:
        A0 = np.asarray(A, dtype=float)
        A0 = 0.5 * (A0 + A0.T)
    n = A0.shape[0]
    if n == 1:
        return _finish(A0, A0.diagonal().copy(), np.ones((1, 1)))

    # pad to even size with a decoupled zero row/column
    N = n + (n % 2)
    M = np.zeros((N, N))
    M[:n, :n] = A0
    V = np.eye(N)
    rounds = _round_robin(N)
    scale = np.linalg.norm(A0)
    if scale == 0.0:
        return _finish(A0, np.zeros(n), np.eye(n))

    for _ in range(max_sweeps):
        if _off_norm(M) <= tol * scale:
            break
        for P, Q in rounds:
            apq = M[P, Q]
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            theta = (M[Q, Q] - M[P, P]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = M[P, :].copy(), M[Q, :]
            M[P, :] = c[:, None] * rp - s[:, None] * rq
            M[Q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = M[:, P].copy(), M[:, Q]
            M[:, P] = cp * c - cq * s
            M[:, Q] = cp * s + cq * c
            M[P, Q] = 0.0
            M[Q, P] = 0.0
            vp, vq = V[:, P].copy(), V[:, Q]
            V[:, P] = vp * c - vq * s
            V[:, Q] = vp * s + vq * c
    else:
        if _off_norm(M) > 1e3 * tol * scale:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    evals = np.diag(M)[:n].copy()
    if N != n:
        # the padding index stays decoupled; drop its eigenpair
        pad_col = np.argmax(np.abs(V[n, :]))
        keep = np.array([k for k in range(N) if k != pad_col])
        evals = np.diag(M)[keep].copy()
        V = V[:n, keep]
    return _finish(A0, evals, V)


def rayleigh_quotient(M: OperatorMatrix | np.ndarray, v) -> tuple[complex, float]:
    """``<v, Mv> / <v, v>`` and the defect ``|Mv - q v| / |v|``."""
    v = np.asarray(v)
    nv = np.vdot(v, v).real
    if nv == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    Mv = M @ v
    q = complex(np.vdot(v, Mv) / nv)
    defect = float(np.linalg.norm(Mv - q * v) / math.sqrt(nv))
    return q, defect
