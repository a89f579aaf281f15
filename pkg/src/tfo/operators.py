"""Finite-dimensional operators in weighted grid coordinates."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class Storage(enum.Enum):
    DENSE_COMPLEX = "dense_complex"
    DENSE_REAL_SYM = "dense_real_sym"
    SYM_TRIDIAG = "sym_tridiag"


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """An operator acting on vectors ``v[k] = sqrt(w_k) * x(node_k)``.

    In these coordinates the Euclidean adjoint is the L2 adjoint.  For
    ``SYM_TRIDIAG`` the payload is the pair ``(diagonal, offdiagonal)``.

    ``modes`` optionally holds an orthonormal set of grid-space eigenvectors
    (columns, ascending ``mode_values``) known from the construction, and
    ``n_faithful`` how many of the leading ones the discretization resolves.
    """

    storage: Storage
    data: object
    coordinates: str = "weighted"
    modes: np.ndarray | None = None
    mode_values: np.ndarray | None = None
    n_faithful: int | None = None
    label: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.storage is Storage.SYM_TRIDIAG:
            d, e = self.data
            d = np.asarray(d, dtype=float).copy()
            e = np.asarray(e, dtype=float).copy()
            if e.shape != (max(d.size - 1, 0),):
                raise ValueError("off-diagonal must have length n-1")
            d.setflags(write=False)
            e.setflags(write=False)
            object.__setattr__(self, "data", (d, e))
            return
        m = np.array(self.data, dtype=complex if self.storage is Storage.DENSE_COMPLEX else float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator payload must be a square matrix")
        if self.storage is Storage.DENSE_REAL_SYM:
            m = 0.5 * (m + m.T)
        m.setflags(write=False)
        object.__setattr__(self, "data", m)

    @property
    def dim(self) -> int:
        if self.storage is Storage.SYM_TRIDIAG:
            return self.data[0].size
        return self.data.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        if self.storage is Storage.SYM_TRIDIAG:
            return self.data[0]
        return np.diag(self.data)

    def to_dense(self) -> np.ndarray:
        if self.storage is Storage.SYM_TRIDIAG:
            d, e = self.data
            return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        return np.array(self.data)

    def __matmul__(self, v):
        if isinstance(v, OperatorMatrix):
            return self.to_dense() @ v.to_dense()
        if self.storage is Storage.SYM_TRIDIAG:
            d, e = self.data
            v = np.asarray(v)
            out = d[:, None] * v if v.ndim == 2 else d * v
            out = out.astype(np.result_type(out, v), copy=False)
            out[:-1] += e.reshape((-1,) + (1,) * (v.ndim - 1)) * v[1:]
            out[1:] += e.reshape((-1,) + (1,) * (v.ndim - 1)) * v[:-1]
            return out
        return self.data @ v


def dense_complex(m, **kw) -> OperatorMatrix:
    return OperatorMatrix(Storage.DENSE_COMPLEX, m, **kw)


def dense_real_sym(m, **kw) -> OperatorMatrix:
    return OperatorMatrix(Storage.DENSE_REAL_SYM, m, **kw)


def sym_tridiag(diagonal, offdiagonal, **kw) -> OperatorMatrix:
    return OperatorMatrix(Storage.SYM_TRIDIAG, (diagonal, offdiagonal), **kw)
