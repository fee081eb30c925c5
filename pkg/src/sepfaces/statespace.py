"""Dense linear algebra on multipartite tensor-product spaces.

Parties are numbered from 1, as in the JSON interchange format. A subset of
parties is any iterable of such indices. Multi-indices are laid out
lexicographically (party 1 is the slowest index), which is numpy's C order
for a tensor of shape ``dims``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .exceptions import InvalidInputError

DEFAULT_RANK_TOL = 1e-8
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class SystemShape:
    """Party dimensions ``(d_1, ..., d_n)`` of a tensor-product space."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        if len(dims) == 0:
            raise InvalidInputError("dims: at least one party is required")
        if any(x < 1 for x in dims):
            raise InvalidInputError(f"dims: every party dimension must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def d(self) -> int:
        return prod(self.dims)

    @property
    def parties(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def subsets(self, proper=False):
        """All subsets of parties, ordered by size then lexicographically."""
        lo, hi = (1, self.n - 1) if proper else (0, self.n)
        for k in range(lo, hi + 1):
            for c in combinations(self.parties, k):
                yield frozenset(c)


@dataclass(frozen=True, eq=False)
class PureState:
    """A (not necessarily normalized) vector in ``H_1 (x) ... (x) H_n``."""

    shape: SystemShape
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.shape.d:
            raise InvalidInputError(
                f"amplitudes: expected {self.shape.d} entries for dims {self.shape.dims}, "
                f"got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidInputError("amplitudes: non-finite entries")
        if not np.any(amps):
            raise InvalidInputError("zero state")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, dims: Sequence[int], amplitudes) -> "PureState":
        return cls(SystemShape(tuple(dims)), amplitudes)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.shape.dims

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "PureState":
        return PureState(self.shape, self.amplitudes / self.norm)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def permute_parties(self, order: Sequence[int]) -> "PureState":
        """Reorder parties so that new party ``k`` is old party ``order[k-1]``."""
        axes = [p - 1 for p in order]
        if sorted(axes) != list(range(self.shape.n)):
            raise InvalidInputError(f"order: not a permutation of parties, got {order}")
        t = np.transpose(self.tensor, axes)
        return PureState(SystemShape(t.shape), t.reshape(-1))


def as_subset(S: Iterable[int], n: int) -> frozenset[int]:
    """Validate a subset of 1-based party indices."""
    out = frozenset(int(i) for i in S)
    bad = [i for i in out if not 1 <= i <= n]
    if bad:
        raise InvalidInputError(f"subset: party indices {sorted(bad)} outside 1..{n}")
    return out


def _as_factor(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if v.size == 0 or not np.any(v):
        raise InvalidInputError("factor: product-vector factors must be nonzero")
    return v


def tensor_product(factors: Sequence) -> PureState:
    """Product vector ``f_1 (x) ... (x) f_n`` in lexicographic layout."""
    if len(factors) == 0:
        raise InvalidInputError("factors: empty factor list")
    fs = [_as_factor(f) for f in factors]
    out = fs[0]
    for f in fs[1:]:
        out = np.kron(out, f)
    return PureState(SystemShape(tuple(f.size for f in fs)), out)


def matricize(state: PureState, S: Iterable[int]) -> np.ndarray:
    """Reshape ``state`` into a matrix with rows indexed by the parties in ``S``.

    Row and column multi-indices are both lexicographic over their own
    parties, in increasing party order.
    """
    n = state.shape.n
    S = as_subset(S, n)
    if not S or len(S) == n:
        raise InvalidInputError("subset: matricization needs a proper nonempty subset")
    rows = sorted(S)
    cols = [p for p in state.shape.parties if p not in S]
    t = np.transpose(state.tensor, [p - 1 for p in rows + cols])
    nr = prod(state.dims[p - 1] for p in rows)
    return t.reshape(nr, -1)


def singular_values(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim == 1:
        a = a[None, :]
    if a.size == 0:
        raise InvalidInputError("rows: numerical rank of an empty matrix")
    return np.linalg.svd(a, compute_uv=False)


def numerical_rank(rows, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Count singular values above ``rel_tol`` times the largest one."""
    if isinstance(rows, RealSpanBasis):
        return rows.rank(rel_tol)
    s = singular_values(rows)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def schmidt_rank(state: PureState, S: Iterable[int], rel_tol: float = DEFAULT_RANK_TOL) -> int:
    return numerical_rank(matricize(state, S), rel_tol)


def _square_for(M, dims: Sequence[int]) -> np.ndarray:
    M = np.asarray(M)
    d = prod(dims)
    if M.shape != (d, d):
        raise InvalidInputError(f"matrix: expected shape {(d, d)} for dims {tuple(dims)}, got {M.shape}")
    return M


def partial_transpose(M, dims: Sequence[int], S: Iterable[int]) -> np.ndarray:
    """Transpose the tensor factors of ``M`` indexed by the parties in ``S``."""
    dims = tuple(dims)
    M = _square_for(M, dims)
    n = len(dims)
    S = as_subset(S, n)
    axes = list(range(2 * n))
    for p in S:
        axes[p - 1], axes[n + p - 1] = axes[n + p - 1], axes[p - 1]
    t = M.reshape(dims + dims).transpose(axes)
    return t.reshape(M.shape)


@dataclass(frozen=True)
class PartialTransposeOp:
    """The partial transposition over a subset of parties.

    These operators form an abelian group under composition, isomorphic to
    subsets under symmetric difference.
    """

    subset: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(int(i) for i in self.subset))

    def __matmul__(self, other: "PartialTransposeOp") -> "PartialTransposeOp":
        return PartialTransposeOp(self.subset ^ other.subset)

    @property
    def is_identity(self) -> bool:
        return not self.subset

    def __call__(self, M, dims: Sequence[int]) -> np.ndarray:
        return partial_transpose(M, dims, self.subset)


def partial_conjugate(factors: Sequence, S: Iterable[int]) -> list[np.ndarray]:
    """Conjugate the product-vector factors indexed by ``S``; others unchanged."""
    fs = [_as_factor(f) for f in factors]
    S = as_subset(S, len(fs))
    return [f.conj() if i + 1 in S else f.copy() for i, f in enumerate(fs)]


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    scale = np.max(np.abs(M)) if M.size else 0.0
    return bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= tol * scale)


def hermitian_to_real_vector(M) -> np.ndarray:
    """Map a Hermitian ``d x d`` matrix to ``R^{d^2}``.

    Layout: the ``d`` real diagonal entries, then ``(Re, Im)`` of each strictly
    upper entry in row-major order. This is the upper-triangular image of the
    matrix, written out as real coordinates.
    """
    M = np.asarray(M, dtype=np.complex128)
    if not is_hermitian(M):
        raise InvalidInputError("matrix: not Hermitian within tolerance")
    return kernels.vectorize_hermitian(M)


def real_vector_to_hermitian(v) -> np.ndarray:
    """Inverse of :func:`hermitian_to_real_vector`."""
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise InvalidInputError(f"vector: length {v.size} is not a perfect square")
    M = np.zeros((d, d), dtype=np.complex128)
    M[np.diag_indices(d)] = v[:d]
    iu, ju = np.triu_indices(d, k=1)
    M[iu, ju] = v[d::2] + 1j * v[d + 1::2]
    M[ju, iu] = M[iu, ju].conj()
    return M


class RealSpanBasis:
    """Real vectors of length ``d^2`` (vectorized Hermitian matrices).

    Singular values are computed once, on first use.
    """

    def __init__(self, rows, shape: SystemShape | None = None):
        rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        if rows.shape[0] == 0:
            raise InvalidInputError("rows: empty span basis")
        if shape is not None and rows.shape[1] != shape.d**2:
            raise InvalidInputError(f"rows: expected length {shape.d ** 2}, got {rows.shape[1]}")
        self.rows = rows
        self.shape = shape

    @classmethod
    def from_vectors(cls, vectors, shape: SystemShape | None = None, normalize=True):
        """Span of the pure states ``|v><v|`` for the rows ``v`` of ``vectors``."""
        return cls(kernels.vectorize_outer_rows(vectors, normalize), shape)

    def __len__(self):
        return self.rows.shape[0]

    @cached_property
    def singular_values(self) -> np.ndarray:
        return singular_values(self.rows)

    def rank(self, rel_tol: float = DEFAULT_RANK_TOL) -> int:
        s = self.singular_values
        if s[0] == 0.0:
            return 0
        return int(np.count_nonzero(s > rel_tol * s[0]))

    def gap(self, rel_tol: float = DEFAULT_RANK_TOL) -> float:
        """Smallest retained over largest discarded singular value.

        The discarded value is floored at the floating-point noise level, so
        the ratio stays finite for full-rank inputs.
        """
        s = self.singular_values
        r = self.rank(rel_tol)
        if r == 0:
            return 0.0
        floor = np.finfo(np.float64).eps * max(self.rows.shape) * s[0]
        dropped = s[r] if r < s.size else 0.0
        return float(s[r - 1] / max(dropped, floor))

    def extended(self, more_rows) -> "RealSpanBasis":
        return RealSpanBasis(np.vstack([self.rows, more_rows]), self.shape)
