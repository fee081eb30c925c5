"""Positive maps on bipartite systems and their dual faces.

A map ``Phi: End(H_1) -> End(H_2)`` is stored through its Choi matrix
``C = sum_ij |i><j| (x) Phi(|i><j|)`` and paired with states by
``<rho, Phi> = tr(rho^T C)``. For ``phi_L(X) = L^dag X L`` the product
vectors killed by the pairing are exactly the product vectors orthogonal to
``Psi^{-1}(L)``, so the dual face of ``phi_L`` is the induced face ``F_V``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import InvalidInputError
from .oracle import STREAM_TAG, OracleConfig, complex_normal, sample_product_in_hyperplane
from .statespace import PureState, SystemShape

PAIRING_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LinearMapOperator:
    """A linear map ``M_m -> M_l`` held as its ``ml x ml`` Choi matrix."""

    choi: np.ndarray
    m: int
    l: int
    kraus: np.ndarray | None = None

    @classmethod
    def from_action(cls, action: Callable[[np.ndarray], np.ndarray], m: int) -> "LinearMapOperator":
        C = choi_matrix(action, m)
        return cls(C, m, C.shape[0] // m)

    @classmethod
    def phi_L(cls, L) -> "LinearMapOperator":
        L = _as_kraus(L)
        C = choi_matrix(lambda X: phi_L_apply(L, X), L.shape[0])
        return cls(C, L.shape[0], L.shape[1], L)


def _as_kraus(L) -> np.ndarray:
    L = np.asarray(L, dtype=np.complex128)
    if L.ndim != 2:
        raise InvalidInputError(f"L: expected a matrix, got shape {L.shape}")
    if not np.any(L):
        raise InvalidInputError("L: the zero map has no dual face")
    return L


def choi_matrix(action: Callable[[np.ndarray], np.ndarray], m: int) -> np.ndarray:
    """Block matrix whose ``(i, j)`` block is ``action(E_ij)``."""
    blocks = []
    l = None
    for i in range(m):
        row = []
        for j in range(m):
            E = np.zeros((m, m), dtype=np.complex128)
            E[i, j] = 1.0
            B = np.asarray(action(E), dtype=np.complex128)
            if B.ndim != 2 or B.shape[0] != B.shape[1] or (l is not None and B.shape[0] != l):
                raise InvalidInputError(f"action: inconsistent block shape {B.shape}")
            l = B.shape[0]
            row.append(B)
        blocks.append(row)
    return np.block(blocks)


def phi_L_apply(L, X) -> np.ndarray:
    L = np.asarray(L, dtype=np.complex128)
    X = np.asarray(X, dtype=np.complex128)
    if X.shape != (L.shape[0], L.shape[0]):
        raise InvalidInputError(f"X: expected shape {(L.shape[0],) * 2}, got {X.shape}")
    return L.conj().T @ X @ L


def pairing(rho, phi: LinearMapOperator) -> float:
    """``tr(rho^T C_Phi)``; real for Hermitian arguments."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != phi.choi.shape:
        raise InvalidInputError(f"rho: expected shape {phi.choi.shape}, got {rho.shape}")
    # tr(A^T B) = sum_ij A_ij B_ij
    val = np.sum(rho * phi.choi)
    scale = max(1.0, np.abs(rho).max() * np.abs(phi.choi).max())
    if abs(val.imag) > 1e-10 * scale:
        raise InvalidInputError("pairing: complex value; arguments are not Hermitian")
    return float(val.real)


def psi_iso(alpha: PureState) -> np.ndarray:
    """``Psi(|x>|y>) = |x><y*|``.

    Both conjugations cancel, so ``L[x, y]`` is just the amplitude at
    ``(x, y)``: the isomorphism is a reshape.
    """
    if alpha.shape.n != 2:
        raise InvalidInputError(f"dims: Psi needs a bipartite state, got {alpha.dims}")
    return alpha.amplitudes.reshape(alpha.dims).copy()


def psi_inv(L) -> PureState:
    L = np.asarray(L, dtype=np.complex128)
    if L.ndim != 2:
        raise InvalidInputError(f"L: expected a matrix, got shape {L.shape}")
    return PureState(SystemShape(L.shape), L.reshape(-1))


@dataclass(frozen=True)
class DualityReport:
    n: int
    zeros_on_V: int
    positives_off_V: int
    accidental_zeros: int
    max_residual: float
    seed: int

    @property
    def passed(self) -> bool:
        return self.zeros_on_V == self.n and self.positives_off_V + self.accidental_zeros == self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "zeros_on_V": self.zeros_on_V,
            "positives_off_V": self.positives_off_V,
            "accidental_zeros": self.accidental_zeros,
            "max_residual": self.max_residual,
            "passed": self.passed,
            "seed": self.seed,
        }


def verify_dual_face_equals_FV(L, cfg: OracleConfig | None = None, n: int = 100) -> DualityReport:
    """Check that the pure product states killed by ``phi_L`` are those in ``V``.

    ``n`` product vectors are drawn inside ``V = Psi^{-1}(L)^perp`` (each must
    pair to zero) and ``n`` are drawn freely (each must pair positively,
    unless it happens to lie in ``V``). Pairings are taken with normalized
    states and measured relative to ``||L||_F^2``.
    """
    cfg = cfg or OracleConfig()
    L = _as_kraus(L)
    phi = LinearMapOperator.phi_L(L)
    alpha = psi_inv(L)
    dims = alpha.dims
    scale = float(np.linalg.norm(L)) ** 2
    rng = np.random.default_rng([int(cfg.seed), STREAM_TAG, 3])

    def value(fs):
        z = np.kron(fs[0], fs[1])
        z = z / np.linalg.norm(z)
        return pairing(np.outer(z, z.conj()), phi) / scale, z

    zeros = positives = accidental = 0
    max_res = 0.0
    eligible = [p for p in (1, 2) if dims[p - 1] > 1]
    for k in range(n):
        fs = sample_product_in_hyperplane(alpha, eligible[k % len(eligible)], rng)
        v, _ = value(fs)
        max_res = max(max_res, abs(v))
        if abs(v) <= PAIRING_TOL:
            zeros += 1
    for _ in range(n):
        v, z = value([complex_normal(rng, dims[0]), complex_normal(rng, dims[1])])
        if v > PAIRING_TOL:
            positives += 1
        elif abs(np.vdot(alpha.amplitudes, z)) / alpha.norm <= PAIRING_TOL:
            accidental += 1
    return DualityReport(n, zeros, positives, accidental, max_res, int(cfg.seed))
