"""Closed-form dimensions of the maximal faces induced by hyperplanes.

For ``V = a^perp`` the face ``F_V`` of the normalized separable states has
dimension ``d^2 - 1 - prod_i (2 d'_i - 1)``, with ``d'_i`` the dimensions of
the spaces carrying the g.e. components of ``a``. The maximum ``d(d-2)`` is
attained exactly when ``a`` is genuinely entangled.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from .exceptions import InvalidInputError
from .gedecomp import GeDecomposition, fixes_projector, ge_decompose, theta_prime_contains
from .oracle import OracleConfig, face_dim_oracle, range_rank_oracle
from .statespace import DEFAULT_RANK_TOL, PureState, SystemShape, as_subset

THETA_SCAN_MAX_PARTIES = 6


def _dim_from_factors(d: int, factor_dims: Iterable[int]) -> int:
    return d * d - 1 - prod(2 * x - 1 for x in factor_dims)


def face_dim_formula(decomp: GeDecomposition) -> int:
    return _dim_from_factors(decomp.shape.d, decomp.block_dims)


def product_face_dim(shape: SystemShape) -> int:
    """Face dimension when ``a`` is a full product vector (one block per party)."""
    return _dim_from_factors(shape.d, shape.dims)


def max_induced_dim(d) -> int:
    """``d(d-2)``, the largest dimension of an induced maximal face.

    Accepts the ambient dimension or anything with a ``.d`` attribute.
    """
    d = getattr(d, "d", d)
    return int(d) * (int(d) - 2)


def is_genuinely_entangled(state: PureState, rel_tol: float = DEFAULT_RANK_TOL) -> bool:
    return ge_decompose(state, rel_tol).m == 1


@dataclass(frozen=True)
class ThetaEntry:
    subset: tuple[int, ...]
    range_rank: int
    in_theta_prime: bool
    fixes_face: bool

    def to_dict(self) -> dict:
        return {
            "S": list(self.subset),
            "range_rank": self.range_rank,
            "in_theta_prime": self.in_theta_prime,
            "fixes_face": self.fixes_face,
        }


@dataclass(frozen=True)
class ReportOptions:
    with_oracle: bool = False
    theta_scan: bool = False
    subsets: Sequence[Iterable[int]] | None = None
    oracle: OracleConfig = field(default_factory=OracleConfig)


@dataclass(frozen=True)
class FaceReport:
    shape: SystemShape
    blocks: tuple[tuple[int, ...], ...]
    block_dims: tuple[int, ...]
    formula_dim: int
    is_genuinely_entangled: bool
    oracle_dim: int | None = None
    oracle_saturated: bool | None = None
    theta_scan: tuple[ThetaEntry, ...] | None = None

    @property
    def max_induced_dim(self) -> int:
        return max_induced_dim(self.shape.d)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.shape.dims),
            "blocks": [list(b) for b in self.blocks],
            "block_dims": list(self.block_dims),
            "formula_dim": self.formula_dim,
            "oracle_dim": self.oracle_dim,
            "saturated": self.oracle_saturated,
            "max_induced_dim": self.max_induced_dim,
            "genuinely_entangled": self.is_genuinely_entangled,
            "theta_scan": [e.to_dict() for e in self.theta_scan] if self.theta_scan is not None else [],
        }


def theta_scan(
    state: PureState,
    subsets: Sequence[Iterable[int]] | None = None,
    cfg: OracleConfig | None = None,
    decomp: GeDecomposition | None = None,
) -> tuple[ThetaEntry, ...]:
    """Range rank and block structure of ``Gamma_S(F_V)`` for each subset ``S``.

    Without explicit ``subsets`` every subset is scanned, which is allowed up
    to :data:`THETA_SCAN_MAX_PARTIES` parties.
    """
    cfg = cfg or OracleConfig()
    decomp = decomp or ge_decompose(state, cfg.rel_tol)
    if subsets is None:
        if state.shape.n > THETA_SCAN_MAX_PARTIES:
            raise InvalidInputError(
                f"subsets: {state.shape.n} parties exceed the full-scan cap of "
                f"{THETA_SCAN_MAX_PARTIES}; pass an explicit subset list"
            )
        subsets = list(state.shape.subsets())
    entries = []
    for S in subsets:
        S = as_subset(S, state.shape.n)
        entries.append(
            ThetaEntry(
                subset=tuple(sorted(S)),
                range_rank=range_rank_oracle(state, S, cfg),
                in_theta_prime=theta_prime_contains(decomp, S),
                fixes_face=fixes_projector(decomp, S, cfg.rel_tol),
            )
        )
    return tuple(entries)


def face_report(state: PureState, options: ReportOptions | None = None) -> FaceReport:
    options = options or ReportOptions()
    cfg = options.oracle
    decomp = ge_decompose(state, cfg.rel_tol)
    oracle_dim = saturated = scan = None
    if options.with_oracle:
        res = face_dim_oracle(state, cfg)
        oracle_dim, saturated = res.dim, res.saturated
    if options.theta_scan:
        scan = theta_scan(state, options.subsets, cfg, decomp)
    return FaceReport(
        shape=state.shape,
        blocks=decomp.blocks,
        block_dims=decomp.block_dims,
        formula_dim=face_dim_formula(decomp),
        is_genuinely_entangled=decomp.m == 1,
        oracle_dim=oracle_dim,
        oracle_saturated=saturated,
        theta_scan=scan,
    )
