"""Monte-Carlo span-rank oracle for face dimensions.

The face ``F_V`` of the separable states with range in ``V = a^perp`` has
dimension ``dim L - 1``, where ``L`` is the real span of the pure product
states ``|z><z|`` with ``|z>`` a product vector in ``V``. Here ``L`` is
estimated by sampling such product vectors generically and taking the
numerical rank of their vectorizations. The result is independent of the
closed-form formula in :mod:`sepfaces.faces` and serves as its check.

Sampling is done in fixed-size batches. Batch ``b`` of a stream draws from
``default_rng([seed, STREAM_TAG, *stream, b])``, and rows are stacked in batch order, so
results do not depend on how batches are scheduled across workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .exceptions import InvalidInputError
from .statespace import (
    DEFAULT_RANK_TOL,
    PureState,
    RealSpanBasis,
    SystemShape,
    as_subset,
    numerical_rank,
    partial_conjugate,
)

BATCH_SIZE = 64
ORTHO_TOL = 1e-10
_DEGENERATE_TOL = 1e-12
_MAX_REDRAWS = 8
# SeedSequence zero-pads entropy, so [seed, 0, 0, 0] would replay default_rng(seed);
# a nonzero tag keeps derived streams apart from the caller's own.
STREAM_TAG = 0x5EF


@dataclass(frozen=True)
class OracleConfig:
    """Sampling parameters.

    ``samples`` defaults to ``4 d^2`` and ``saturation_extra`` to a quarter of
    that (at least 8). ``party_policy`` is ``"round-robin"`` or a fixed
    1-based party index whose factor absorbs the orthogonality constraint.
    """

    seed: int = 0
    samples: int | None = None
    saturation_extra: int | None = None
    rel_tol: float = DEFAULT_RANK_TOL
    party_policy: str | int = "round-robin"
    workers: int = 1

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidInputError("seed: must be a 64-bit unsigned integer")
        if self.saturation_extra is not None and self.saturation_extra < 8:
            raise InvalidInputError("saturation_extra: must be >= 8")
        if not self.rel_tol > 0:
            raise InvalidInputError("rel_tol: must be positive")
        if self.party_policy != "round-robin" and not isinstance(self.party_policy, int):
            raise InvalidInputError(f"party_policy: unknown policy {self.party_policy!r}")

    def resolve(self, d: int) -> tuple[int, int]:
        """Concrete ``(samples, saturation_extra)`` for ambient dimension ``d``."""
        samples = 4 * d * d if self.samples is None else int(self.samples)
        if samples < d * d:
            raise InvalidInputError(f"samples: need at least d^2 = {d * d}, got {samples}")
        extra = self.saturation_extra
        if extra is None:
            extra = max(8, math.ceil(samples / 4))
        return samples, int(extra)


@dataclass(frozen=True)
class OracleResult:
    span_rank: int
    dim: int
    saturated: bool
    singular_value_gap: float
    seed: int
    samples: int

    def to_dict(self) -> dict:
        return {
            "span_rank": self.span_rank,
            "dim": self.dim,
            "saturated": self.saturated,
            "sv_gap": self.singular_value_gap,
            "seed": self.seed,
            "samples": self.samples,
        }


def complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def _hyperplane_functional(alpha: np.ndarray, factors: Sequence, i: int) -> np.ndarray:
    """``w`` with ``<a|z> = <w|z_i>`` for fixed factors ``z_k`` (k != i)."""
    t = alpha
    # contract from the last axis down so axis numbers stay valid
    for k in reversed(range(len(factors))):
        if k == i:
            continue
        t = np.tensordot(t, factors[k].conj(), axes=([k], [0]))
    return t


def sample_product_in_hyperplane(
    state: PureState, constrained_party: int, rng: np.random.Generator
) -> list[np.ndarray]:
    """Draw a product vector orthogonal to ``state``.

    All factors except the constrained one are complex Gaussian. The
    constrained factor is Gaussian inside the orthogonal complement of the
    induced linear functional, or unconstrained when that functional
    vanishes.
    """
    dims = state.dims
    i = int(constrained_party) - 1
    if not 0 <= i < len(dims):
        raise InvalidInputError(f"constrained_party: {constrained_party} outside 1..{len(dims)}")
    factors: list = [complex_normal(rng, dk) if k != i else None for k, dk in enumerate(dims)]
    w = _hyperplane_functional(state.tensor, factors, i)
    scale = state.norm * math.prod(np.linalg.norm(f) for k, f in enumerate(factors) if k != i)
    wn = np.linalg.norm(w)
    constrained = wn > _DEGENERATE_TOL * scale
    if constrained:
        w = w / wn
    for _ in range(_MAX_REDRAWS):
        g = complex_normal(rng, dims[i])
        if not constrained:
            break
        h = g - w * np.vdot(w, g)
        # a draw (nearly) parallel to w leaves no usable component
        if np.linalg.norm(h) > 1e-6 * np.linalg.norm(g):
            g = h
            break
    else:
        raise InvalidInputError(f"party {constrained_party}: orthogonal complement is trivial")
    factors[i] = g
    return factors


def orthogonality_residual(state: PureState, factors: Sequence) -> float:
    """``|<a|z>| / (||a|| prod ||z_k||)``."""
    z = factors[0]
    for f in factors[1:]:
        z = np.kron(z, f)
    denom = state.norm * math.prod(np.linalg.norm(f) for f in factors)
    return float(abs(np.vdot(state.amplitudes, z)) / denom)


def _eligible_parties(shape: SystemShape, policy) -> list[int]:
    if policy == "round-robin":
        parties = [p for p in shape.parties if shape.dims[p - 1] > 1]
        if not parties:
            raise InvalidInputError("dims: hyperplane is {0} when every party has dimension 1")
        return parties
    p = int(policy)
    if not 1 <= p <= shape.n:
        raise InvalidInputError(f"party_policy: fixed party {p} outside 1..{shape.n}")
    if shape.dims[p - 1] == 1:
        raise InvalidInputError(f"party_policy: party {p} has dimension 1")
    return [p]


SampleFn = Callable[[np.random.Generator, int], np.ndarray]


def _batched(sample: SampleFn, count: int, seed: int, stream: tuple, workers: int = 1) -> np.ndarray:
    """Stack ``count`` sampled vectors; sample ``k`` is in batch ``k // BATCH_SIZE``."""
    nb = -(-count // BATCH_SIZE)

    def run(b):
        rng = np.random.default_rng([int(seed), STREAM_TAG, *stream, b])
        lo, hi = b * BATCH_SIZE, min(count, (b + 1) * BATCH_SIZE)
        return np.stack([sample(rng, k) for k in range(lo, hi)])

    if workers > 1 and nb > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(nb)))
    else:
        parts = [run(b) for b in range(nb)]
    return np.vstack(parts)


def _hyperplane_sampler(state: PureState, cfg: OracleConfig, transform=None) -> SampleFn:
    parties = _eligible_parties(state.shape, cfg.party_policy)

    def sample(rng, k):
        fs = sample_product_in_hyperplane(state, parties[k % len(parties)], rng)
        if transform is not None:
            fs = transform(fs)
        z = fs[0]
        for f in fs[1:]:
            z = np.kron(z, f)
        return z

    return sample


def _span_result(sample: SampleFn, shape: SystemShape, cfg: OracleConfig, stream=(0,)) -> tuple[OracleResult, RealSpanBasis]:
    samples, extra = cfg.resolve(shape.d)
    vecs = _batched(sample, samples, cfg.seed, (*stream, 0), cfg.workers)
    basis = RealSpanBasis(kernels.vectorize_outer_rows(vecs), shape)
    rank = basis.rank(cfg.rel_tol)
    more = _batched(sample, extra, cfg.seed, (*stream, 1), cfg.workers)
    grown = basis.extended(kernels.vectorize_outer_rows(more))
    saturated = grown.rank(cfg.rel_tol) == rank
    result = OracleResult(
        span_rank=rank,
        dim=rank - 1,
        saturated=saturated,
        singular_value_gap=basis.gap(cfg.rel_tol),
        seed=int(cfg.seed),
        samples=samples,
    )
    return result, grown


def face_dim_oracle(state: PureState, cfg: OracleConfig | None = None) -> OracleResult:
    """Estimate ``dim F_V`` for ``V = state^perp`` as (span rank - 1)."""
    cfg = cfg or OracleConfig()
    result, _ = _span_result(_hyperplane_sampler(state, cfg), state.shape, cfg)
    return result


def _family_sampler(generator, shape: SystemShape) -> SampleFn:
    def sample(rng, k):
        out = generator(rng)
        if isinstance(out, PureState):
            z = out.amplitudes
        elif isinstance(out, (list, tuple)):
            z = np.asarray(out[0], dtype=np.complex128)
            for f in out[1:]:
                z = np.kron(z, f)
        else:
            z = np.asarray(out, dtype=np.complex128).reshape(-1)
        if z.size != shape.d or not np.any(z):
            raise InvalidInputError(f"generator: expected a nonzero vector of length {shape.d}")
        return z

    return sample


def span_dim_of_family(
    generator: Callable[[np.random.Generator], object],
    shape: SystemShape,
    cfg: OracleConfig | None = None,
    stream: tuple = (0,),
) -> OracleResult:
    """Span rank of ``|z><z|`` over product vectors drawn from ``generator``.

    ``generator(rng)`` returns a :class:`PureState`, a full amplitude vector
    or a list of per-party factors.
    """
    cfg = cfg or OracleConfig()
    result, _ = _span_result(_family_sampler(generator, shape), shape, cfg, stream)
    return result


def family_rows(generator, shape: SystemShape, cfg: OracleConfig, stream: tuple = (0,)):
    """Vectorized rows of the main batch and of the saturation batch."""
    samples, extra = cfg.resolve(shape.d)
    sample = _family_sampler(generator, shape)
    main = _batched(sample, samples, cfg.seed, (*stream, 0), cfg.workers)
    more = _batched(sample, extra, cfg.seed, (*stream, 1), cfg.workers)
    return kernels.vectorize_outer_rows(main), kernels.vectorize_outer_rows(more)


def range_rank_oracle(state: PureState, S: Iterable[int], cfg: OracleConfig | None = None) -> int:
    """Complex rank of the ``S``-partial conjugates of product vectors in ``V``.

    These vectors lie in the range of ``Gamma_S(F_V)``, so the rank is ``d - 1``
    when the transposition respects the g.e. blocks and ``d`` otherwise.
    """
    cfg = cfg or OracleConfig()
    S = as_subset(S, state.shape.n)
    samples, _ = cfg.resolve(state.shape.d)
    sample = _hyperplane_sampler(state, cfg, transform=lambda fs: partial_conjugate(fs, S))
    vecs = _batched(sample, samples, cfg.seed, (2, 0), cfg.workers)
    vecs = vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
    return numerical_rank(vecs, cfg.rel_tol)
