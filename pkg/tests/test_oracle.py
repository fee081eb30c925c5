import numpy as np
import pytest

from conftest import random_state, random_vector
from sepfaces import (
    InvalidInputError,
    OracleConfig,
    PureState,
    SystemShape,
    face_dim_formula,
    face_dim_oracle,
    ge_decompose,
    range_rank_oracle,
    sample_product_in_hyperplane,
    span_dim_of_family,
    tensor_product,
    theta_prime_contains,
)
from sepfaces.oracle import ORTHO_TOL, orthogonality_residual


def test_sampler_orthogonal(ket11, ghz, rng):
    for state in (ket11, ghz, random_state(rng, (3, 2, 2))):
        for i in range(1, state.shape.n + 1):
            for _ in range(20):
                fs = sample_product_in_hyperplane(state, i, rng)
                assert orthogonality_residual(state, fs) < ORTHO_TOL


def test_sampler_ket11_structure(ket11, rng):
    fs = sample_product_in_hyperplane(ket11, 2, rng)
    # <11|z> = z1[1] z2[1] = 0 with z1[1] generic forces z2[1] = 0
    assert abs(fs[1][1]) < 1e-12 * np.linalg.norm(fs[1])


class _FixedFirst:
    """RNG stand-in that makes the first factor (1, 0)."""

    def __init__(self, rng):
        self.rng = rng
        self.calls = 0

    def standard_normal(self, size):
        self.calls += 1
        if self.calls <= 2:
            return np.array([1.0, 0.0]) * (self.calls == 1) * np.sqrt(2)
        return self.rng.standard_normal(size)


def test_sampler_degenerate_branch(ket11, rng):
    fake = _FixedFirst(rng)
    fs = sample_product_in_hyperplane(ket11, 2, fake)
    np.testing.assert_allclose(fs[0], [1, 0])
    # functional vanishes, so the second factor is unconstrained and generic
    assert abs(fs[1][1]) > 1e-6
    assert orthogonality_residual(ket11, fs) < ORTHO_TOL


def test_sampler_rejects_bad_party(ket11, rng):
    with pytest.raises(InvalidInputError):
        sample_product_in_hyperplane(ket11, 3, rng)


@pytest.mark.parametrize(
    "amps, dims, expected",
    [
        ([0, 0, 0, 1], [2, 2], 6),
        (np.array([1, 0, 0, 1]) / np.sqrt(2), [2, 2], 8),
        (np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2), [2, 2, 2], 48),
    ],
)
def test_face_dim_oracle(amps, dims, expected):
    r = face_dim_oracle(PureState.from_amplitudes(dims, amps))
    assert r.dim == expected and r.saturated
    assert r.samples == 4 * np.prod(dims) ** 2
    assert r.singular_value_gap > 1e6


def test_oracle_agrees_with_formula_mixed_blocks(rng):
    cases = [
        np.kron(random_vector(rng, 4), random_vector(rng, 3)),
        np.kron(np.kron(random_vector(rng, 2), random_vector(rng, 2)), random_vector(rng, 3)),
        random_vector(rng, 12),
    ]
    for amps in cases:
        s = PureState.from_amplitudes([2, 2, 3], amps)
        r = face_dim_oracle(s, OracleConfig(seed=5))
        assert r.saturated
        assert r.dim == face_dim_formula(ge_decompose(s))


def test_fixed_party_policy_misses_components(zero_bell):
    """Constraining only party 1 samples one component of the product variety."""
    assert face_dim_oracle(zero_bell).dim == 42
    assert face_dim_oracle(zero_bell, OracleConfig(party_policy=1)).dim == 15


def test_determinism_and_doubling(zero_bell):
    cfg = OracleConfig(seed=123)
    assert face_dim_oracle(zero_bell, cfg) == face_dim_oracle(zero_bell, cfg)
    doubled = face_dim_oracle(zero_bell, OracleConfig(seed=123, samples=2 * 4 * 64))
    assert doubled.span_rank == face_dim_oracle(zero_bell, cfg).span_rank


def test_workers_do_not_change_result(ghz):
    assert face_dim_oracle(ghz, OracleConfig(seed=9, workers=4)) == face_dim_oracle(ghz, OracleConfig(seed=9))


def test_config_validation():
    with pytest.raises(InvalidInputError):
        OracleConfig(saturation_extra=3)
    with pytest.raises(InvalidInputError):
        OracleConfig(seed=-1)
    with pytest.raises(InvalidInputError):
        OracleConfig(samples=10).resolve(4)
    assert OracleConfig().resolve(4) == (64, 16)
    assert OracleConfig(samples=20).resolve(4) == (20, 8)


def test_range_rank_examples(bell, zero_bell):
    assert range_rank_oracle(bell, {1}) == 4
    for S in ([], [1], [2], [1, 2]):
        assert range_rank_oracle(tensor_product([(1, 2j), (3, 1)]), S) == 3
    assert range_rank_oracle(zero_bell, {2}) == 8


def test_range_rank_tracks_blocks(rng):
    a = PureState.from_amplitudes([2, 3, 2], np.kron(random_vector(rng, 6), random_vector(rng, 2)))
    dec = ge_decompose(a)
    for S in a.shape.subsets():
        r = range_rank_oracle(a, S)
        assert r == (11 if theta_prime_contains(dec, S) else 12)


def test_span_dim_of_family(ket11):
    const = span_dim_of_family(lambda rng: [(1, 0), (0, 1)], SystemShape((2, 2)))
    assert (const.span_rank, const.dim) == (1, 0)

    def in_v(rng):
        return sample_product_in_hyperplane(ket11, 1 + rng.integers(2), rng)

    assert span_dim_of_family(in_v, SystemShape((2, 2))).dim == 6


def test_span_dim_of_family_rejects_bad_generator():
    with pytest.raises(InvalidInputError, match="generator"):
        span_dim_of_family(lambda rng: np.zeros(4), SystemShape((2, 2)))
