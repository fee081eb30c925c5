import numpy as np
import pytest

from conftest import random_state, random_unitary
from sepfaces import (
    InvalidInputError,
    OracleConfig,
    PureState,
    ReportOptions,
    SystemShape,
    face_dim_formula,
    face_report,
    ge_decompose,
    is_genuinely_entangled,
    max_induced_dim,
    product_face_dim,
    tensor_product,
)


def test_formula_examples(ghz, zero_bell):
    assert face_dim_formula(ge_decompose(ghz)) == 48
    assert face_dim_formula(ge_decompose(tensor_product([(1, 0), (0, 1)]))) == 6
    assert face_dim_formula(ge_decompose(zero_bell)) == 42
    r2 = PureState.from_amplitudes([3, 3], [1, 0, 0, 0, 1, 0, 0, 0, 0])
    assert face_dim_formula(ge_decompose(r2)) == 63


def test_example_arithmetic_against_formula():
    # 81 - 1 - 5*5 for a product vector in 3x3; 36 - 1 - 3*5 in 2x3
    assert product_face_dim(SystemShape((3, 3))) == 55
    assert product_face_dim(SystemShape((2, 3))) == 20
    assert product_face_dim(SystemShape((2, 2))) == 6


@pytest.mark.parametrize("d, expected", [(4, 8), (6, 24), (9, 63)])
def test_max_induced_dim(d, expected):
    assert max_induced_dim(d) == expected


def test_max_induced_dim_accepts_shape():
    assert max_induced_dim(SystemShape((2, 2, 2))) == 48


def test_is_genuinely_entangled(ghz):
    assert is_genuinely_entangled(ghz)
    assert not is_genuinely_entangled(tensor_product([(1, 0)] * 3))
    assert is_genuinely_entangled(PureState.from_amplitudes([3], [1, 2, 0]))


def test_full_product_paths_agree(rng):
    for dims in [(2, 2), (2, 3), (3, 2, 2), (2, 2, 2, 2), (4,)]:
        s = tensor_product([rng.standard_normal(k) + 1j for k in dims])
        assert face_dim_formula(ge_decompose(s)) == product_face_dim(s.shape)


def test_formula_invariant_under_local_unitaries_and_permutations(rng):
    for _ in range(10):
        a = random_state(rng, (2, 2)).amplitudes
        s = PureState.from_amplitudes([2, 3, 2], np.kron(a, rng.standard_normal(3)).reshape(2, 2, 3).transpose(0, 2, 1).reshape(-1))
        u = np.kron(np.kron(random_unitary(rng, 2), random_unitary(rng, 3)), random_unitary(rng, 2))
        s2 = PureState(s.shape, u @ s.amplitudes)
        base = face_dim_formula(ge_decompose(s))
        assert base == face_dim_formula(ge_decompose(s2))
        assert base == face_dim_formula(ge_decompose(s.permute_parties([2, 3, 1])))
        assert base == 144 - 1 - 7 * 5


def test_report_formula_only(ghz):
    r = face_report(ghz)
    assert r.formula_dim == 48 and r.is_genuinely_entangled
    assert r.oracle_dim is None and r.theta_scan is None
    d = r.to_dict()
    assert d["max_induced_dim"] == 48 and d["theta_scan"] == [] and d["saturated"] is None


def test_report_with_oracle(ket11):
    r = face_report(ket11, ReportOptions(with_oracle=True))
    assert (r.formula_dim, r.oracle_dim, r.oracle_saturated) == (6, 6, True)


def test_report_theta_scan_bell(bell):
    r = face_report(bell, ReportOptions(theta_scan=True))
    ranks = {e.subset: e.range_rank for e in r.theta_scan}
    assert ranks == {(): 3, (1,): 4, (2,): 4, (1, 2): 3}
    fixes = {e.subset: e.fixes_face for e in r.theta_scan}
    assert fixes == {(): True, (1,): False, (2,): False, (1, 2): True}


def test_theta_scan_cap():
    s = tensor_product([(1, 0)] * 7)
    with pytest.raises(InvalidInputError, match="subsets"):
        face_report(s, ReportOptions(theta_scan=True))
    r = face_report(s, ReportOptions(theta_scan=True, subsets=[[1], [2, 3]], oracle=OracleConfig(samples=16384)))
    assert [e.range_rank for e in r.theta_scan] == [127, 127]


def test_report_matches_formula(rng):
    for dims in [(2, 2), (2, 2, 2), (3, 2)]:
        s = random_state(rng, dims)
        assert face_report(s).formula_dim == face_dim_formula(ge_decompose(s))
