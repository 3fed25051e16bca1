import numpy as np
import pytest

from nlpredict.lab.claims import (
    CLAIMS,
    column_overlap_deficit,
    random_partition,
    random_povm,
    hadamard_block_basis,
    verify_claim,
)
from nlpredict.linalg import InputError, make_rng


@pytest.mark.parametrize("claim", CLAIMS)
def test_suite_passes(claim):
    rep = verify_claim(claim, trials=10, seed=7)
    assert rep.passed, rep.notes
    assert rep.trials >= 10


def test_deterministic():
    a = verify_claim("T2", dims=3, trials=5, seed=42).to_dict()
    b = verify_claim("T2", dims=3, trials=5, seed=42).to_dict()
    assert a == b and a["pass"] is True


def test_tolerance_can_fail():
    rep = verify_claim("T3", dims=2, trials=5, seed=1, tol=1e-30)
    assert not rep.passed and rep.notes


def test_invalid_arguments():
    with pytest.raises(InputError):
        verify_claim("T9")
    with pytest.raises(InputError):
        verify_claim("O1", dims=3)
    with pytest.raises(InputError):
        verify_claim("T1", dims=9)
    with pytest.raises(InputError):
        verify_claim("T1", trials=0)


def test_helpers():
    rng = make_rng(0)
    for d in (2, 3, 4):
        parts = random_partition(d, rng)
        assert sorted(i for g in parts for i in g) == list(range(d)) and len(parts) >= 2
        povm = random_povm(d, 3, rng)
        np.testing.assert_allclose(sum(povm), np.eye(d), atol=1e-12)
        b = hadamard_block_basis(d)
        np.testing.assert_allclose(b.conj().T @ b, np.eye(d), atol=1e-12)
    assert column_overlap_deficit(np.eye(3)[:, [2, 0, 1]]) == 0.0
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert column_overlap_deficit(h) == pytest.approx(0.5)
