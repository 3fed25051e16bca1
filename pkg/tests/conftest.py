import numpy as np
import pytest

from nlpredict.linalg import make_rng


@pytest.fixture
def rng():
    return make_rng(20261016)


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def ket(*bits, d=2):
    v = np.zeros(d ** len(bits), dtype=complex)
    idx = 0
    for b in bits:
        idx = idx * d + b
    v[idx] = 1
    return v


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _ in test_acceptance.CRITERIA:
        if name in test_acceptance.RESULTS:
            ok, detail = test_acceptance.RESULTS[name]
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
