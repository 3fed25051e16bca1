"""Randomized verification suites, one per claim.

Each suite draws its instances from a seeded stream, so a failing
report can be reproduced from its seed alone.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import expm

from ..discrimination import helstrom_two
from ..linalg import (
    BipartiteDims,
    InputError,
    haar_random_unitary,
    make_rng,
    projector,
)
from ..predictability import (
    delta_two_outcome,
    induced_ensemble,
    nonlocal_predictability,
)
from ..states import (
    AppendixStateFamily,
    DephasingSpec,
    classically_correlated,
    dephase,
    maximally_entangled,
    projective_measurement,
    schmidt_state,
    two_outcome_qubit_measurement,
)
from .closed_forms import advantage_beta, advantage_condition, closed_form_deltas, overlap_two_qubit

CLAIMS = ("T1", "T2", "T3", "O1", "O2", "T4", "T4b", "T5", "C1")
DEFAULT_DIMS = {"T1": (2, 3, 4), "T2": (2, 3, 4), "T3": (2, 3, 4), "O1": (2,), "O2": (2, 3, 4),
                "T4": (2,), "T4b": (2, 3, 4), "T5": (2, 3, 4), "C1": (2, 3, 4)}
DEFAULT_TOL = {"T5": 1e-9}
Q_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
SOLVER_TOL = 1e-9


@dataclass
class VerificationReport:
    claim: str
    trials: int
    failures: int
    worst_residual: float
    seed: int
    dims: list
    tol: float
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d


class _Tally:
    def __init__(self):
        self.trials = 0
        self.failures = 0
        self.worst = 0.0
        self.notes = []

    def record(self, residual: float, ok: bool, note: str = ""):
        self.trials += 1
        self.worst = max(self.worst, float(residual))
        if not ok:
            self.failures += 1
            if len(self.notes) < 10:
                self.notes.append(note or f"trial {self.trials}: residual {residual:.3e}")


def random_schmidt_spectrum(d: int, rng, min_gap: float = 0.0) -> np.ndarray:
    """Descending Dirichlet spectrum with p0 - p1 > min_gap."""
    while True:
        p = np.sort(rng.dirichlet(np.ones(d)))[::-1]
        if p[0] - p[1] > min_gap:
            return p


def random_partition(d: int, rng) -> list:
    """Random grouping of range(d) into between 2 and d non-empty groups."""
    k = int(rng.integers(2, d + 1))
    perm = rng.permutation(d)
    cuts = np.sort(rng.choice(np.arange(1, d), size=k - 1, replace=False))
    return [sorted(int(i) for i in g) for g in np.split(perm, cuts)]


def random_povm(d: int, n: int, rng) -> list:
    raw = []
    for _ in range(n):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        raw.append(g @ g.conj().T)
    w, v = np.linalg.eigh(sum(raw))
    s = (v * w ** -0.5) @ v.conj().T
    return [s @ a @ s for a in raw]


def column_overlap_deficit(u: np.ndarray) -> float:
    """max_j (1 - max_i |u_ij|^2): distance of a basis from a permuted computational basis."""
    return float(np.max(1 - np.max(np.abs(u) ** 2, axis=0)))


def _n(rho, dims, m):
    rep = nonlocal_predictability(rho, dims, m, tol=SOLVER_TOL)
    return rep.nonlocal_value, rep.local_bound, rep.certificate_gap


def _t1(dims, trials, rng, tol, t):
    for d in dims:
        for _ in range(trials):
            p = random_schmidt_spectrum(d, rng)
            ua, ub = haar_random_unitary(d, rng), haar_random_unitary(d, rng)
            bd = BipartiteDims(d, d)
            m = projective_measurement(ua)
            for label, rho in (("pure", schmidt_state(p, ua, ub).density()),
                               ("classical", classically_correlated(p, ua, ub))):
                n, loc, gap = _n(rho, bd, m)
                res = max(abs(n - 1), abs(loc - p[0]), gap)
                t.record(res, res <= tol and n > loc, f"d={d} {label}: N={n:.12f} loc={loc:.6f} p0={p[0]:.6f}")


def _t2(dims, trials, rng, tol, t):
    for d in dims:
        n_group = max(1, trials // 5)
        for k in range(trials + n_group):
            ua, ub, um = (haar_random_unitary(d, rng) for _ in range(3))
            rho = maximally_entangled(d, ua, ub).density()
            groups = None if k < trials else random_partition(d, rng)
            m = projective_measurement(um, groups)
            n, _, gap = _n(rho, BipartiteDims(d, d), m)
            res = max(abs(1 - n), gap)
            t.record(res, n >= 1 - tol and gap <= tol, f"d={d} groups={groups}: N={n:.12f} gap={gap:.2e}")


def hadamard_block_basis(d: int) -> np.ndarray:
    b = np.eye(d, dtype=complex)
    b[:2, :2] = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    return b


def _t3(dims, trials, rng, tol, t):
    for d in dims:
        for _ in range(trials):
            p = random_schmidt_spectrum(d, rng, min_gap=1e-3)
            ua, ub = haar_random_unitary(d, rng), haar_random_unitary(d, rng)
            rho = schmidt_state(p, ua, ub).density()
            m = projective_measurement(ua @ hadamard_block_basis(d))
            n, _, _ = _n(rho, BipartiteDims(d, d), m)
            expected = 1 - (np.sqrt(p[0]) - np.sqrt(p[1])) ** 2 / 2
            res = abs(n - expected)
            t.record(res, res <= tol and n < 1, f"d={d}: N={n:.12f} expected={expected:.12f}")


def _o1(dims, trials, rng, tol, t):
    bd = BipartiteDims(2, 2)
    for _ in range(trials):
        p0 = rng.uniform(0.5 + 5e-4, 1.0)
        p = np.array([p0, 1 - p0])
        while True:
            v = haar_random_unitary(2, rng)
            a00, a01 = np.conj(v[0, 0]), np.conj(v[0, 1])
            if min(abs(a00), abs(a01)) > 1e-3:
                break
        ub = haar_random_unitary(2, rng)
        psi = schmidt_state(p, np.eye(2), ub)
        c = psi.coefficient_matrix()
        vecs = [v[:, a].conj() @ c for a in range(2)]
        numeric = np.vdot(vecs[0], vecs[1])
        formula = overlap_two_qubit(p[0], p[1], a00, a01)
        ov_res = abs(numeric - formula)

        m = projective_measurement(v)
        n, _, _ = _n(psi.density(), bd, m)
        n_pred = (1 + np.sqrt(max(0.0, 1 - 4 * abs(formula) ** 2))) / 2
        strict = abs(formula) < 2e-3 or n < 1 - 1e-6
        res = max(abs(n - n_pred), ov_res)
        t.record(res, abs(n - n_pred) <= tol and ov_res <= 1e-12 and strict,
                 f"p0={p0:.6f}: N={n:.12f} predicted={n_pred:.12f} overlap residual={ov_res:.2e}")


def _o2(dims, trials, rng, tol, t):
    for d in dims:
        bd = BipartiteDims(d, d)
        m = projective_measurement(dim=d)
        for _ in range(trials):
            x = rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d)
            rho = projector(x / np.linalg.norm(x))
            n_pure, _, g1 = _n(rho, bd, m)
            n_deph, _, g2 = _n(dephase(rho, bd), bd, m)
            res = abs(n_pure - n_deph)
            t.record(res, res <= tol and max(g1, g2) <= tol,
                     f"d={d}: N(pure)={n_pure:.12f} N(dephased)={n_deph:.12f}")


def _helstrom_value(rho, bd, m) -> float:
    ens = induced_ensemble(rho, bd, m)
    if len(ens.states) == 1:
        return 1.0
    return helstrom_two(ens.priors[0], ens.states[0], ens.priors[1], ens.states[1]).value


def _t4(dims, trials, rng, tol, t):
    bd = BipartiteDims(2, 2)
    for k in range(trials):
        while True:
            p0 = rng.uniform(0.0, 1.0)
            if abs(p0 - 0.5) > 1e-3 and 0 < p0 < 1:
                break
        theta = 0.0 if k % 2 == 0 else rng.uniform(0.0, np.pi / 2)
        beta = advantage_beta(p0, theta)
        fam = AppendixStateFamily(p0, theta, rng.uniform(0.0, 2 * np.pi))
        rho = fam.state().density()
        m = two_outcome_qubit_measurement(beta, 0.0)
        d_pure = delta_two_outcome(rho, bd, m)
        d_deph = delta_two_outcome(dephase(rho, bd), bd, m)
        cf = closed_form_deltas(p0, theta, beta, 0.0)
        res = max(abs(cf.delta_pure - d_pure), abs(cf.delta_dephased - d_deph))
        n_pure = _helstrom_value(rho, bd, m)
        n_deph = _helstrom_value(dephase(rho, bd), bd, m)
        ok = (advantage_condition(p0, theta, beta, 0.0) and d_deph - d_pure > 1e-10
              and n_deph > n_pure and res <= 1e-10)
        t.record(res, ok, f"p0={p0:.6f} theta={theta:.4f} beta={beta:.6f}: "
                          f"delta pure={d_pure:.3e} dephased={d_deph:.3e}")


def _near_identity_unitary(d, rng, eps):
    h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = (h + h.conj().T) / 2
    return expm(1j * eps * h / np.linalg.norm(h, 2))


def _t4b(dims, trials, rng, tol, t):
    for d in dims:
        bd = BipartiteDims(d, d)
        for k in range(trials):
            ub = haar_random_unitary(d, rng)
            rho = maximally_entangled(d, np.eye(d), ub).density()
            # every tenth basis is a small rotation of the computational one
            um = _near_identity_unitary(d, rng, 10 ** rng.uniform(-4, -1)) if k % 10 == 9 \
                else haar_random_unitary(d, rng)
            m = projective_measurement(um)
            n_pure, _, g1 = _n(rho, bd, m)
            n_deph, _, g2 = _n(dephase(rho, bd), bd, m)
            deficit = column_overlap_deficit(um)
            ok = abs(n_pure - 1) <= tol and max(g1, g2) <= tol
            if deficit >= 1e-2:
                ok = ok and n_pure - n_deph >= 1e-3
            t.record(abs(n_pure - 1), ok, f"d={d} deficit={deficit:.3e}: N(pure)={n_pure:.12f} "
                                          f"N(dephased)={n_deph:.12f}")


def _c1(dims, trials, rng, tol, t):
    for d in dims:
        bd = BipartiteDims(d, d)
        for _ in range(trials):
            ub = haar_random_unitary(d, rng)
            rho = maximally_entangled(d, np.eye(d), ub).density()
            perm = np.eye(d)[:, rng.permutation(d)] * np.exp(1j * rng.uniform(0, 2 * np.pi, d))
            m = projective_measurement(perm)
            n_pure, _, _ = _n(rho, bd, m)
            n_deph, _, _ = _n(dephase(rho, bd), bd, m)
            res = max(abs(n_pure - n_deph), abs(1 - n_pure))
            t.record(res, res <= tol, f"d={d}: N(pure)={n_pure:.12f} N(dephased)={n_deph:.12f}")


def random_rank_r_pair(d: int, rng) -> tuple[list, int]:
    """Two orthogonal projectors summing to a random rank-r projector, 1 <= r <= d."""
    u = haar_random_unitary(d, rng)
    r = int(rng.integers(1, d + 1))
    k = int(rng.integers(0, r + 1))
    pi0 = sum((projector(u[:, i]) for i in range(k)), np.zeros((d, d), dtype=complex))
    pi1 = sum((projector(u[:, i]) for i in range(k, r)), np.zeros((d, d), dtype=complex))
    return [pi0, pi1], r


def _t5(dims, trials, rng, tol, t):
    for d in dims:
        bd = BipartiteDims(d, d)
        for _ in range(trials):
            ua, ub = haar_random_unitary(d, rng), haar_random_unitary(d, rng)
            rho = maximally_entangled(d, ua, ub).density()
            pair, r = random_rank_r_pair(d, rng)
            d_rho = delta_two_outcome(rho, bd, pair)
            worst = abs(d_rho - r / d)
            ok = worst <= tol
            for q in Q_GRID:
                d_q = delta_two_outcome(dephase(rho, bd, DephasingSpec(q)), bd, pair)
                excess = max(0.0, d_q - r / d)
                worst = max(worst, excess)
                ok = ok and excess <= tol
            t.record(worst, ok, f"d={d} r={r}: delta={d_rho:.12f}")


_SUITES = {"T1": _t1, "T2": _t2, "T3": _t3, "O1": _o1, "O2": _o2,
           "T4": _t4, "T4b": _t4b, "T5": _t5, "C1": _c1}


def verify_claim(claim: str, dims=None, trials: int = 100, seed: int = 0,
                 tol: float | None = None) -> VerificationReport:
    """Run the randomized check for one claim; ``trials`` is per dimension."""
    if claim not in _SUITES:
        raise InputError(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")
    if trials < 1:
        raise InputError("trials must be positive")
    dims = tuple(DEFAULT_DIMS[claim] if dims is None else
                 ((dims,) if np.isscalar(dims) else dims))
    if any(int(d) < 2 or int(d) ** 2 > 64 for d in dims):
        raise InputError(f"dimensions {dims} outside [2, 8]")
    if claim in ("O1", "T4") and tuple(dims) != (2,):
        raise InputError(f"claim {claim} is a two-qubit statement; use dims=2")
    tol = DEFAULT_TOL.get(claim, 1e-8) if tol is None else tol
    tally = _Tally()
    _SUITES[claim](tuple(int(d) for d in dims), trials, make_rng(seed), tol, tally)
    return VerificationReport(claim, tally.trials, tally.failures, tally.worst, int(seed),
                              list(dims), tol, tally.notes)

