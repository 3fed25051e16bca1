"""States, measurements and dephasing channels on bipartite systems."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .linalg import (
    EIG_CLAMP,
    BipartiteDims,
    InputError,
    as_matrix,
    hermitian_part,
    min_eigenvalue,
    projector,
)

NORM_TOL = 1e-10
SCHMIDT_CUTOFF = 1e-12
MAX_ENT_TOL = 1e-9

RANK1_PROJECTIVE = "rank1-projective"
PROJECTIVE = "projective"
GENERAL_POVM = "general-POVM"
KINDS = (RANK1_PROJECTIVE, PROJECTIVE, GENERAL_POVM)


@dataclass
class BipartitePureState:
    dims: BipartiteDims
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).ravel()
        if self.amplitudes.size != self.dims.total:
            raise InputError(
                f"amplitude vector of length {self.amplitudes.size} does not match "
                f"dims {self.dims.d_a}x{self.dims.d_b}")
        if not np.all(np.isfinite(self.amplitudes)):
            raise InputError("amplitudes have non-finite entries")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1) > NORM_TOL:
            raise InputError(f"state violates unit norm: |psi| = {norm:.12g}")

    def density(self) -> np.ndarray:
        return projector(self.amplitudes)

    def coefficient_matrix(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims.d_a, self.dims.d_b)


@dataclass
class SchmidtForm:
    """Descending Schmidt coefficients with full local bases (columns).

    ``coefficients`` has length min(d_A, d_B) and is zero-padded past the
    numerical rank. Columns of ``basis_b`` beyond the rank complete an
    orthonormal basis and carry no weight.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def rank(self) -> int:
        return int(np.sum(self.coefficients > SCHMIDT_CUTOFF))

    def reconstruct(self) -> np.ndarray:
        k = self.coefficients.size
        out = np.zeros(self.basis_a.shape[0] * self.basis_b.shape[0], dtype=complex)
        for i in range(k):
            out += np.sqrt(self.coefficients[i]) * np.kron(self.basis_a[:, i], self.basis_b[:, i])
        return out


@dataclass
class Measurement:
    effects: list
    kind: str = GENERAL_POVM
    dim: int = field(init=False)

    def __post_init__(self):
        if len(self.effects) < 1:
            raise InputError("a measurement needs at least one effect")
        self.effects = [as_matrix(e, "effect") for e in self.effects]
        self.dim = self.effects[0].shape[0]
        if any(e.shape != (self.dim, self.dim) for e in self.effects):
            raise InputError("all effects must share one dimension")
        if self.kind not in KINDS:
            raise InputError(f"unknown measurement kind {self.kind!r}")

    def __len__(self):
        return len(self.effects)

    @property
    def is_projective(self) -> bool:
        return self.kind in (RANK1_PROJECTIVE, PROJECTIVE)


@dataclass
class ValidationReport:
    psd_violation: float
    completeness_residual: float
    projectivity_residual: float
    passed: bool
    failures: list


@dataclass(frozen=True)
class AppendixStateFamily:
    """Two-qubit family sqrt(p0)|00> + sqrt(p1)|1>(cos(t/2)|0> + sin(t/2)e^{i phi}|1>)."""

    p0: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0 < self.p0 < 1:
            raise InputError(f"p0 must lie in (0, 1), got {self.p0}")
        if not 0 <= self.theta <= np.pi:
            raise InputError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0 <= self.phi <= 2 * np.pi:
            raise InputError(f"phi must lie in [0, 2pi], got {self.phi}")

    @property
    def p1(self) -> float:
        return 1.0 - self.p0

    def chi1(self) -> np.ndarray:
        return np.array([np.cos(self.theta / 2), np.sin(self.theta / 2) * np.exp(1j * self.phi)])

    def state(self) -> BipartitePureState:
        v = np.sqrt(self.p0) * np.kron([1, 0], [1, 0]) + np.sqrt(self.p1) * np.kron([0, 1], self.chi1())
        return BipartitePureState(BipartiteDims(2, 2), v)


@dataclass
class DephasingSpec:
    q: float = 1.0
    basis: np.ndarray | None = None

    def __post_init__(self):
        if not 0 <= self.q <= 1:
            raise InputError(f"dephasing strength q must lie in [0, 1], got {self.q}")
        if self.basis is not None:
            self.basis = check_orthonormal(self.basis, "dephasing basis")


def check_orthonormal(basis, name: str = "basis") -> np.ndarray:
    b = np.asarray(basis, dtype=complex)
    if b.ndim != 2:
        raise InputError(f"{name} must be a matrix of column vectors")
    dev = np.max(np.abs(b.conj().T @ b - np.eye(b.shape[1])))
    if dev > NORM_TOL:
        raise InputError(f"{name} is not orthonormal (deviation {dev:.3e})")
    return b


def _fix_phase(v: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(np.abs(v) > SCHMIDT_CUTOFF)
    if idx.size == 0:
        return v
    a = v[idx[0]]
    return v * (abs(a) / a)


def schmidt_decompose(psi: BipartitePureState) -> SchmidtForm:
    """Schmidt form from the eigendecomposition of the A-marginal.

    Each A-vector is phase-fixed so its first significant amplitude is real
    and positive; the matched B-vector follows from the coefficient matrix.
    """
    c = psi.coefficient_matrix()
    d_a, d_b = c.shape
    rho_a = hermitian_part(c @ c.conj().T)
    w, u = np.linalg.eigh(rho_a)
    w, u = w[::-1], u[:, ::-1]
    k = min(d_a, d_b)
    coeffs = np.clip(w[:k].real, 0.0, None)
    coeffs[coeffs <= SCHMIDT_CUTOFF] = 0.0
    basis_a = np.column_stack([_fix_phase(u[:, i]) for i in range(d_a)])
    r = int(np.sum(coeffs > 0))
    cols = [(basis_a[:, i].conj() @ c) / np.sqrt(coeffs[i]) for i in range(r)]
    if r:
        b = np.column_stack(cols)
        # re-orthonormalize within roundoff; columns are orthogonal by construction
        b = b / np.linalg.norm(b, axis=0)
    else:
        b = np.zeros((d_b, 0), dtype=complex)
    if r < d_b:
        comp = null_space(b.conj().T) if r else np.eye(d_b, dtype=complex)
        b = np.column_stack([b, comp]) if r else comp
    return SchmidtForm(coeffs, basis_a, b)


def is_maximally_entangled(psi: BipartitePureState) -> bool:
    if psi.dims.d_a != psi.dims.d_b:
        return False
    d = psi.dims.d_a
    sf = schmidt_decompose(psi)
    return sf.rank == d and float(np.max(np.abs(sf.coefficients - 1 / d))) <= MAX_ENT_TOL


def schmidt_state(p, basis_a=None, basis_b=None) -> BipartitePureState:
    """sum_i sqrt(p_i)|a_i>|b_i>. ``basis_b`` columns need only be normalized."""
    p = _probability_vector(p)
    d_a = p.size if basis_a is None else np.asarray(basis_a).shape[0]
    a = np.eye(d_a, dtype=complex) if basis_a is None else check_orthonormal(basis_a, "basis_a")
    b = np.eye(p.size, dtype=complex) if basis_b is None else np.asarray(basis_b, dtype=complex)
    if a.shape[1] < p.size or b.shape[1] < p.size:
        raise InputError("bases have fewer vectors than coefficients")
    v = sum(np.sqrt(p[i]) * np.kron(a[:, i], b[:, i]) for i in range(p.size))
    return BipartitePureState(BipartiteDims(a.shape[0], b.shape[0]), v)


def maximally_entangled(d: int, basis_a=None, basis_b=None) -> BipartitePureState:
    if d < 2:
        raise InputError(f"maximally entangled state needs d >= 2, got {d}")
    return schmidt_state(np.full(d, 1.0 / d), basis_a, basis_b)


def _probability_vector(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or np.any(p < -NORM_TOL) or abs(p.sum() - 1) > NORM_TOL:
        raise InputError(f"not a probability vector: {p}")
    return np.clip(p, 0.0, None)


def classically_correlated(p, basis_a=None, basis_b=None) -> np.ndarray:
    """sum_i p_i |a_i b_i><a_i b_i| as a density matrix."""
    p = _probability_vector(p)
    a = np.eye(p.size, dtype=complex) if basis_a is None else check_orthonormal(basis_a, "basis_a")
    b = np.eye(p.size, dtype=complex) if basis_b is None else np.asarray(basis_b, dtype=complex)
    if a.shape[0] * b.shape[0] > 64:
        raise InputError("total dimension exceeds cap 64")
    return sum(p[i] * projector(np.kron(a[:, i], b[:, i])) for i in range(p.size))


def check_density(rho, dims: BipartiteDims | None = None, name: str = "state") -> np.ndarray:
    r = hermitian_part(as_matrix(rho, name))
    if dims is not None:
        dims.check(r)
    tr = np.trace(r).real
    if abs(tr - 1) > NORM_TOL:
        raise InputError(f"{name} violates unit trace: tr = {tr:.12g}")
    lam = min_eigenvalue(r)
    if lam < -EIG_CLAMP:
        raise InputError(f"{name} violates positivity: min eigenvalue {lam:.3e}")
    return r


def dephase(rho, dims: BipartiteDims, spec: DephasingSpec | None = None) -> np.ndarray:
    """Partial dephasing q*D_A(rho) + (1-q)*rho on subsystem A.

    D_A removes every coherence between distinct basis vectors of A.
    """
    spec = spec or DephasingSpec()
    r = as_matrix(rho)
    dims.check(r)
    basis = np.eye(dims.d_a, dtype=complex) if spec.basis is None else spec.basis
    if basis.shape[0] != dims.d_a:
        raise InputError("dephasing basis does not match subsystem A")
    full = np.zeros_like(r)
    eye_b = np.eye(dims.d_b)
    for i in range(basis.shape[1]):
        p = np.kron(projector(basis[:, i]), eye_b)
        full += p @ r @ p
    return spec.q * full + (1 - spec.q) * r


def projective_measurement(basis=None, groups: Sequence[Sequence[int]] | None = None,
                           dim: int | None = None) -> Measurement:
    """Projective measurement whose effects sum basis projectors over each group."""
    if basis is None:
        if dim is None:
            raise InputError("need a basis or a dimension")
        basis = np.eye(dim, dtype=complex)
    b = check_orthonormal(basis)
    d = b.shape[0]
    if b.shape[1] != d:
        raise InputError("basis must be complete")
    if groups is None:
        groups = [[i] for i in range(d)]
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(d)) or any(len(g) == 0 for g in groups):
        raise InputError(f"groups {groups} do not partition range({d})")
    effects = [sum(projector(b[:, i]) for i in g) for g in groups]
    kind = RANK1_PROJECTIVE if all(len(g) == 1 for g in groups) else PROJECTIVE
    return Measurement(effects, kind)


def two_outcome_qubit_measurement(beta: float, gamma: float) -> Measurement:
    """pi_0 = P(cos(b/2)|0> + sin(b/2)e^{ig}|1>), pi_1 its orthocomplement.

    The observable pi_0 - pi_1 has <0|.|0> = cos(b) and <0|.|1> = e^{-ig} sin(b).
    """
    if not 0 <= beta <= np.pi:
        raise InputError(f"beta must lie in [0, pi], got {beta}")
    if not 0 <= gamma <= 2 * np.pi:
        raise InputError(f"gamma must lie in [0, 2pi), got {gamma}")
    c, s, e = np.cos(beta / 2), np.sin(beta / 2), np.exp(1j * gamma)
    v0 = np.array([c, s * e])
    v1 = np.array([s, -e * c])
    return Measurement([projector(v0), projector(v1)], RANK1_PROJECTIVE)


def classify_triviality(m: Measurement, support_a) -> str:
    """'non-trivial' iff at least two effects act on the support of A."""
    s = hermitian_part(as_matrix(support_a, "support"))
    if s.shape != (m.dim, m.dim) or np.max(np.abs(s @ s - s)) > NORM_TOL:
        raise InputError("support_A must be a projector on Alice's space")
    active = sum(1 for e in m.effects if np.max(np.abs(e @ s)) > NORM_TOL)
    return "non-trivial" if active >= 2 else "trivial"


def validate_measurement(m: Measurement, tol: float = NORM_TOL) -> ValidationReport:
    failures = []
    psd = 0.0
    for e in m.effects:
        h = (e + e.conj().T) / 2
        psd = max(psd, -float(np.linalg.eigvalsh(h)[0]), float(np.max(np.abs(e - e.conj().T))))
    if psd > tol:
        failures.append(f"effect not positive semidefinite (violation {psd:.3e})")
    comp = float(np.max(np.abs(sum(m.effects) - np.eye(m.dim))))
    if comp > tol:
        failures.append(f"effects do not sum to identity (residual {comp:.3e})")
    proj = 0.0
    if m.is_projective:
        for i, a in enumerate(m.effects):
            for j, b in enumerate(m.effects):
                target = a if i == j else 0
                proj = max(proj, float(np.max(np.abs(a @ b - target))))
        if proj > tol:
            failures.append(f"effects are not orthogonal projectors (residual {proj:.3e})")
    return ValidationReport(max(psd, 0.0), comp, proj, not failures, failures)
