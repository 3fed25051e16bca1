"""Dense complex linear algebra kernel.

Bipartite operators use the convention that subsystem A is the slow index:
the basis vector |i_a, i_b> sits at row ``i_a * d_B + i_b``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
EIG_CLAMP = 1e-10
MAX_TOTAL_DIM = 64


class InputError(ValueError):
    """Raised when an input violates a documented precondition."""


@dataclass(frozen=True)
class BipartiteDims:
    d_a: int
    d_b: int

    def __post_init__(self):
        if int(self.d_a) < 1 or int(self.d_b) < 1:
            raise InputError(f"subsystem dimensions must be positive, got {self.d_a}x{self.d_b}")
        if self.d_a * self.d_b > MAX_TOTAL_DIM:
            raise InputError(
                f"total dimension {self.d_a * self.d_b} exceeds cap {MAX_TOTAL_DIM}")

    @property
    def total(self) -> int:
        return self.d_a * self.d_b

    def check(self, m: np.ndarray) -> None:
        if m.shape != (self.total, self.total):
            raise InputError(
                f"matrix of shape {m.shape} inconsistent with dims {self.d_a}x{self.d_b}")


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite square complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InputError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    return a


def hermitian_part(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return (m + m^dagger)/2, rejecting inputs further than ``tol`` from Hermitian."""
    a = as_matrix(m)
    dev = np.max(np.abs(a - a.conj().T))
    if dev > tol:
        raise InputError(f"matrix is not Hermitian (max deviation {dev:.3e} > {tol:g})")
    return (a + a.conj().T) / 2


def kron(a, b) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[0] * b.shape[0] > MAX_TOTAL_DIM:
        raise InputError(
            f"tensor product dimension {a.shape[0] * b.shape[0]} exceeds cap {MAX_TOTAL_DIM}")
    return np.kron(a, b)


def partial_trace(m, dims: BipartiteDims, keep: str = "B") -> np.ndarray:
    """Trace out one subsystem of a bipartite operator.

    ``keep="B"`` returns tr_A(m); ``keep="A"`` returns tr_B(m).
    """
    a = as_matrix(m)
    dims.check(a)
    t = a.reshape(dims.d_a, dims.d_b, dims.d_a, dims.d_b)
    if keep == "B":
        return np.einsum("ijik->jk", t)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    raise InputError(f"keep must be 'A' or 'B', got {keep!r}")


def eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition with eigenvalues in descending order."""
    h = hermitian_part(m)
    w, v = np.linalg.eigh(h)
    return w[::-1].copy(), v[:, ::-1].copy()


def trace_norm_hermitian(m) -> float:
    w, _ = eigh(m)
    return float(np.sum(np.abs(w)))


def min_eigenvalue(m) -> float:
    return float(np.linalg.eigvalsh(hermitian_part(m))[0])


def is_psd(m, tol: float = EIG_CLAMP) -> bool:
    return min_eigenvalue(m) >= -tol


def psd_function(m, fn, cutoff: float = 1e-12) -> np.ndarray:
    """Apply ``fn`` to the eigenvalues of a PSD matrix above ``cutoff * max``.

    Eigenvalues at or below the cutoff map to zero, so for ``fn = x**-0.5``
    this gives the pseudo-inverse square root on the support.
    """
    w, v = np.linalg.eigh(hermitian_part(m))
    top = np.max(np.abs(w)) if w.size else 0.0
    keep = w > cutoff * top if top > 0 else np.zeros_like(w, dtype=bool)
    fw = np.zeros_like(w)
    fw[keep] = fn(w[keep])
    return (v * fw) @ v.conj().T


def support_projector(m, cutoff: float = 1e-12) -> np.ndarray:
    return psd_function(m, np.ones_like, cutoff)


def make_rng(seed: int = 0) -> np.random.Generator:
    """Seeded random stream (PCG64); the same seed gives the same sequence everywhere."""
    if not 0 <= int(seed) < 2**64:
        raise InputError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def lane_rng(seed: int, lane: int) -> np.random.Generator:
    """Independent stream for one concurrent lane, derived from ``(seed, lane)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(lane)])))


def haar_random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    if d < 1 or d > MAX_TOTAL_DIM:
        raise InputError(f"unitary dimension must be in [1, {MAX_TOTAL_DIM}], got {d}")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density matrix from a d x rank Ginibre matrix (full rank by default)."""
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return x / np.linalg.norm(x)


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())
