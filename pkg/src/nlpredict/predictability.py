"""Nonlocal predictability of Alice's outcomes from Bob's side."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discrimination import Ensemble, min_error_solve
from .linalg import BipartiteDims, InputError, as_matrix, partial_trace, trace_norm_hermitian
from .states import Measurement, check_density

ZERO_PROB = 1e-12


@dataclass
class PredictabilityReport:
    n_outcomes: int
    local_bound: float
    nonlocal_value: float
    delta: float | None
    violation: float
    bob_povm: Measurement
    certificate_gap: float
    converged: bool = True
    local_bound_index: int = 0


def _check_inputs(rho, dims: BipartiteDims, effects) -> np.ndarray:
    r = check_density(rho, dims)
    for e in effects:
        if as_matrix(e).shape != (dims.d_a, dims.d_a):
            raise InputError(
                f"Alice's effect of shape {np.shape(e)} does not act on d_A = {dims.d_a}")
    return r


def _effects(m) -> list:
    return m.effects if isinstance(m, Measurement) else [as_matrix(e) for e in m]


def conditional_operators(rho, dims: BipartiteDims, m) -> list:
    """Unnormalized Bob operators tr_A(pi_i (x) I rho), one per effect."""
    effects = _effects(m)
    r = _check_inputs(rho, dims, effects)
    eye_b = np.eye(dims.d_b)
    return [partial_trace(np.kron(e, eye_b) @ r, dims, keep="B") for e in effects]


def outcome_probabilities(rho, dims: BipartiteDims, m) -> np.ndarray:
    return np.array([np.trace(op).real for op in conditional_operators(rho, dims, m)])


def induced_ensemble(rho, dims: BipartiteDims, m) -> Ensemble:
    """Bob's ensemble {p_i, rho_B^i}; outcomes with p_i <= 1e-12 are dropped.

    Dropped indices are the ones missing from ``Ensemble.labels``.
    """
    ops = conditional_operators(rho, dims, m)
    probs = np.array([np.trace(op).real for op in ops])
    keep = [i for i, p in enumerate(probs) if p > ZERO_PROB]
    if not keep:
        raise InputError("every outcome of Alice's measurement has zero probability")
    priors = probs[keep] / probs[keep].sum()
    states = []
    for i in keep:
        s = ops[i] / probs[i]
        w, v = np.linalg.eigh((s + s.conj().T) / 2)
        if w[0] < 0:
            # roundoff on low-probability outcomes
            w = np.clip(w, 0.0, None)
            s = (v * (w / w.sum())) @ v.conj().T
        states.append((s + s.conj().T) / 2)
    return Ensemble(priors, states, keep, len(ops))


def local_bound(rho, dims: BipartiteDims, m) -> float:
    return float(np.max(outcome_probabilities(rho, dims, m)))


def local_bound_index(rho, dims: BipartiteDims, m) -> int:
    """Lowest index achieving the local bound."""
    return int(np.argmax(outcome_probabilities(rho, dims, m)))


def delta_two_outcome(rho, dims: BipartiteDims, m) -> float:
    """Delta = || tr_A((pi_0 - pi_1) (x) I rho) ||_1 for a two-effect measurement.

    The effects may sum to a projector smaller than the identity; the
    remainder is then an implicit discarded outcome.
    """
    effects = _effects(m)
    if len(effects) != 2:
        raise InputError(f"delta needs exactly two effects, got {len(effects)}")
    r = _check_inputs(rho, dims, effects)
    sigma = effects[0] - effects[1]
    op = partial_trace(np.kron(sigma, np.eye(dims.d_b)) @ r, dims, keep="B")
    return trace_norm_hermitian((op + op.conj().T) / 2)


def nonlocal_predictability(rho, dims: BipartiteDims, m: Measurement,
                            tol: float = 1e-9, max_iter: int = 100_000) -> PredictabilityReport:
    ens = induced_ensemble(rho, dims, m)
    res = min_error_solve(ens, tol=tol, max_iter=max_iter)
    probs = outcome_probabilities(rho, dims, m)
    loc = float(np.max(probs))
    delta = delta_two_outcome(rho, dims, m) if len(m) == 2 else None
    return PredictabilityReport(
        n_outcomes=len(m),
        local_bound=loc,
        nonlocal_value=res.value,
        delta=delta,
        violation=res.value - loc,
        bob_povm=res.povm,
        certificate_gap=res.dual_gap,
        converged=res.converged,
        local_bound_index=int(np.argmax(probs)),
    )


def nonlocal_value(rho, dims: BipartiteDims, m: Measurement, tol: float = 1e-9) -> float:
    return nonlocal_predictability(rho, dims, m, tol).nonlocal_value
