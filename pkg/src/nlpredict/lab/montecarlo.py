"""Sampling the guessing protocol: Alice measures, Bob measures and guesses."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..linalg import BipartiteDims, InputError
from ..predictability import induced_ensemble
from ..states import Measurement

PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class MonteCarloResult:
    success: float
    std_error: float
    n_samples: int
    analytic: float  # sum_i p_i tr(M_i rho_i) for the same Bob POVM


def _clean(p: np.ndarray) -> np.ndarray:
    p = np.where(p > PROB_FLOOR, p, 0.0)
    return p / p.sum()


def monte_carlo_protocol(rho, dims: BipartiteDims, alice_m: Measurement, bob_m: Measurement,
                         n_samples: int, rng: np.random.Generator) -> MonteCarloResult:
    """Empirical success rate of Bob's guesses over ``n_samples`` rounds.

    Bob's effect j is a guess of Alice's original outcome index j.
    """
    if n_samples < 1:
        raise InputError("n_samples must be at least 1")
    ens = induced_ensemble(rho, dims, alice_m)
    if len(bob_m) < max(ens.labels) + 1:
        raise InputError(
            f"Bob's POVM has {len(bob_m)} effects but Alice's outcome {max(ens.labels)} survives")
    if bob_m.dim != dims.d_b:
        raise InputError("Bob's POVM does not act on d_B")

    alice_counts = rng.multinomial(n_samples, _clean(ens.priors))
    hits = 0
    analytic = 0.0
    for lab, prior, state, n_i in zip(ens.labels, ens.priors, ens.states, alice_counts):
        probs = np.array([np.real(np.trace(m @ state)) for m in bob_m.effects])
        analytic += prior * probs[lab]
        if n_i:
            hits += int(rng.multinomial(n_i, _clean(probs))[lab])
    mean = hits / n_samples
    se = float(np.sqrt(mean * (1 - mean) / n_samples))
    return MonteCarloResult(mean, se, n_samples, float(analytic))
