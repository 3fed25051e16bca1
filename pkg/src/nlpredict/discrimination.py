"""Minimum-error state discrimination.

Two-state problems are solved in closed form (Helstrom). General ensembles
use the fixed-point iteration

    G = sum_j A_j M_j A_j,   M_i <- G^{-1/2} A_i M_i A_i G^{-1/2},   A_i = p_i rho_i

started from the pretty good measurement. Every result carries a dual
certificate Y >= A_i whose trace upper-bounds the optimum.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    EIG_CLAMP,
    InputError,
    hermitian_part,
    psd_function,
)
from .states import GENERAL_POVM, PROJECTIVE, Measurement, check_density

log = logging.getLogger(__name__)

ZERO_PRIOR = 1e-12
PRIOR_TOL = 1e-10


@dataclass
class Ensemble:
    """Priors and states of an ensemble, with zero-prior entries removed.

    ``labels[k]`` is the original index of the k-th surviving entry and
    ``n_outcomes`` the length of the original list, so a POVM can be
    reported against the original outcome indices.
    """

    priors: np.ndarray
    states: list
    labels: list = field(default_factory=list)
    n_outcomes: int = 0

    def __post_init__(self):
        self.priors = np.asarray(self.priors, dtype=float).ravel()
        if len(self.states) != self.priors.size or self.priors.size == 0:
            raise InputError("ensemble needs one state per prior and at least one entry")
        if not self.labels:
            self.labels = list(range(self.priors.size))
        if not self.n_outcomes:
            self.n_outcomes = max(self.labels) + 1
        if np.any(self.priors < 0) or abs(self.priors.sum() - 1) > PRIOR_TOL:
            raise InputError(f"priors must be a probability vector, got sum {self.priors.sum():.12g}")
        self.states = [check_density(s, name=f"ensemble state {k}") for k, s in zip(self.labels, self.states)]
        d = self.states[0].shape[0]
        if any(s.shape != (d, d) for s in self.states):
            raise InputError("ensemble states must share one dimension")

    @classmethod
    def from_pairs(cls, priors, states) -> "Ensemble":
        """Build an ensemble, dropping entries with prior <= 1e-12."""
        priors = np.asarray(priors, dtype=float).ravel()
        if priors.size != len(states):
            raise InputError("ensemble needs one state per prior")
        keep = [i for i, p in enumerate(priors) if p > ZERO_PRIOR]
        if not keep:
            raise InputError("ensemble has no entry with positive prior")
        return cls(priors[keep], [states[i] for i in keep], keep, priors.size)

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]

    def weighted(self) -> list:
        return [p * s for p, s in zip(self.priors, self.states)]


@dataclass
class DiscriminationResult:
    value: float
    povm: Measurement
    dual_operator: np.ndarray
    dual_gap: float
    iterations: int
    converged: bool = True


def success_probability(e: Ensemble, effects) -> float:
    """sum_i p_i tr(M_i rho_i), with ``effects`` indexed by original labels."""
    return float(sum(np.real(np.trace(effects[lab] @ a)) for lab, a in zip(e.labels, e.weighted())))


def _raw_violation(h: np.ndarray, e: Ensemble) -> float:
    return max(0.0, max(-float(np.linalg.eigvalsh(h - a)[0]) for a in e.weighted()))


def dual_certificate_check(y, e: Ensemble) -> float:
    """Largest amount by which ``y`` fails to dominate some p_i rho_i (0 if feasible)."""
    worst = _raw_violation(hermitian_part(y), e)
    return worst if worst > EIG_CLAMP else 0.0


def _full_povm(e: Ensemble, effects: list, kind: str = GENERAL_POVM) -> Measurement:
    d = e.dim
    out = [np.zeros((d, d), dtype=complex) for _ in range(e.n_outcomes)]
    for lab, m in zip(e.labels, effects):
        out[lab] = m
    return Measurement(out, kind)


def _complete(effects: list, d: int) -> list:
    """Symmetrize and add the identity remainder to the last effect."""
    effects = [(m + m.conj().T) / 2 for m in effects]
    rest = np.eye(d) - sum(effects)
    effects[-1] = effects[-1] + (rest + rest.conj().T) / 2
    return effects


def pretty_good_measurement(e: Ensemble) -> Measurement:
    a = e.weighted()
    s_inv_half = psd_function(sum(a), lambda x: x ** -0.5)
    effects = _complete([s_inv_half @ ai @ s_inv_half for ai in a], e.dim)
    return _full_povm(e, effects)


def _certificate(e: Ensemble, effects: list) -> tuple[float, np.ndarray, float]:
    a = e.weighted()
    y = sum(ai @ m for ai, m in zip(a, effects))
    y = (y + y.conj().T) / 2
    value = float(sum(np.real(np.trace(ai @ m)) for ai, m in zip(a, effects)))
    # exact shift, no clamp: the certificate must be feasible
    y = y + _raw_violation(y, e) * np.eye(e.dim)
    gap = float(np.real(np.trace(y))) - value
    return value, y, gap


def helstrom_two(p1: float, rho1, p2: float, rho2) -> DiscriminationResult:
    """Optimal discrimination of two states (Helstrom)."""
    if p1 < 0 or p2 < 0 or abs(p1 + p2 - 1) > PRIOR_TOL:
        raise InputError(f"priors ({p1}, {p2}) must be non-negative and sum to 1")
    r1 = check_density(rho1, name="rho1")
    r2 = check_density(rho2, name="rho2")
    gamma = p1 * r1 - p2 * r2
    w, v = np.linalg.eigh((gamma + gamma.conj().T) / 2)
    plus = v[:, w >= 0]
    m1 = plus @ plus.conj().T
    m2 = np.eye(r1.shape[0]) - m1
    abs_gamma = (v * np.abs(w)) @ v.conj().T
    y = (p1 * r1 + p2 * r2 + abs_gamma) / 2
    value = (1 + float(np.sum(np.abs(w)))) / 2
    e = Ensemble([p1, p2], [r1, r2]) if min(p1, p2) > 0 else Ensemble.from_pairs([p1, p2], [r1, r2])
    y = y + _raw_violation(y, e) * np.eye(r1.shape[0])
    gap = float(np.real(np.trace(y))) - value
    return DiscriminationResult(value, Measurement([m1, m2], PROJECTIVE), y, max(gap, 0.0), 0)


def min_error_solve(e: Ensemble, tol: float = 1e-9, max_iter: int = 100_000) -> DiscriminationResult:
    """Maximize sum_i p_i tr(M_i rho_i) over POVMs, with a certified gap."""
    if tol <= 0:
        raise InputError("tol must be positive")
    a = e.weighted()
    d = e.dim
    if len(a) == 1:
        effects = [np.eye(d, dtype=complex)]
        value, y, gap = _certificate(e, effects)
        return DiscriminationResult(value, _full_povm(e, effects), y, gap, 0)

    s_inv_half = psd_function(sum(a), lambda x: x ** -0.5)
    effects = _complete([s_inv_half @ ai @ s_inv_half for ai in a], d)
    best = None
    it = 0
    while True:
        value, y, gap = _certificate(e, effects)
        if best is None or gap < best[2]:
            best = (value, y, gap, effects)
        if gap <= tol or it >= max_iter:
            break
        g = sum(ai @ m @ ai for ai, m in zip(a, effects))
        g_inv_half = psd_function(g, lambda x: x ** -0.5)
        effects = _complete([g_inv_half @ ai @ m @ ai @ g_inv_half for ai, m in zip(a, effects)], d)
        it += 1

    value, y, gap, effects = best
    converged = gap <= 10 * tol
    if not converged:
        log.warning("min_error_solve stopped after %d iterations with dual gap %.3e", it, gap)
    return DiscriminationResult(value, _full_povm(e, effects), y, gap, it, converged)
