"""Closed-form deltas for the two-qubit family under a two-outcome measurement.

State: sqrt(p0)|0,0> + sqrt(p1)|1,chi>, chi = c|0> + s e^{i phi}|1>, with
c = cos(theta/2), s = sin(theta/2). Measurement observable sigma = pi_0 - pi_1
has sigma_00 = cos(beta), sigma_01 = e^{-i gamma} sin(beta).

Both Bob operators tr_A(sigma (x) I rho) are 2x2 with non-positive
determinant, so each trace norm equals sqrt(tr^2 - 4 det).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..linalg import InputError


@dataclass(frozen=True)
class ClosedFormDelta:
    delta_pure: float
    delta_dephased: float
    eigen_pair_pure: tuple[float, float]
    eigen_pair_dephased: tuple[float, float]


def _check(p0, theta, beta, gamma):
    if not 0 < p0 < 1:
        raise InputError(f"p0 must lie in (0, 1), got {p0}")
    if not 0 <= theta <= np.pi:
        raise InputError(f"theta must lie in [0, pi], got {theta}")
    if not 0 <= beta <= np.pi:
        raise InputError(f"beta must lie in [0, pi], got {beta}")
    if not 0 <= gamma <= 2 * np.pi:
        raise InputError(f"gamma must lie in [0, 2pi), got {gamma}")


def closed_form_deltas(p0: float, theta: float, beta: float, gamma: float) -> ClosedFormDelta:
    _check(p0, theta, beta, gamma)
    p1 = 1.0 - p0
    k = np.sqrt(p0 * p1)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    s00 = np.cos(beta)
    s01 = np.exp(-1j * gamma) * np.sin(beta)
    re_sum = 2 * np.real(s01)  # sigma_10 + sigma_01

    tr_pure = (p0 - p1) * s00 + k * c * re_sum
    tr_deph = (p0 - p1) * s00
    det_pure = -p0 * p1 * s ** 2 * (s00 ** 2 + abs(s01) ** 2)
    det_deph = -p0 * p1 * s ** 2 * s00 ** 2
    # tr^2 - 4 det equals the expanded radicands (see expanded_radicands) but
    # avoids cancellation when a delta is close to zero
    d_pure = float(np.sqrt(tr_pure ** 2 - 4 * det_pure))
    d_deph = float(np.sqrt(tr_deph ** 2 - 4 * det_deph))
    return ClosedFormDelta(
        d_pure, d_deph,
        ((tr_pure + d_pure) / 2, (tr_pure - d_pure) / 2),
        ((tr_deph + d_deph) / 2, (tr_deph - d_deph) / 2),
    )


def expanded_radicands(p0: float, theta: float, beta: float, gamma: float) -> tuple[float, float]:
    """Squared deltas as the expanded polynomials in p0, p1, sigma and theta."""
    p1 = 1.0 - p0
    k = np.sqrt(p0 * p1)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    s00 = np.cos(beta)
    s01 = np.exp(-1j * gamma) * np.sin(beta)
    re_sum = 2 * np.real(s01)
    rad_pure = ((p1 - p0) ** 2 * s00 ** 2 + 4 * p0 * p1 * s ** 2 * s00 ** 2
                - 2 * (p1 - p0) * k * s00 * re_sum * c
                + p0 * p1 * re_sum ** 2 * c ** 2 + 4 * p0 * p1 * abs(s01) ** 2 * s ** 2)
    rad_deph = (p1 - p0) ** 2 * s00 ** 2 + 4 * p0 * p1 * s00 ** 2 * s ** 2
    return float(rad_pure), float(rad_deph)


def determinants(p0: float, theta: float, beta: float) -> tuple[float, float]:
    """det of the pure and fully dephased Bob operators (both <= 0)."""
    p1 = 1.0 - p0
    s = np.sin(theta / 2)
    s00, s01 = np.cos(beta), np.sin(beta)
    return (-p0 * p1 * s ** 2 * (s00 ** 2 + s01 ** 2), -p0 * p1 * s ** 2 * s00 ** 2)


def bob_operator(p0: float, theta: float, phi: float, beta: float, gamma: float,
                 q: float = 0.0) -> np.ndarray:
    """tr_A(sigma (x) I P^q(psi)) written out entry by entry.

    q = 0 is the pure state, q = 1 full dephasing of A in the computational
    basis. Dephasing only scales the cross terms by (1 - q).
    """
    p1 = 1.0 - p0
    k = np.sqrt(p0 * p1)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    s00 = np.cos(beta)
    s01 = np.exp(-1j * gamma) * np.sin(beta)
    x = (1 - q) * k * np.conj(s01)  # coefficient of |0><chi|
    h00 = p0 * s00 - p1 * s00 * c ** 2 + 2 * c * np.real(x)
    h11 = -p1 * s00 * s ** 2
    h01 = (-p1 * s00 * c + x) * s * np.conj(e)
    return np.array([[h00, h01], [np.conj(h01), h11]])


def delta_closed_form_partial(p0, theta, phi, beta, gamma, q) -> float:
    """Trace norm of the 2x2 partially dephased Bob operator via sqrt(tr^2 - 4 det)."""
    h = bob_operator(p0, theta, phi, beta, gamma, q)
    a, b, c = h[0, 0].real, h[1, 1].real, h[0, 1]
    disc = (a - b) ** 2 + 4 * abs(c) ** 2
    det = a * b - abs(c) ** 2
    if det <= 0:
        return float(np.sqrt(disc))
    return float(abs(a + b))


def advantage_condition(p0: float, theta: float, beta: float, gamma: float) -> bool:
    """True iff full dephasing strictly increases Delta for these parameters.

    Strict inequality 4 p0 p1 sin^2(b)(cos^2(g) c^2 + s^2) < 4 (p1 - p0) sqrt(p0 p1) cos(b) sin(b) cos(g) c.
    """
    _check(p0, theta, beta, gamma)
    p1 = 1.0 - p0
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    sb, cb, cg = np.sin(beta), np.cos(beta), np.cos(gamma)
    lhs = 4 * p0 * p1 * sb ** 2 * (cg ** 2 * c ** 2 + s ** 2)
    rhs = 4 * (p1 - p0) * np.sqrt(p0 * p1) * cb * sb * cg * c
    return bool(lhs < rhs)


def tan_beta_bound(p0: float, theta: float) -> float:
    """(p1 - p0) cos(theta/2) / sqrt(p0 p1): the gamma = 0 advantage boundary for tan(beta)."""
    p1 = 1.0 - p0
    return (p1 - p0) * np.cos(theta / 2) / np.sqrt(p0 * p1)


def advantage_beta(p0: float, theta: float) -> float:
    """A beta inside the gamma = 0 advantage region.

    With gamma = 0 the region is 0 < tan(beta) < T for T > 0, and
    T < tan(beta) < 0 (beta in (pi/2, pi)) for T < 0. Halving T lands
    strictly inside either way. Returns nan when the region is empty.
    """
    t = tan_beta_bound(p0, theta)
    if t == 0 or not np.isfinite(t):
        return float("nan")
    b = np.arctan(t / 2)
    return float(b if b > 0 else np.pi + b)


def overlap_two_qubit(p0: float, p1: float, alpha00: complex, alpha01: complex) -> complex:
    """Inner product of Bob's unnormalized conditional states, (p0 - p1) conj(a00) a01.

    ``alpha0a = <a|0>`` are the overlaps of Alice's measurement vectors with the
    first Schmidt vector.
    """
    if abs(p0 + p1 - 1) > 1e-10:
        raise InputError(f"p0 + p1 must equal 1, got {p0 + p1}")
    if abs(abs(alpha00) ** 2 + abs(alpha01) ** 2 - 1) > 1e-10:
        raise InputError("|alpha00|^2 + |alpha01|^2 must equal 1")
    return (p0 - p1) * np.conj(alpha00) * alpha01


def basis_from_overlaps(alpha00: complex, alpha01: complex) -> np.ndarray:
    """Columns |a_0>, |a_1> with <a_a|0> = alpha0a, completed orthonormally."""
    a1 = np.array([-np.conj(alpha01), np.conj(alpha00)])  # alpha^1_a
    a0 = np.array([alpha00, alpha01])
    # |a> = sum_i conj(alpha^i_a)|i>
    return np.array([[np.conj(a0[0]), np.conj(a0[1])], [np.conj(a1[0]), np.conj(a1[1])]])
