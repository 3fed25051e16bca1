"""JSON encoding of states, measurements, ensembles and reports.

Complex numbers are two-element arrays ``[re, im]``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .discrimination import DiscriminationResult, Ensemble
from .linalg import BipartiteDims, InputError
from .predictability import PredictabilityReport
from .states import KINDS, BipartitePureState, Measurement, check_density


def encode_complex(x):
    a = np.asarray(x, dtype=complex)
    if a.ndim == 0:
        return [float(a.real), float(a.imag)]
    return [encode_complex(v) for v in a]


def decode_complex(raw, ndim: int, name: str = "value") -> np.ndarray:
    try:
        a = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: malformed complex array") from exc
    if a.ndim != ndim + 1 or a.shape[-1] != 2:
        raise InputError(f"{name}: expected {ndim}-d array of [re, im] pairs, got shape {a.shape}")
    return a[..., 0] + 1j * a[..., 1]


def _dims(raw) -> BipartiteDims:
    try:
        d_a, d_b = (int(x) for x in raw)
    except (TypeError, ValueError) as exc:
        raise InputError(f"dims must be [d_A, d_B], got {raw!r}") from exc
    return BipartiteDims(d_a, d_b)


def state_from_json(obj: dict) -> tuple[np.ndarray, BipartiteDims]:
    """Density matrix and dims from a state object (amplitudes or matrix form)."""
    if "dims" not in obj:
        raise InputError("state file needs a 'dims' field")
    dims = _dims(obj["dims"])
    if "amplitudes" in obj:
        psi = BipartitePureState(dims, decode_complex(obj["amplitudes"], 1, "amplitudes"))
        return psi.density(), dims
    if "matrix" in obj:
        rho = decode_complex(obj["matrix"], 2, "matrix")
        return check_density(rho, dims), dims
    raise InputError("state file needs 'amplitudes' or 'matrix'")


def state_to_json(rho, dims: BipartiteDims) -> dict:
    return {"dims": [dims.d_a, dims.d_b], "matrix": encode_complex(rho)}


def pure_state_to_json(psi: BipartitePureState) -> dict:
    return {"dims": [psi.dims.d_a, psi.dims.d_b], "amplitudes": encode_complex(psi.amplitudes)}


def measurement_from_json(obj: dict) -> Measurement:
    if "effects" not in obj:
        raise InputError("measurement file needs an 'effects' field")
    effects = decode_complex(obj["effects"], 3, "effects")
    kind = obj.get("kind", "general-POVM")
    if kind not in KINDS:
        raise InputError(f"unknown measurement kind {kind!r}")
    return Measurement(list(effects), kind)


def measurement_to_json(m: Measurement) -> dict:
    return {"effects": [encode_complex(e) for e in m.effects], "kind": m.kind}


def ensemble_from_json(obj: dict) -> Ensemble:
    try:
        entries = obj["entries"]
        priors = [float(e["prior"]) for e in entries]
        states = [decode_complex(e["state"], 2, "state") for e in entries]
    except (KeyError, TypeError) as exc:
        raise InputError("ensemble file needs entries of {prior, state}") from exc
    return Ensemble.from_pairs(priors, states)


def ensemble_to_json(e: Ensemble) -> dict:
    return {"entries": [{"prior": float(p), "state": encode_complex(s)}
                        for p, s in zip(e.priors, e.states)]}


def discrimination_to_json(r: DiscriminationResult) -> dict:
    return {
        "value": r.value,
        "povm": measurement_to_json(r.povm),
        "dual_operator": encode_complex(r.dual_operator),
        "dual_gap": r.dual_gap,
        "iterations": r.iterations,
        "converged": r.converged,
    }


def predictability_to_json(r: PredictabilityReport) -> dict:
    return {
        "n_outcomes": r.n_outcomes,
        "local_bound": r.local_bound,
        "local_bound_index": r.local_bound_index,
        "nonlocal": r.nonlocal_value,
        "delta": r.delta,
        "violation": r.violation,
        "bob_povm": measurement_to_json(r.bob_povm),
        "certificate_gap": r.certificate_gap,
        "converged": r.converged,
    }


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
