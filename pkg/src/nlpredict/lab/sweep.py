"""Parameter sweeps over the two-qubit family and CSV output."""
from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field

import numpy as np

from ..linalg import BipartiteDims, InputError
from ..predictability import delta_two_outcome
from ..states import AppendixStateFamily, DephasingSpec, dephase, two_outcome_qubit_measurement
from .closed_forms import advantage_condition, closed_form_deltas, delta_closed_form_partial

PARAMS = ("p0", "theta", "phi", "beta", "gamma", "q")
CSV_COLUMNS = PARAMS + ("delta_pure", "delta_dephased", "advantage_predicted", "advantage_observed")
DEFAULTS = {"phi": [0.0], "gamma": [0.0], "q": [1.0]}
MAX_POINTS = 10 ** 6
ADVANTAGE_EPS = 1e-10
MARGIN = 1e-9


@dataclass
class SweepConfig:
    """Grid values per parameter; each entry is a list of floats."""

    p0: list
    theta: list
    beta: list
    phi: list = field(default_factory=lambda: list(DEFAULTS["phi"]))
    gamma: list = field(default_factory=lambda: list(DEFAULTS["gamma"]))
    q: list = field(default_factory=lambda: list(DEFAULTS["q"]))

    def __post_init__(self):
        for name in PARAMS:
            vals = [float(v) for v in np.atleast_1d(getattr(self, name))]
            if not vals:
                raise InputError(f"sweep parameter {name} is empty")
            setattr(self, name, vals)
        if self.size > MAX_POINTS:
            raise InputError(f"sweep grid has {self.size} points, limit is {MAX_POINTS}")

    @property
    def size(self) -> int:
        return int(np.prod([len(getattr(self, n)) for n in PARAMS]))

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        unknown = set(raw) - set(PARAMS)
        if unknown:
            raise InputError(f"unknown sweep parameters: {sorted(unknown)}")
        vals = {}
        for name in PARAMS:
            if name not in raw:
                if name in DEFAULTS:
                    continue
                raise InputError(f"sweep config missing parameter {name!r}")
            vals[name] = _expand(name, raw[name])
        return cls(**vals)

    def to_dict(self) -> dict:
        return {n: list(getattr(self, n)) for n in PARAMS}


def _expand(name, spec) -> list:
    if isinstance(spec, dict):
        try:
            lo, hi, count = float(spec["min"]), float(spec["max"]), int(spec["count"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"range for {name} needs numeric min, max, count") from exc
        if count < 1:
            raise InputError(f"range for {name} needs count >= 1")
        return list(np.linspace(lo, hi, count))
    if isinstance(spec, (int, float)):
        return [float(spec)]
    return [float(v) for v in spec]


@dataclass
class SweepRecord:
    p0: float
    theta: float
    phi: float
    beta: float
    gamma: float
    q: float
    delta_pure: float
    delta_dephased: float
    advantage_predicted: bool
    advantage_observed: bool
    closed_form_pure: float = float("nan")
    closed_form_dephased: float = float("nan")

    @property
    def closed_form_residual(self) -> float:
        return max(abs(self.closed_form_pure - self.delta_pure),
                   abs(self.closed_form_dephased - self.delta_dephased))

    @property
    def is_failure(self) -> bool:
        return (self.advantage_predicted != self.advantage_observed
                and abs(self.delta_dephased - self.delta_pure) > MARGIN)


def sweep_point(p0, theta, phi, beta, gamma, q) -> SweepRecord:
    dims = BipartiteDims(2, 2)
    rho = AppendixStateFamily(p0, theta, phi).state().density()
    m = two_outcome_qubit_measurement(beta, gamma)
    d_pure = delta_two_outcome(rho, dims, m)
    d_deph = delta_two_outcome(dephase(rho, dims, DephasingSpec(q)), dims, m)
    cf = closed_form_deltas(p0, theta, beta, gamma)
    if q == 1.0:
        cf_deph = cf.delta_dephased
        predicted = advantage_condition(p0, theta, beta, gamma)
    else:
        cf_deph = delta_closed_form_partial(p0, theta, phi, beta, gamma, q)
        predicted = bool(cf_deph - cf.delta_pure > 0)
    return SweepRecord(p0, theta, phi, beta, gamma, q, d_pure, d_deph, predicted,
                       bool(d_deph - d_pure > ADVANTAGE_EPS), cf.delta_pure, cf_deph)


def sweep(config: SweepConfig) -> list:
    """One record per grid point, in row-major order over p0, theta, phi, beta, gamma, q."""
    grid = itertools.product(*(getattr(config, n) for n in PARAMS))
    return [sweep_point(*pt) for pt in grid]


def sweep_failures(records) -> int:
    return sum(1 for r in records if r.is_failure)


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    return format(float(x), ".17g")


def write_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])


def read_csv(path) -> list:
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise InputError(f"unexpected CSV header {reader.fieldnames}")
        for row in reader:
            vals = {c: float(row[c]) for c in CSV_COLUMNS[:8]}
            vals["advantage_predicted"] = row["advantage_predicted"] == "true"
            vals["advantage_observed"] = row["advantage_observed"] == "true"
            out.append(SweepRecord(**vals))
    return out
