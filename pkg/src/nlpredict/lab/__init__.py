"""Closed forms, protocol sampling, sweeps and claim verification suites."""
from .claims import CLAIMS, VerificationReport, verify_claim
from .closed_forms import (
    ClosedFormDelta,
    advantage_condition,
    closed_form_deltas,
    overlap_two_qubit,
)
from .montecarlo import MonteCarloResult, monte_carlo_protocol
from .sweep import SweepConfig, SweepRecord, read_csv, sweep, write_csv
