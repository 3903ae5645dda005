"""Linear-optical elements and the single-photon detection stage.

Half-wave plates flip polarization, wave plates and beam splitters apply the
Hadamard rotation to polarization and spatial mode respectively, and the
polarizing beam splitter switches the path of horizontally polarized light.
Detection projects onto the per-photon {H,V} x {path 1, path 2} product basis.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .states import HADAMARD, NORM_TOL, PAULI_X, BasisKet, PhotonState, apply_gate


class PhotonRecord(NamedTuple):
    """Detection record for one photon: its index, which spatial-mode
    detector fired (1 or 2), and the polarization it saw (H or V)."""

    photon: int
    mode: int
    pol: str


class DetectorOutcome(NamedTuple):
    """A full coincidence event: one record per photon, with its
    probability under the measured state."""

    records: tuple[PhotonRecord, ...]
    probability: float


def apply_hwp(state: PhotonState, photon: int) -> PhotonState:
    """Half-wave plate: bit-flip on the photon's polarization."""
    return apply_gate(state, photon, "P", PAULI_X)


def apply_wp(state: PhotonState, photon: int) -> PhotonState:
    """Wave plate: Hadamard on the photon's polarization."""
    return apply_gate(state, photon, "P", HADAMARD)


def apply_bs(state: PhotonState, photon: int) -> PhotonState:
    """Beam splitter: Hadamard on the photon's spatial mode."""
    return apply_gate(state, photon, "S", HADAMARD)


def apply_pbs(state: PhotonState, photon: int) -> PhotonState:
    """Polarizing beam splitter: H-polarized amplitude switches path,
    V-polarized amplitude keeps it.  A real permutation; the physical
    reflection phase is deliberately not modeled."""
    if not 0 <= photon < state.n_photons:
        raise ValueError(f"photon index {photon} out of range for "
                         f"{state.n_photons} photons")
    out: dict[BasisKet, complex] = {}
    for ket, amp in state.items():
        if ket.bit("P", photon) == 0:
            ket = ket.with_bit("S", photon, ket.bit("S", photon) ^ 1)
        out[ket] = out.get(ket, 0j) + amp
    return PhotonState(state.n_photons, out)


def _outcome_key(outcome: DetectorOutcome) -> tuple:
    return tuple((r.mode, r.pol) for r in outcome.records)


def detection_distribution(state: PhotonState) -> list[DetectorOutcome]:
    """Full support of the product-basis measurement, exact probabilities.

    The input must be normalized within 1e-10.  Outcomes are ordered
    lexicographically on the per-photon (mode, polarization) records so
    output is stable across runs.
    """
    total = sum(abs(a) ** 2 for _, a in state.items())
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (sum of probabilities {total!r})")
    outcomes = []
    for ket, amp in state.items():
        records = tuple(
            PhotonRecord(i, ket.bit("S", i) + 1, "H" if ket.bit("P", i) == 0 else "V")
            for i in range(state.n_photons))
        outcomes.append(DetectorOutcome(records, abs(amp) ** 2))
    outcomes.sort(key=_outcome_key)
    return outcomes


def sample_outcome(state: PhotonState,
                   seed: int | np.random.Generator) -> DetectorOutcome:
    """Draw one detection event; reproducible for a given seed.

    Accepts an integer seed or an existing Generator (so callers can thread
    one stream through many draws).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    dist = detection_distribution(state)
    u = rng.random()
    acc = 0.0
    for outcome in dist:
        acc += outcome.probability
        if u < acc:
            return outcome
    return dist[-1]  # u landed in the float-rounding tail


def photon_name(index: int) -> str:
    """Display name for a photon index: A, B, C, ..."""
    return chr(ord("A") + index)


def outcome_tokens(outcome: DetectorOutcome) -> str:
    """Token string like ``A1+ B2-`` (+ is H, - is V; digit is the path)."""
    return " ".join(
        f"{photon_name(r.photon)}{r.mode}{'+' if r.pol == 'H' else '-'}"
        for r in outcome.records)


def outcome_json(outcome: DetectorOutcome) -> list[dict]:
    """JSON-ready array form: [{"photon": "A", "mode": 1, "pol": "H"}, ...]."""
    return [{"photon": photon_name(r.photon), "mode": r.mode, "pol": r.pol}
            for r in outcome.records]
