"""Analysis pipelines, decoders, table emitters and the exhaustive verifier.

The discrimination of an N-photon hyperentangled input runs in three steps:

1. N-1 parity gadgets couple photon 0 with each other photon in the
   polarization DOF; homodyne magnitudes spell the polarization bit-string
   (with a leading 0 for the canonical representative).
2. The same with fresh probes in the spatial DOF.
3. Every photon passes a beam splitter and a wave plate, rotating both DOFs
   into the parity-readout basis; detector counts decode the two signs:
   an even number of V clicks means the polarization superposition was "+",
   an even number of path-2 clicks the same for the spatial DOF.

The QND step splits the 4^N inputs into 4^(N-1) groups of four, and the
detector parities separate each group, so the map from input to readout is a
bijection.  ``verify_complete`` checks that claim by enumeration, walking
every detector branch symbolically instead of sampling.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from .kerr import (HomodyneModel, JointState, ProbeRegister, attach_probes,
                   gaussian_error_prob, homodyne_measure,
                   magnitude_distribution, parity_gadget)
from .optics import (DetectorOutcome, apply_bs, apply_wp,
                     detection_distribution, outcome_tokens, sample_outcome)
from .states import (HyperLabel, PhotonState, all_canonical_labels,
                     canonical_bit_strings, complement, state_from_label)

VERIFY_MAX_PHOTONS = 10  # 4^N enumeration guard


def stream(seed: int, name: str) -> np.random.Generator:
    """Named child generator: all randomness flows from one seed, split by
    purpose ("probe:alpha1", "detection", ...) so streams never collide."""
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    key = tuple(int.from_bytes(digest[i:i + 4], "little") for i in range(0, 16, 4))
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


@dataclass(frozen=True)
class RunConfig:
    """Knobs for a pipeline run.

    ``alpha * theta**2`` is the weak-probe feasibility figure: magnitude
    discrimination is reliable when it is large.  Defaults are illustrative.
    """

    n_photons: int = 2
    theta: float = 0.01
    alpha: float = 5000.0
    model: HomodyneModel = HomodyneModel.IDEAL
    trials: int = 10000
    seed: int = 0
    output: str = "text"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        object.__setattr__(self, "model", HomodyneModel(self.model))

    def feasibility(self) -> float:
        return self.alpha * self.theta ** 2


class ProbeReadout(NamedTuple):
    """One homodyne record, JSON form {"probe": ..., "magnitude": ..., "p": ...}."""

    probe: str
    magnitude: int
    p: float


@dataclass(frozen=True)
class Transcript:
    """What a single analysis run observed, plus the config that drove it."""

    probe_readouts: tuple[ProbeReadout, ...]
    detector_outcome: DetectorOutcome
    theta: float
    alpha: float
    model: HomodyneModel
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "probes": [{"probe": r.probe, "magnitude": r.magnitude, "p": r.p}
                       for r in self.probe_readouts],
            "detection": outcome_tokens(self.detector_outcome),
            "theta": self.theta,
            "alpha": self.alpha,
            "model": self.model.value,
            "seed": self.seed,
        }


def probe_ids(n: int) -> list[str]:
    """Probe names for an n-photon run: alpha1..alpha_{n-1}, beta1..beta_{n-1}."""
    return [f"alpha{k}" for k in range(1, n)] + [f"beta{k}" for k in range(1, n)]


def _registers(n: int, cfg: RunConfig) -> list[ProbeRegister]:
    return [ProbeRegister(pid, cfg.theta, cfg.alpha) for pid in probe_ids(n)]


def run_parity_stage(joint: JointState, dof: str, prefix: str,
                     cfg: RunConfig) -> tuple[JointState, list[ProbeReadout]]:
    """One QND stage: gadget photon 0 against each other photon in ``dof``
    using the probes ``prefix``1.., then measure those probes in order."""
    n = joint.n_photons
    for k in range(1, n):
        joint = parity_gadget(joint, f"{prefix}{k}", 0, k, dof)
    readouts = []
    for k in range(1, n):
        pid = f"{prefix}{k}"
        result = homodyne_measure(joint, pid, cfg.model,
                                  stream(cfg.seed, f"probe:{pid}"))
        readouts.append(ProbeReadout(pid, result.magnitude, result.probability))
        joint = result.collapsed
    return joint, readouts


def sign_basis_transform(state: PhotonState) -> PhotonState:
    """Beam splitter plus wave plate on every photon: both DOFs rotate into
    the basis where GHZ-sign information becomes a count parity."""
    for photon in range(state.n_photons):
        state = apply_wp(apply_bs(state, photon), photon)
    return state


def decode_signs(outcome: DetectorOutcome) -> tuple[str, str]:
    """Sign pair from detector parities: "+" iff the V count (polarization)
    or the path-2 count (spatial) is even."""
    v = sum(1 for r in outcome.records if r.pol == "V")
    x2 = sum(1 for r in outcome.records if r.mode == 2)
    return ("+" if v % 2 == 0 else "-", "+" if x2 % 2 == 0 else "-")


def _decode_bits(readouts: Sequence[ProbeReadout]) -> str:
    return "0" + "".join(str(r.magnitude) for r in readouts)


def hgsa_n_analyze(n: int, state: PhotonState,
                   cfg: RunConfig) -> tuple[HyperLabel, Transcript]:
    """Full N-photon analysis: two QND parity stages, then the sign readout.

    Returns the decoded canonical label and the run transcript.  Under the
    ideal model the label is exact for any hyperentangled GHZ-class product
    input, whichever detector branch fires.
    """
    if n < 2:
        raise ValueError(f"analysis needs at least 2 photons, got {n}")
    if state.n_photons != n:
        raise ValueError(f"state has {state.n_photons} photons, expected {n}")
    joint = attach_probes(state, _registers(n, cfg))
    joint, alpha_reads = run_parity_stage(joint, "P", "alpha", cfg)
    joint, beta_reads = run_parity_stage(joint, "S", "beta", cfg)
    transformed = sign_basis_transform(joint.photon_state())
    outcome = sample_outcome(transformed, stream(cfg.seed, "detection"))
    p_sign, s_sign = decode_signs(outcome)
    label = HyperLabel(p_sign, _decode_bits(alpha_reads),
                       s_sign, _decode_bits(beta_reads))
    transcript = Transcript(tuple(alpha_reads + beta_reads), outcome,
                            cfg.theta, cfg.alpha, cfg.model, cfg.seed)
    return label, transcript


def hbsa_analyze(state: PhotonState, cfg: RunConfig) -> tuple[HyperLabel, Transcript]:
    """Two-photon Bell-product analysis (the n=2 pipeline)."""
    if state.n_photons != 2:
        raise ValueError(f"Bell analysis needs a 2-photon state, got {state.n_photons}")
    return hgsa_n_analyze(2, state, cfg)


def hgsa3_analyze(state: PhotonState, cfg: RunConfig) -> tuple[HyperLabel, Transcript]:
    """Three-photon GHZ-product analysis (the n=3 pipeline)."""
    if state.n_photons != 3:
        raise ValueError(f"three-photon analysis needs a 3-photon state, "
                         f"got {state.n_photons}")
    return hgsa_n_analyze(3, state, cfg)


# --- exhaustive verification -------------------------------------------------

class StateCheck(NamedTuple):
    """Per-input verification record: the decoded signature, how many
    detector branches were walked, and whether every branch decoded right."""

    label: str
    signature: tuple[int, ...]
    branches: int
    ok: bool


@dataclass(frozen=True)
class NoiseStats:
    """Sampled misclassification statistics under the gaussian model."""

    trials: int
    errors: int
    rate: float
    wilson_low: float
    wilson_high: float
    predicted: float
    per_state: dict[str, tuple[int, int]]  # literal -> (trials, errors)

    def to_json_dict(self) -> dict:
        return {"trials": self.trials, "errors": self.errors, "rate": self.rate,
                "wilson_low": self.wilson_low, "wilson_high": self.wilson_high,
                "predicted": self.predicted,
                "per_state": {k: {"trials": t, "errors": e}
                              for k, (t, e) in self.per_state.items()}}


@dataclass(frozen=True)
class VerificationReport:
    n_photons: int
    total_states: int
    correct: int
    group_count: int
    model: HomodyneModel
    per_state: tuple[StateCheck, ...]
    noise: NoiseStats | None = None

    @property
    def all_correct(self) -> bool:
        return self.correct == self.total_states

    def to_json_dict(self) -> dict:
        out = {"n": self.n_photons, "total": self.total_states,
               "correct": self.correct, "groups": self.group_count,
               "model": self.model.value}
        if self.noise is not None:
            out["noise"] = self.noise.to_json_dict()
        return out


def wilson_interval(errors: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial rate (default 95%)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = errors / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials ** 2)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def predicted_error_rate(n: int, cfg: RunConfig) -> float:
    """Chance that at least one of the 2(n-1) probes misreads: the binomial
    composition of the per-probe gaussian error."""
    if cfg.model is not HomodyneModel.GAUSSIAN:
        return 0.0
    p = gaussian_error_prob(cfg.alpha, cfg.theta)
    return 1.0 - (1.0 - p) ** (2 * (n - 1))


def monte_carlo_misclassification(n: int, cfg: RunConfig) -> NoiseStats:
    """Sample cfg.trials full pipeline runs on uniformly drawn canonical
    inputs and tally wrong labels, with a Wilson 95% interval and the
    analytic prediction for comparison."""
    labels = all_canonical_labels(n)
    states = [state_from_label(lab) for lab in labels]
    master = stream(cfg.seed, "montecarlo")
    picks = master.integers(0, len(labels), size=cfg.trials)
    trial_seeds = master.integers(0, 2 ** 63 - 1, size=cfg.trials)
    per: dict[str, list[int]] = {lab.literal(): [0, 0] for lab in labels}
    errors = 0
    for t in range(cfg.trials):
        lab = labels[picks[t]]
        got, _ = hgsa_n_analyze(n, states[picks[t]],
                                replace(cfg, seed=int(trial_seeds[t])))
        bad = got != lab
        errors += bad
        cell = per[lab.literal()]
        cell[0] += 1
        cell[1] += bad
    low, high = wilson_interval(errors, cfg.trials)
    return NoiseStats(cfg.trials, errors, errors / cfg.trials, low, high,
                      predicted_error_rate(n, cfg),
                      {k: (t, e) for k, (t, e) in per.items()})


def verify_complete(n: int, cfg: RunConfig | None = None) -> VerificationReport:
    """Run the pipeline on every canonical hyperentangled input, walking
    every detector branch symbolically, and report the QND group partition.

    The exhaustive pass always uses the ideal readout; with
    ``cfg.model == gaussian`` a sampled noise study is attached on top.
    Guarded to n <= 10 because the enumeration grows as 16^n.
    """
    if cfg is None:
        cfg = RunConfig(n_photons=n)
    if not 2 <= n <= VERIFY_MAX_PHOTONS:
        raise ValueError(f"verification supports 2 <= n <= {VERIFY_MAX_PHOTONS}, "
                         f"got {n}")
    per_state = []
    signatures: set[tuple[int, ...]] = set()
    correct = 0
    for label in all_canonical_labels(n):
        joint = attach_probes(state_from_label(label), _registers(n, cfg))
        for dof, prefix in (("P", "alpha"), ("S", "beta")):
            for k in range(1, n):
                joint = parity_gadget(joint, f"{prefix}{k}", 0, k, dof)
        signature = []
        point_mass = True
        for pid in probe_ids(n):
            dist = magnitude_distribution(joint, pid)
            point_mass &= len(dist) == 1
            result = homodyne_measure(joint, pid, HomodyneModel.IDEAL,
                                      stream(cfg.seed, f"verify:{pid}"))
            signature.append(result.magnitude)
            joint = result.collapsed
        signature = tuple(signature)
        signatures.add(signature)
        p_bits = "0" + "".join(str(m) for m in signature[:n - 1])
        s_bits = "0" + "".join(str(m) for m in signature[n - 1:])
        branches = detection_distribution(sign_basis_transform(joint.photon_state()))
        branch_ok = all(decode_signs(o) == (label.p_sign, label.s_sign)
                        for o in branches)
        ok = (point_mass and branch_ok
              and p_bits == label.p_bits and s_bits == label.s_bits)
        correct += ok
        per_state.append(StateCheck(label.literal(), signature, len(branches), ok))
    noise = (monte_carlo_misclassification(n, cfg)
             if cfg.model is HomodyneModel.GAUSSIAN else None)
    return VerificationReport(n, 4 ** n, correct, len(signatures), cfg.model,
                              tuple(per_state), noise)


# --- table emission -----------------------------------------------------------

class SignatureRow(NamedTuple):
    """One QND group: its display bit pair, the four member state literals
    in sign order (+,+), (+,-), (-,+), (-,-), and the probe shift pattern
    (0 = no shift, 1 = a +-theta shift) for alpha then beta probes."""

    p_bits: str
    s_bits: str
    members: tuple[str, ...]
    shifts: tuple[int, ...]


class DetectionRow(NamedTuple):
    """One detector-parity group: its index, the sign pair, the member state
    literals, and the outcome token strings the group can produce."""

    group: int
    p_sign: str
    s_sign: str
    members: tuple[str, ...]
    outcomes: tuple[str, ...]


def display_bits(bits: str) -> str:
    """Display representative of a GHZ bit class: the lower-Hamming-weight
    of the string and its complement (ties keep the leading-0 form)."""
    comp = complement(bits)
    return comp if comp.count("1") < bits.count("1") else bits


_SIGN_ORDER = (("+", "+"), ("+", "-"), ("-", "+"), ("-", "-"))


def _member_literal(p_sign: str, p_bits: str, s_sign: str, s_bits: str) -> str:
    return f"P:{p_sign}{display_bits(p_bits)};S:{s_sign}{display_bits(s_bits)}"


def emit_signature_table(n: int) -> list[SignatureRow]:
    """The probe-shift signature of every QND group, 4^(n-1) rows, ordered by
    (polarization, spatial) bit class."""
    if not 2 <= n <= VERIFY_MAX_PHOTONS:
        raise ValueError(f"signature table supports 2 <= n <= {VERIFY_MAX_PHOTONS}, "
                         f"got {n}")
    rows = []
    for p_bits in canonical_bit_strings(n):
        for s_bits in canonical_bit_strings(n):
            members = tuple(_member_literal(ps, p_bits, ss, s_bits)
                            for ps, ss in _SIGN_ORDER)
            shifts = tuple(int(c) for c in p_bits[1:] + s_bits[1:])
            rows.append(SignatureRow(display_bits(p_bits), display_bits(s_bits),
                                     members, shifts))
    return rows


def emit_detection_table(n: int) -> list[DetectionRow]:
    """The four detector-parity groups with their members and outcome sets.

    The outcome set is computed by actually transforming one member of the
    group; it depends only on the sign pair.
    """
    if not 2 <= n <= VERIFY_MAX_PHOTONS:
        raise ValueError(f"detection table supports 2 <= n <= {VERIFY_MAX_PHOTONS}, "
                         f"got {n}")
    rows = []
    for gi, (p_sign, s_sign) in enumerate(_SIGN_ORDER, start=1):
        members = tuple(_member_literal(p_sign, pb, s_sign, sb)
                        for pb in canonical_bit_strings(n)
                        for sb in canonical_bit_strings(n))
        rep = state_from_label(HyperLabel(p_sign, "0" * n, s_sign, "0" * n))
        support = detection_distribution(sign_basis_transform(rep))
        rows.append(DetectionRow(gi, p_sign, s_sign, members,
                                 tuple(outcome_tokens(o) for o in support)))
    return rows
