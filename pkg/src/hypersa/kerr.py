"""Coherent-probe bookkeeping for weak cross-Kerr parity readout.

A probe coherent state that crosses the Kerr medium with a photon present
picks up a phase that is an integer multiple of the single-pass shift theta.
Only that integer ever matters here, so a :class:`JointState` tracks, per
branch, one integer phase multiple per probe instead of a continuous phase.
This keeps the interaction exact: gadgets permute branch keys and never touch
amplitudes.

X-quadrature homodyne readout resolves the magnitude of a probe's shift but
not its sign; measurement therefore groups branches by ``abs(multiple)``,
selects one magnitude class, and drops the probe, keeping branch amplitudes
as they were (feed-forward phase correction is taken as perfect).  The
``gaussian`` model adds the finite-distinguishability error of two unit-
variance quadrature Gaussians separated by ``2*alpha*(1 - cos(theta))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .states import Dof, PRUNE_EPS, BasisKet, PhotonState, _check_dof


class HomodyneModel(str, Enum):
    """Readout model: ``ideal`` never misreads a magnitude; ``gaussian``
    confuses magnitudes 0 and 1 with probability
    :func:`gaussian_error_prob` of the probe's alpha and theta."""

    IDEAL = "ideal"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class ProbeRegister:
    """A coherent probe: its id, single-pass phase shift theta (radians) and
    real amplitude alpha.  Both parameters must be positive."""

    id: str
    theta: float
    alpha: float

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError(f"probe theta must be > 0, got {self.theta}")
        if self.alpha <= 0:
            raise ValueError(f"probe alpha must be > 0, got {self.alpha}")


JointKey = tuple[BasisKet, tuple[int, ...]]


class JointState:
    """Photon amplitudes extended with one integer phase multiple per probe.

    Keys are ``(ket, multiples)`` pairs; construction prunes tiny amplitudes
    and validates the multiples length against the probe list.  Immutable.
    """

    __slots__ = ("n_photons", "probes", "_amps")

    def __init__(self, n_photons: int, probes: Sequence[ProbeRegister],
                 amplitudes: Mapping[JointKey, complex]):
        probes = tuple(probes)
        ids = [p.id for p in probes]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate probe ids in {ids}")
        amps: dict[JointKey, complex] = {}
        for (ket, mults), amp in amplitudes.items():
            if len(mults) != len(probes):
                raise ValueError(f"phase multiples {mults} do not match "
                                 f"{len(probes)} probes")
            a = complex(amp)
            if abs(a) >= PRUNE_EPS:
                amps[(ket, tuple(mults))] = a
        object.__setattr__(self, "n_photons", n_photons)
        object.__setattr__(self, "probes", probes)
        object.__setattr__(self, "_amps", amps)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("JointState is immutable")

    def items(self) -> list[tuple[JointKey, complex]]:
        return sorted(self._amps.items())

    def __len__(self) -> int:
        return len(self._amps)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self._amps.values())

    def probe_index(self, probe: str) -> int:
        for i, p in enumerate(self.probes):
            if p.id == probe:
                return i
        raise ValueError(f"unknown probe {probe!r}; have "
                         f"{[p.id for p in self.probes]}")

    def photon_state(self) -> PhotonState:
        """Collapse-free view once every probe has been measured."""
        if self.probes:
            raise ValueError(f"probes {[p.id for p in self.probes]} are still attached")
        return PhotonState(self.n_photons,
                           {ket: amp for (ket, _), amp in self._amps.items()})


class HomodyneResult(NamedTuple):
    magnitude: int
    probability: float
    collapsed: JointState


def attach_probes(state: PhotonState,
                  probes: Sequence[ProbeRegister]) -> JointState:
    """Couple fresh probes (all phase multiples zero) to a photon state."""
    zeros = (0,) * len(probes)
    return JointState(state.n_photons, probes,
                      {(ket, zeros): amp for ket, amp in state.items()})


def kerr_interact(joint: JointState, probe: str, photon: int, dof: Dof,
                  active_value: int, sign: int) -> JointState:
    """Single cross-Kerr pass: every branch whose photon bit in ``dof``
    equals ``active_value`` moves the probe's phase multiple by ``sign``.

    Amplitudes are untouched, so the norm is preserved exactly.
    """
    _check_dof(dof)
    if not 0 <= photon < joint.n_photons:
        raise ValueError(f"photon index {photon} out of range")
    if active_value not in (0, 1):
        raise ValueError(f"active_value must be 0 or 1, got {active_value}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    idx = joint.probe_index(probe)
    out: dict[JointKey, complex] = {}
    for (ket, mults), amp in joint._amps.items():
        if ket.bit(dof, photon) == active_value:
            mults = mults[:idx] + (mults[idx] + sign,) + mults[idx + 1:]
        out[(ket, mults)] = out.get((ket, mults), 0j) + amp
    return JointState(joint.n_photons, joint.probes, out)


def parity_gadget(joint: JointState, probe: str, ref_photon: int,
                  other_photon: int, dof: Dof) -> JointState:
    """Two-photon parity QND: branches where the photons' bits in ``dof``
    agree leave the probe alone; branches where they differ shift it by one
    multiple, positive when the reference photon's bit is 0.

    Composed of two single passes with opposite signs, so the net multiple
    is (other bit) - (reference bit).
    """
    if ref_photon == other_photon:
        raise ValueError("parity gadget needs two distinct photons")
    joint = kerr_interact(joint, probe, other_photon, dof, 1, +1)
    return kerr_interact(joint, probe, ref_photon, dof, 1, -1)


def magnitude_distribution(joint: JointState, probe: str) -> dict[int, float]:
    """Branch weight per homodyne magnitude class, ascending magnitude."""
    idx = joint.probe_index(probe)
    classes: dict[int, float] = {}
    for (ket, mults), amp in joint._amps.items():
        m = abs(mults[idx])
        classes[m] = classes.get(m, 0.0) + abs(amp) ** 2
    return dict(sorted(classes.items()))


def gaussian_error_prob(alpha: float, theta: float) -> float:
    """Misclassification probability of X-quadrature homodyne telling shift
    0 from shift +-theta: the overlap of two unit-variance Gaussians whose
    means sit ``2 alpha (1 - cos theta)`` apart, ``erfc(d/(2 sqrt 2))/2``.

    Zero separation (theta -> 0) gives the indistinguishable-distribution
    limit of exactly 0.5.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if not 0 <= theta < math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2), got {theta}")
    return 0.5 * math.erfc(alpha * (1.0 - math.cos(theta)) / math.sqrt(2.0))


def _as_generator(seed) -> np.random.Generator | None:
    if seed is None:
        return None
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def homodyne_measure(joint: JointState, probe: str,
                     model: HomodyneModel | str = HomodyneModel.IDEAL,
                     seed: int | np.random.Generator | None = None) -> HomodyneResult:
    """Measure one probe's X quadrature and detach it.

    Branches are grouped by the magnitude of the probe's phase multiple; one
    class is selected by exact branch weight (a point-mass class needs no
    randomness, otherwise a seed is required).  The collapsed state is the
    renormalized projection onto the selected class with the probe removed
    and branch amplitudes preserved.

    Under the gaussian model the *reported* magnitude flips between 0 and 1
    with probability :func:`gaussian_error_prob`; the collapse still follows
    the selected class, so misreads corrupt only the readout record.  The
    returned probability is that of the (class, report) event observed.
    """
    model = HomodyneModel(model)
    idx = joint.probe_index(probe)
    reg = joint.probes[idx]
    classes = magnitude_distribution(joint, probe)
    rng = _as_generator(seed)

    if len(classes) == 1:
        magnitude, weight = next(iter(classes.items()))
    else:
        if rng is None:
            raise ValueError("magnitude distribution is not deterministic; "
                             "a seed is required to sample it")
        u = rng.random()
        acc = 0.0
        magnitude, weight = next(iter(classes.items()))
        for m, w in classes.items():
            acc += w
            magnitude, weight = m, w
            if u < acc:
                break

    reported, probability = magnitude, weight
    if model is HomodyneModel.GAUSSIAN:
        if rng is None:
            raise ValueError("the gaussian readout model requires a seed")
        err = gaussian_error_prob(reg.alpha, reg.theta)
        if magnitude in (0, 1) and rng.random() < err:
            reported = 1 - magnitude
            probability = weight * err
        else:
            probability = weight * (1.0 - err)

    scale = 1.0 / math.sqrt(weight)
    out: dict[JointKey, complex] = {}
    for (ket, mults), amp in joint._amps.items():
        if abs(mults[idx]) != magnitude:
            continue
        key = (ket, mults[:idx] + mults[idx + 1:])
        out[key] = out.get(key, 0j) + amp * scale
    probes = joint.probes[:idx] + joint.probes[idx + 1:]
    return HomodyneResult(reported, probability,
                          JointState(joint.n_photons, probes, out))
