"""Sparse state core for photons carrying polarization and spatial-mode qubits.

Each photon holds two classical bits: a polarization bit (0 = H, 1 = V) and a
spatial bit (0 = first path, 1 = second path).  An N-photon pure state is a
sparse map from :class:`BasisKet` to a complex amplitude.  The maximally
entangled inputs handled here never have more than four nonzero terms, so the
sparse form stays tiny at any photon count, where a dense vector would need
4^N entries.

All values are immutable after construction; every operation returns a new
state.  Amplitudes with magnitude below :data:`PRUNE_EPS` are dropped on
construction so float dust never accumulates through gate chains.
"""

from __future__ import annotations

import math
from typing import Iterator, Literal, Mapping, NamedTuple

import numpy as np

Dof = Literal["P", "S"]

#: Amplitudes below this magnitude are discarded when a state is built.
PRUNE_EPS = 1e-12

#: Default tolerance for norm and overlap checks.
NORM_TOL = 1e-10

_SQRT_HALF = 1.0 / math.sqrt(2.0)

#: Pauli X, the bit-flip gate used by half-wave plates.
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)

#: Single-qubit Hadamard, used by wave plates (P) and beam splitters (S).
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) * _SQRT_HALF

BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")

_BELL_BITS = {"phi+": ("+", "00"), "phi-": ("-", "00"),
              "psi+": ("+", "01"), "psi-": ("-", "01")}


def _check_dof(dof: str) -> str:
    if dof not in ("P", "S"):
        raise ValueError(f"unknown degree of freedom {dof!r}; expected 'P' or 'S'")
    return dof


def _check_bits(bits: str, what: str) -> str:
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"{what} must be a nonempty string of 0/1, got {bits!r}")
    return bits


def _check_sign(sign: str) -> str:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return sign


def complement(bits: str) -> str:
    """Bitwise complement of a bit-string."""
    return "".join("1" if c == "0" else "0" for c in bits)


class BasisKet(NamedTuple):
    """One classical configuration of N photons.

    ``pol_bits[i]`` is photon i's polarization bit and ``spa_bits[i]`` its
    spatial bit.  Tuple ordering gives the lexicographic total order on
    ``(pol_bits, spa_bits)`` that makes state iteration deterministic.
    """

    pol_bits: str
    spa_bits: str

    @property
    def n_photons(self) -> int:
        return len(self.pol_bits)

    def bit(self, dof: Dof, photon: int) -> int:
        """The photon's bit in the given degree of freedom."""
        bits = self.pol_bits if dof == "P" else self.spa_bits
        return 0 if bits[photon] == "0" else 1

    def with_bit(self, dof: Dof, photon: int, value: int) -> "BasisKet":
        """Copy of this ket with one bit replaced."""
        bits = self.pol_bits if dof == "P" else self.spa_bits
        new = bits[:photon] + ("1" if value else "0") + bits[photon + 1:]
        if dof == "P":
            return BasisKet(new, self.spa_bits)
        return BasisKet(self.pol_bits, new)

    def label(self) -> str:
        """Readable form like ``HV|a1b2``."""
        pol = "".join("H" if c == "0" else "V" for c in self.pol_bits)
        spa = "".join(f"{chr(ord('a') + i)}{int(c) + 1}"
                      for i, c in enumerate(self.spa_bits))
        return f"{pol}|{spa}"


class PhotonState:
    """Sparse N-photon state: map from :class:`BasisKet` to complex amplitude.

    Immutable; operations return new instances.  Construction validates ket
    lengths, coerces amplitudes to ``complex`` and prunes entries below
    :data:`PRUNE_EPS`.
    """

    __slots__ = ("n_photons", "_amps")

    def __init__(self, n_photons: int, amplitudes: Mapping[BasisKet, complex]):
        if n_photons < 1:
            raise ValueError(f"n_photons must be >= 1, got {n_photons}")
        amps: dict[BasisKet, complex] = {}
        for ket, amp in amplitudes.items():
            if not isinstance(ket, BasisKet):
                ket = BasisKet(*ket)
            if len(ket.pol_bits) != n_photons or len(ket.spa_bits) != n_photons:
                raise ValueError(f"ket {ket!r} does not describe {n_photons} photons")
            _check_bits(ket.pol_bits, "pol_bits")
            _check_bits(ket.spa_bits, "spa_bits")
            a = complex(amp)
            if abs(a) >= PRUNE_EPS:
                amps[ket] = a
        object.__setattr__(self, "n_photons", n_photons)
        object.__setattr__(self, "_amps", amps)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("PhotonState is immutable")

    def items(self) -> list[tuple[BasisKet, complex]]:
        """Amplitudes in deterministic (lexicographic ket) order."""
        return sorted(self._amps.items())

    def kets(self) -> list[BasisKet]:
        return sorted(self._amps)

    def amplitude(self, ket: BasisKet) -> complex:
        return self._amps.get(ket, 0j)

    def __len__(self) -> int:
        return len(self._amps)

    def __iter__(self) -> Iterator[BasisKet]:
        return iter(self.kets())

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._amps.values()))

    def normalized(self) -> "PhotonState":
        """Rescaled copy with unit norm."""
        n = self.norm()
        if n < PRUNE_EPS:
            raise ValueError("cannot normalize a zero state")
        return PhotonState(self.n_photons, {k: a / n for k, a in self._amps.items()})

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def scaled(self, factor: complex) -> "PhotonState":
        """Copy with every amplitude multiplied by ``factor``."""
        return PhotonState(self.n_photons, {k: a * factor for k, a in self._amps.items()})

    def inner(self, other: "PhotonState") -> complex:
        """Hermitian inner product <self|other>."""
        if self.n_photons != other.n_photons:
            raise ValueError("photon counts differ")
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        acc = 0j
        for ket, amp in small._amps.items():
            b = big._amps.get(ket)
            if b is not None:
                if small is self:
                    acc += amp.conjugate() * b
                else:
                    acc += b.conjugate() * amp
        return acc

    def __repr__(self) -> str:
        terms = " + ".join(f"({a:.4g})|{k.label()}>" for k, a in self.items())
        return f"PhotonState({self.n_photons} photons: {terms})"


class HyperLabel(NamedTuple):
    """Canonical identity of a hyperentangled state: a sign and a bit-string
    per degree of freedom.  Canonical form fixes the first bit of each
    bit-string to 0; the complement class collapses onto it because
    ``(|b> + s|~b>)`` and ``s (|~b> + s|b>)`` are the same state.
    """

    p_sign: str
    p_bits: str
    s_sign: str
    s_bits: str

    @classmethod
    def canonical(cls, p_sign: str, p_bits: str, s_sign: str, s_bits: str) -> "HyperLabel":
        """Build a label, folding complement representatives onto the
        first-bit-0 form (signs are unchanged by the fold)."""
        _check_sign(p_sign)
        _check_sign(s_sign)
        _check_bits(p_bits, "p_bits")
        _check_bits(s_bits, "s_bits")
        if len(p_bits) != len(s_bits):
            raise ValueError("p_bits and s_bits must have the same length")
        if p_bits[0] == "1":
            p_bits = complement(p_bits)
        if s_bits[0] == "1":
            s_bits = complement(s_bits)
        return cls(p_sign, p_bits, s_sign, s_bits)

    @property
    def n_photons(self) -> int:
        return len(self.p_bits)

    def literal(self) -> str:
        """Wire form, e.g. ``P:+00;S:-01``."""
        return f"P:{self.p_sign}{self.p_bits};S:{self.s_sign}{self.s_bits}"

    def bell_names(self) -> tuple[str, str] | None:
        """Two-photon alias pair like ``("phi+", "psi-")``, else None."""
        if self.n_photons != 2:
            return None
        p = ("phi" if self.p_bits == "00" else "psi") + self.p_sign
        s = ("phi" if self.s_bits == "00" else "psi") + self.s_sign
        return p, s


def canonical_bit_strings(n: int) -> list[str]:
    """All 2^(n-1) canonical GHZ bit-strings of length n, lexicographic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return ["0" + format(i, f"0{n - 1}b") if n > 1 else "0"
            for i in range(2 ** (n - 1))]


def all_canonical_labels(n: int) -> list[HyperLabel]:
    """The 4^n canonical hyperentangled labels, grouped by bit classes and
    ordered (+,+), (+,-), (-,+), (-,-) within each class."""
    labels = []
    for p_bits in canonical_bit_strings(n):
        for s_bits in canonical_bit_strings(n):
            for p_sign in "+-":
                for s_sign in "+-":
                    labels.append(HyperLabel(p_sign, p_bits, s_sign, s_bits))
    return labels


def ghz_state(sign: str, bits: str, dof: Dof, n: int | None = None) -> PhotonState:
    """GHZ-class state ``(|bits> + sign |~bits>)/sqrt(2)`` in one DOF.

    The other DOF is the all-zero product configuration.  ``bits`` need not
    be canonical; the returned amplitudes follow the given representative.
    """
    _check_sign(sign)
    _check_bits(bits, "bits")
    _check_dof(dof)
    if n is None:
        n = len(bits)
    if len(bits) != n:
        raise ValueError(f"bits {bits!r} does not have length n={n}")
    if n < 2:
        raise ValueError("GHZ-class states need at least 2 photons")
    zeros = "0" * n
    s = 1.0 if sign == "+" else -1.0
    if dof == "P":
        first, second = BasisKet(bits, zeros), BasisKet(complement(bits), zeros)
    else:
        first, second = BasisKet(zeros, bits), BasisKet(zeros, complement(bits))
    return PhotonState(n, {first: _SQRT_HALF, second: s * _SQRT_HALF})


def bell_state(kind: str, dof: Dof) -> PhotonState:
    """One of the four two-photon Bell states in the named DOF.

    ``phi±`` pairs equal bits, ``psi±`` pairs opposite bits; the other DOF is
    the all-zero product configuration.
    """
    if kind not in _BELL_BITS:
        raise ValueError(f"unknown Bell kind {kind!r}; expected one of {BELL_KINDS}")
    sign, bits = _BELL_BITS[kind]
    return ghz_state(sign, bits, dof, 2)


def hyper_product(p_state: PhotonState, s_state: PhotonState) -> PhotonState:
    """Tensor product of a polarization-only and a spatial-only state.

    ``p_state`` must be trivial (all zeros) in the spatial DOF and
    ``s_state`` trivial in polarization; the result carries ``p_state``'s
    polarization amplitudes against ``s_state``'s spatial amplitudes.
    """
    if p_state.n_photons != s_state.n_photons:
        raise ValueError("photon counts differ between the two factors")
    zeros = "0" * p_state.n_photons
    for ket, _ in p_state.items():
        if ket.spa_bits != zeros:
            raise ValueError("p_state is not trivial in the spatial DOF")
    for ket, _ in s_state.items():
        if ket.pol_bits != zeros:
            raise ValueError("s_state is not trivial in the polarization DOF")
    amps: dict[BasisKet, complex] = {}
    for kp, ap in p_state.items():
        for ks, as_ in s_state.items():
            amps[BasisKet(kp.pol_bits, ks.spa_bits)] = ap * as_
    return PhotonState(p_state.n_photons, amps)


def state_from_label(label: HyperLabel) -> PhotonState:
    """The hyperentangled state named by a label."""
    return hyper_product(ghz_state(label.p_sign, label.p_bits, "P"),
                         ghz_state(label.s_sign, label.s_bits, "S"))


def apply_gate(state: PhotonState, photon: int, dof: Dof,
               gate: np.ndarray) -> PhotonState:
    """Apply a 2x2 unitary to one photon's bit in one DOF.

    The gate must be unitary within 1e-10; the new amplitude of a ket with
    bit b' collects ``gate[b', b]`` times every old amplitude with bit b.
    """
    _check_dof(dof)
    if not 0 <= photon < state.n_photons:
        raise ValueError(f"photon index {photon} out of range for "
                         f"{state.n_photons} photons")
    g = np.asarray(gate, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError(f"gate must be 2x2, got shape {g.shape}")
    defect = np.max(np.abs(g @ g.conj().T - np.eye(2)))
    if defect > 1e-10:
        raise ValueError(f"gate is not unitary (defect {defect:.3g})")
    out: dict[BasisKet, complex] = {}
    for ket, amp in state._amps.items():
        b = ket.bit(dof, photon)
        for nb in (0, 1):
            c = g[nb, b]
            if c == 0:
                continue
            nk = ket.with_bit(dof, photon, nb)
            out[nk] = out.get(nk, 0j) + c * amp
    return PhotonState(state.n_photons, out)


def equal_up_to_global_phase(a: PhotonState, b: PhotonState,
                             tol: float = NORM_TOL) -> bool:
    """True iff two normalized states differ only by a global phase,
    i.e. ``|<a|b>| >= 1 - tol``."""
    if a.n_photons != b.n_photons:
        raise ValueError("photon counts differ")
    return abs(a.inner(b)) >= 1.0 - tol


def parse_state_literal(text: str, n: int | None = None) -> HyperLabel:
    """Parse a state literal like ``P:+000;S:-001`` into a canonical label.

    Two-photon Bell aliases are accepted per DOF (``P:phi+;S:psi-``).
    Raises ValueError naming the offending token on malformed input; if
    ``n`` is given the parsed photon count must match it.
    """
    parts = text.strip().split(";")
    if len(parts) != 2:
        raise ValueError(f"state literal {text!r} must have two ';'-separated parts")
    parsed: dict[str, tuple[str, str]] = {}
    for part, want in zip(parts, ("P", "S")):
        head, sep, body = part.strip().partition(":")
        if not sep or head != want:
            raise ValueError(f"token {part.strip()!r} must start with '{want}:'")
        body = body.strip()
        if body in _BELL_BITS:
            parsed[want] = _BELL_BITS[body]
            continue
        if not body or body[0] not in "+-":
            raise ValueError(f"token {body!r} must start with a '+' or '-' sign")
        sign, bits = body[0], body[1:]
        if not bits or any(c not in "01" for c in bits):
            raise ValueError(f"token {body!r} must carry a 0/1 bit-string after the sign")
        parsed[want] = (sign, bits)
    (p_sign, p_bits), (s_sign, s_bits) = parsed["P"], parsed["S"]
    if len(p_bits) != len(s_bits):
        raise ValueError(f"P and S bit-strings differ in length in {text!r}")
    if len(p_bits) < 2:
        raise ValueError(f"state literal {text!r} needs at least 2 photons")
    if n is not None and len(p_bits) != n:
        raise ValueError(f"state literal {text!r} has {len(p_bits)} photons, expected {n}")
    return HyperLabel.canonical(p_sign, p_bits, s_sign, s_bits)
