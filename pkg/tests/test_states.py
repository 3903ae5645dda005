import math

import numpy as np
import pytest

from hypersa.states import (BasisKet, HyperLabel, PhotonState,
                            all_canonical_labels, apply_gate, bell_state,
                            canonical_bit_strings, complement,
                            equal_up_to_global_phase, ghz_state,
                            hyper_product, parse_state_literal,
                            state_from_label, HADAMARD, PAULI_X)

from oracle import (dense_vector, gate_operator, random_state,
                    random_unitary, assert_matches_dense)

SQ = 1 / math.sqrt(2)
BELL = ("phi+", "phi-", "psi+", "psi-")


class TestBellStates:
    def test_phi_plus_polarization_amplitudes(self):
        s = bell_state("phi+", "P")
        assert s.amplitude(BasisKet("00", "00")) == pytest.approx(SQ)
        assert s.amplitude(BasisKet("11", "00")) == pytest.approx(SQ)
        assert len(s) == 2

    def test_psi_minus_spatial_amplitudes(self):
        s = bell_state("psi-", "S")
        assert s.amplitude(BasisKet("00", "01")) == pytest.approx(SQ)
        assert s.amplitude(BasisKet("00", "10")) == pytest.approx(-SQ)

    def test_phi_pair_orthogonal(self):
        a, b = bell_state("phi+", "P"), bell_state("phi-", "P")
        assert abs(a.inner(b)) < 1e-10

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="Bell kind"):
            bell_state("phi?", "P")

    @pytest.mark.parametrize("kind", BELL)
    @pytest.mark.parametrize("dof", ["P", "S"])
    def test_normalized(self, kind, dof):
        assert abs(bell_state(kind, dof).norm() - 1.0) < 1e-10


class TestGhzStates:
    def test_three_photon_plus(self):
        s = ghz_state("+", "000", "P", 3)
        assert s.amplitude(BasisKet("000", "000")) == pytest.approx(SQ)
        assert s.amplitude(BasisKet("111", "000")) == pytest.approx(SQ)

    def test_complement_representatives_identical_up_to_sign(self):
        # (|100>-|011>) equals -(|011>-|100>) amplitude for amplitude,
        # and the "+" pair needs no sign at all
        a = ghz_state("-", "100", "P", 3)
        b = ghz_state("-", "011", "P", 3).scaled(-1)
        for ket, amp in a.items():
            assert abs(amp - b.amplitude(ket)) < 1e-12
        c = ghz_state("+", "100", "P", 3)
        d = ghz_state("+", "011", "P", 3)
        for ket, amp in c.items():
            assert abs(amp - d.amplitude(ket)) < 1e-12

    def test_two_photon_reduction_is_bell(self):
        a = ghz_state("+", "00", "P", 2)
        b = bell_state("phi+", "P")
        for ket, amp in a.items():
            assert amp == b.amplitude(ket)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="length"):
            ghz_state("+", "000", "P", 4)

    def test_single_photon_rejected(self):
        with pytest.raises(ValueError, match="at least 2"):
            ghz_state("+", "0", "P", 1)


class TestHyperProduct:
    def test_four_term_quarter_weights(self):
        s = hyper_product(bell_state("phi+", "P"), bell_state("psi+", "S"))
        assert len(s) == 4
        for pol in ("00", "11"):
            for spa in ("01", "10"):
                assert s.amplitude(BasisKet(pol, spa)) == pytest.approx(0.5)

    def test_single_ket_factor_relabels(self):
        point = PhotonState(2, {BasisKet("00", "00"): 1.0})
        s = hyper_product(point, bell_state("phi-", "S"))
        assert s.amplitude(BasisKet("00", "00")) == pytest.approx(SQ)
        assert s.amplitude(BasisKet("00", "11")) == pytest.approx(-SQ)

    def test_norm_product_of_normalized_is_one(self):
        s = hyper_product(bell_state("psi-", "P"), bell_state("phi+", "S"))
        assert abs(s.norm() - 1.0) < 1e-10

    def test_photon_count_mismatch_rejected(self):
        with pytest.raises(ValueError, match="photon counts"):
            hyper_product(bell_state("phi+", "P"), ghz_state("+", "000", "S", 3))

    def test_nontrivial_spatial_factor_rejected(self):
        with pytest.raises(ValueError, match="trivial"):
            hyper_product(bell_state("phi+", "S"), bell_state("phi+", "S"))


class TestOrthogonality:
    def test_sixteen_bell_products_pairwise_orthogonal(self):
        states = [hyper_product(bell_state(p, "P"), bell_state(s, "S"))
                  for p in BELL for s in BELL]
        for i, a in enumerate(states):
            for b in states[i + 1:]:
                assert abs(a.inner(b)) < 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_canonical_families_pairwise_orthogonal(self, n):
        states = [state_from_label(lab) for lab in all_canonical_labels(n)]
        assert len(states) == 4 ** n
        for i, a in enumerate(states):
            for b in states[i + 1:]:
                assert abs(a.inner(b)) < 1e-10


class TestApplyGate:
    def test_bit_flip(self):
        s = PhotonState(1, {BasisKet("0", "0"): 1.0})
        out = apply_gate(s, 0, "P", PAULI_X)
        assert out.amplitude(BasisKet("1", "0")) == pytest.approx(1.0)

    def test_hadamard_twice_is_identity(self):
        s = bell_state("psi+", "P")
        out = apply_gate(apply_gate(s, 1, "P", HADAMARD), 1, "P", HADAMARD)
        for ket, amp in s.items():
            assert abs(out.amplitude(ket) - amp) < 1e-10

    def test_random_three_photon_state_matches_dense_oracle(self):
        rng = np.random.default_rng(91)
        for _ in range(10):
            state = random_state(3, rng)
            photon = int(rng.integers(3))
            dof = "P" if rng.random() < 0.5 else "S"
            gate = random_unitary(rng)
            out = apply_gate(state, photon, dof, gate)
            expected = gate_operator(3, photon, dof, gate) @ dense_vector(state)
            assert_matches_dense(out, expected)
            assert abs(out.norm() - 1.0) < 1e-10

    def test_gate_then_adjoint_restores_state(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            state = random_state(2, rng)
            gate = random_unitary(rng)
            out = apply_gate(apply_gate(state, 0, "S", gate), 0, "S",
                             gate.conj().T)
            assert equal_up_to_global_phase(out, state, 1e-10)

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError, match="unitary"):
            apply_gate(bell_state("phi+", "P"), 0, "P",
                       np.array([[1, 1], [0, 1]], dtype=complex))

    def test_bad_photon_index_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            apply_gate(bell_state("phi+", "P"), 2, "P", PAULI_X)


class TestGlobalPhase:
    def test_complement_pair_equal(self):
        a = ghz_state("-", "100", "P", 3)
        b = ghz_state("-", "011", "P", 3)
        assert equal_up_to_global_phase(a, b)

    def test_orthogonal_pair_not_equal(self):
        assert not equal_up_to_global_phase(bell_state("phi+", "P"),
                                            bell_state("phi-", "P"))

    def test_phase_factor_ignored(self):
        rng = np.random.default_rng(5)
        s = random_state(2, rng)
        assert equal_up_to_global_phase(s.scaled(np.exp(1j * np.pi / 3)), s)


class TestLabels:
    def test_canonical_fold_flips_bits_not_sign(self):
        lab = HyperLabel.canonical("-", "100", "+", "010")
        assert (lab.p_sign, lab.p_bits) == ("-", "011")
        assert (lab.s_sign, lab.s_bits) == ("+", "010")

    def test_literal_round_trip(self):
        lab = HyperLabel("+", "000", "-", "001")
        assert parse_state_literal(lab.literal()) == lab

    def test_bell_aliases(self):
        lab = parse_state_literal("P:phi+;S:psi-")
        assert lab == HyperLabel("+", "00", "-", "01")
        assert lab.bell_names() == ("phi+", "psi-")

    def test_malformed_sign_named_in_error(self):
        with pytest.raises(ValueError, match="sign"):
            parse_state_literal("P:±;S:")

    def test_mismatched_lengths_rejected(self):
        with pytest.raises(ValueError, match="length"):
            parse_state_literal("P:+00;S:-010")

    def test_wrong_part_order_rejected(self):
        with pytest.raises(ValueError, match="'P:'"):
            parse_state_literal("S:+00;P:-01")

    def test_photon_count_check(self):
        with pytest.raises(ValueError, match="expected 3"):
            parse_state_literal("P:+00;S:+00", n=3)

    def test_canonical_bit_strings(self):
        assert canonical_bit_strings(2) == ["00", "01"]
        assert canonical_bit_strings(3) == ["000", "001", "010", "011"]
        assert len(canonical_bit_strings(5)) == 16

    def test_complement(self):
        assert complement("0110") == "1001"


class TestStateContainer:
    def test_pruning_drops_dust(self):
        s = PhotonState(1, {BasisKet("0", "0"): 1.0, BasisKet("1", "0"): 1e-13})
        assert len(s) == 1

    def test_items_sorted_deterministically(self):
        s = hyper_product(bell_state("psi-", "P"), bell_state("psi+", "S"))
        kets = [k for k, _ in s.items()]
        assert kets == sorted(kets)

    def test_wrong_ket_length_rejected(self):
        with pytest.raises(ValueError, match="photons"):
            PhotonState(2, {BasisKet("0", "0"): 1.0})

    def test_normalized_unit_norm(self):
        s = PhotonState(1, {BasisKet("0", "0"): 3.0, BasisKet("1", "1"): 4.0})
        assert abs(s.normalized().norm() - 1.0) < 1e-10
