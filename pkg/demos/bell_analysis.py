"""Walkthrough: telling apart the 16 two-photon hyperentangled Bell products.

Two photons A and B arrive entangled in polarization AND in which path they
travel.  Two weak cross-Kerr probes read the parity of each degree of
freedom without destroying the photons, and a final rotate-and-detect stage
reads the two relative signs.  This script follows one input through all
three steps, then shows the bookkeeping tables that make the scheme
complete.

Run:  python demos/bell_analysis.py
"""

from hypersa import (RunConfig, attach_probes, bell_state, hbsa_analyze,
                     hyper_product, magnitude_distribution, outcome_tokens,
                     parity_gadget, probe_ids, ProbeRegister,
                     emit_detection_table, emit_signature_table)

# --- the input: polarization phi+ paired with spatial psi- -----------------

state = hyper_product(bell_state("phi+", "P"), bell_state("psi-", "S"))
print("input state:")
print(" ", state)

# --- step 1 and 2: parity QNDs -----------------------------------------------
# A probe coupled to both photons picks up no phase when their bits agree
# and a +-theta phase when they differ; homodyne reads |shift| only.

cfg = RunConfig(n_photons=2, theta=0.01, alpha=5000.0, seed=42)
joint = attach_probes(state, [ProbeRegister(pid, cfg.theta, cfg.alpha)
                              for pid in probe_ids(2)])
joint = parity_gadget(joint, "alpha1", 0, 1, "P")
joint = parity_gadget(joint, "beta1", 0, 1, "S")
print("\nprobe magnitude distributions (deterministic for these inputs):")
for pid in ("alpha1", "beta1"):
    print(f"  {pid}: {magnitude_distribution(joint, pid)}")

# --- the full pipeline in one call ------------------------------------------

label, transcript = hbsa_analyze(state, cfg)
print("\ndecoded label:", label.literal(), label.bell_names())
for readout in transcript.probe_readouts:
    print(f"  probe {readout.probe}: magnitude {readout.magnitude} (p={readout.p:g})")
print("  detector clicks:", outcome_tokens(transcript.detector_outcome))

# --- why this is complete -----------------------------------------------------
# The probe signatures split the 16 states into 4 groups of 4; the detector
# parities split each group into its 4 members.

print("\nprobe-shift signatures (0 = no shift, 1 = +-theta):")
for row in emit_signature_table(2):
    print(f"  P:{row.p_bits} S:{row.s_bits} -> shifts {row.shifts}")

print("\ndetector-parity groups:")
for row in emit_detection_table(2):
    print(f"  group {row.group} (signs {row.p_sign},{row.s_sign}): "
          + " | ".join(row.outcomes))
