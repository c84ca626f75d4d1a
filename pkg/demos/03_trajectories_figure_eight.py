"""Peak vs expectation trajectories and the co-moving figure eight.

In the frame drifting at the designed peak velocity the peak traces the
classic figure eight (transverse amplitude e xi*/(P_- omega), 2-omega
longitudinal amplitude); the expectation trajectory closes in the frame
of the planar drift velocity instead.
"""

import numpy as np

from volkovwp.field import ConstantProfile, PlaneWaveField
from volkovwp.momentum import (CorrelationSpec, drift_velocity_1d, eta_for,
                               peak_velocity_infield, reference_kinematics)
from volkovwp.spectrum import EtaWeight, ModalDistribution, TransverseWeight
from volkovwp.trajectory import comoving_transform, trajectory_record

OMEGA = 0.01
field = PlaneWaveField(omega=OMEGA, phase=0.0, profile=ConstantProfile(3.0))
v_a = 19.5
vf = peak_velocity_infield(v_a, 3.0, 3.0)
p3, energy = reference_kinematics(3.0)
v1d = drift_velocity_1d(p3 / energy, 3.0, 3.0)
print(f"out-of-field v_a = {v_a}, in-field peak v_f = {vf:.4f}, "
      f"drift v_1D = {v1d:.4f}")

dist = ModalDistribution(
    spec=CorrelationSpec(v_a=v_a, p_minus_ref=3.0),
    eta_weight=EtaWeight(center=eta_for(v_a, 3.0), width=2e-3,
                         kind="flattop"),
    transverse=TransverseWeight(w=170.0))
x = np.linspace(-np.pi / OMEGA, np.pi / OMEGA, 4001)
rec = trajectory_record(dist, x, field)

peak_frame = comoving_transform(rec, vf)
drift_frame = comoving_transform(rec, v1d)

amp1 = 0.5 * (peak_frame.xf1.max() - peak_frame.xf1.min())
amp3 = 0.5 * (peak_frame.xf3.max() - peak_frame.xf3.min())
print(f"\npeak loop in the v_f frame: x1 amplitude {amp1:.2f} "
      f"(expect e xi*/(P omega) = {3.0 / (3.0 * OMEGA):.0f}), "
      f"x3 amplitude {amp3:.3f} "
      f"(expect (e xi*)^2/(8 P^2 omega) = "
      f"{9.0 / (8 * 9 * OMEGA):.2f})")
gap = abs(peak_frame.xf3[-1] - peak_frame.xf3[0])
print(f"loop closure gap: {gap:.2e} (fraction of extent "
      f"{gap / (2 * amp3):.2e})")

drift_gap = abs(drift_frame.ex3[-1] - drift_frame.ex3[0])
ext = drift_frame.ex3.max() - drift_frame.ex3.min()
print(f"expectation loop in the v_1D frame: residual drift "
      f"{drift_gap / ext:.2e} of the loop size")

zeros = np.count_nonzero(np.diff(np.sign(
    peak_frame.xf3[np.abs(peak_frame.xf3) > 1e-9])))
print(f"x3 sign changes over one x1 cycle: {zeros} (figure-eight)")
