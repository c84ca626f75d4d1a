"""Momentum-space structure: correlation curvature and its imprint on
the expectation velocity.

The designed correlation bends the (q3/q_minus, p1) ridge: convex for
vf* = 0 (expectation velocity above the planar value), concave for
vf* = -0.5 (below), flat at vf* = 1/v_1D (coincides).
"""

import numpy as np

from volkovwp.momentum import (CorrelationSpec, design_va, drift_velocity_1d,
                               eta_for, reference_kinematics)
from volkovwp.spectrum import (EtaWeight, ModalDistribution, TransverseWeight,
                               ridge_q3_over_qminus)
from volkovwp.trajectory import distribution_moments

W = 4 * np.pi
p3, energy = reference_kinematics(3.0)
v1d = drift_velocity_1d(p3 / energy, 3.0, 3.0)
base = v1d / (1 - v1d)
print(f"planar (1D) light-front velocity: {base:+.6f}\n")

for vf_star in (0.0, -0.5, -4.1):
    v_a = design_va(vf_star, 3.0, 3.0)
    spec = CorrelationSpec(v_a=v_a, p_minus_ref=3.0)
    r0 = float(ridge_q3_over_qminus(spec, 3.0, 0.0))
    r1 = float(ridge_q3_over_qminus(spec, 3.0, 1.0 / W))
    dist = ModalDistribution(
        spec=spec,
        eta_weight=EtaWeight(center=eta_for(v_a, 3.0), width=0.01),
        transverse=TransverseWeight(w=W))
    m = distribution_moments(dist, n_eta=256, n_p1=256)
    full = m["p3_over_pminus"] + 0.25 * 9.0 * m["inv_pminus_sq"]
    kind = "convex" if r1 > r0 + 1e-9 else \
        ("concave" if r1 < r0 - 1e-9 else "flat")
    print(f"vf* = {vf_star:5.1f}: ridge at p1=1/w shifts by "
          f"{r1 - r0:+.3e} ({kind}); expectation velocity "
          f"{full:+.6f} ({full - base:+.2e} vs planar)")
