"""How long the peak stays distinguishable.

The peak lives inside an envelope that follows the expectation
trajectory; its lifetime is set by the envelope length over the
velocity mismatch.  The larger the disparity between the designed and
the drift velocity, the shorter the life.
"""

import numpy as np

from volkovwp.field import ConstantProfile, PlaneWaveField
from volkovwp.lifetime import (envelope_length, lifetime_constant_field,
                               peak_lifetime)
from volkovwp.momentum import design_va, eta_for
from volkovwp.spectrum import EtaWeight

field = PlaneWaveField(omega=0.05, phase=0.0, profile=ConstantProfile(3.0))

print("lifetime per unit envelope length, constant strength:")
for vf_star in (-0.3, -1.0, -2.5, -4.1):
    v_a = design_va(vf_star, 3.0, 3.0)
    ratio = lifetime_constant_field(1.0, 3.0, v_a, 3.0)
    print(f"  vf* = {vf_star:5.1f} (v_a = {v_a:9.4f}):  "
          f"dx0 / delta_x3 = {ratio:7.4f}")

print("\nnumeric root-find vs closed form (caption case v_a = 19.5):")
weight = EtaWeight(center=eta_for(19.5, 3.0), width=0.02, kind="flattop")
res = peak_lifetime(19.5, 3.0, weight, field)
print(f"  envelope length  delta_x3 = {res.delta_x3:9.2f}")
print(f"  analytic         delta_x0 = {res.dx0_analytic:9.2f}")
print(f"  numeric          delta_x0 = {res.dx0_numeric:9.2f}  "
      f"(roots at x_minus = {res.roots[0]:.1f}, {res.roots[1]:.1f})")

print("\nco-moving case (field off, v_a equal to the drift velocity):")
res2 = peak_lifetime(-0.8 + 1e-15, 3.0,
                     EtaWeight(center=eta_for(-0.8, 3.0), width=0.02,
                               kind="flattop"), None)
print(f"  status: {res2.status} (the peak never exits the envelope)")
