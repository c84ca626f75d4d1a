"""Charged-lepton wavepackets in a linearly polarized plane wave.

The package synthesizes superpositions of Volkov states whose
probability-density peak travels at a designed velocity, evaluates the
light-front density on space-time grids, and compares the peak
trajectory with the expectation-value trajectory.
"""

from .algebra import (FourVector, M, dirac_adjoint, dressed_bispinor,
                      free_spinor, lightfront_density, minkowski_dot)
from .errors import (CacheRangeError, DesignerSingular, EvanescentMode,
                     FlatSlice, ParaxialInvalid, ResolutionError,
                     ScenarioError, SingularSlice, VolkovwpError)
from .field import (ConstantProfile, FieldIntegrals, PlaneWaveField,
                    SuperGaussianProfile, TabulatedProfile, action,
                    cycle_average, field_integrals)
from .momentum import (CorrelationSpec, DressedMomentum, OnShellMomentum,
                       design_va, dressed_momentum, drift_velocity_1d,
                       eta_for, lambda_surface, longitudinal_momentum,
                       onshell_momentum, peak_velocity_infield,
                       reference_kinematics, singularity_guard, slope_check)
from .spectrum import (EtaWeight, ModalDistribution, TransverseWeight,
                       jacobian_factor, momentum_density_map)
from .synthesis import (DensityField, SpacetimeGrid, SynthesisContext,
                        density_grid, paraxial_density, partial_wavepacket,
                        peak_locate)
from .trajectory import (TrajectoryRecord, comoving_transform,
                         expectation_trajectory, expectation_velocity_approx,
                         peak_trajectory, trajectory_record)
from .lifetime import (envelope_length, lifetime_constant_field,
                       lifetime_field_free, peak_lifetime)
from .scenario import Scenario, load, validate

__version__ = "0.1.0"
