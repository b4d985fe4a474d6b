"""Induced representations of the polarised Heisenberg group and the
co-/contra-variant transforms between them (Zak, windowed-Fourier / FSB,
theta, Fourier), with peelings onto analytic model spaces and a
verification layer that turns every operator identity into a measured
defect."""

from .config import RunConfig
from .errors import (ConfigError, DivergenceGuard, GridIncompatible,
                     HeisError, IndexMismatch, InputFormatError,
                     MembershipError, NonFiniteError, OffGridError,
                     OffGridShift, OrderTooLarge, OverflowGuard,
                     ShapeMismatch, SupportOverflow)
from .grids import (GridSpec1D, PlaneField, SampledLine, TorusField,
                    centered_grid, inner_product, norm, quasi_periodic_eval,
                    sample, sample_plane, sample_torus)
from .group import (Decomposition, HeisenbergElement, SubgroupTag, character,
                    commutator, decompose, identity, inverse, multiply,
                    swap_automorphism)
from .ladders import (DerivedDirection, annihilation, creation,
                      derived_schrodinger, hermite_state, theta_vacuum_eval,
                      vacuum_gaussian, vacuum_theta)
from .reps import (LatticeParams, ReprParams, act_fsb, act_lattice,
                   act_lattice_peeled, act_lattice_torus,
                   act_quasi_regular_left, act_quasi_regular_right,
                   act_schrodinger, act_schrodinger_momentum,
                   act_schrodinger_peeled, fsb_chart)
from .theta import ThetaTruncation, jacobi_theta_series
from .transforms import (FiducialSpec, ReconstructionSpec,
                         contravariant_fourier, contravariant_pre_fsb_inverse,
                         contravariant_pre_theta_inverse,
                         contravariant_zak_inverse, covariant_fourier_inverse,
                         covariant_pre_fsb, covariant_pre_theta, covariant_zak,
                         fsb_transform, matrix_coefficient, peel_fsb,
                         peel_lattice, peel_schrodinger, theta_transform)
from .verify import (DefectReport, annihilation_residual, intertwining_defect,
                     reports_to_json, roundtrip_error, run_suite,
                     unitarity_defect)

__version__ = "0.1.0"
