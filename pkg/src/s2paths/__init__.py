"""Free-particle propagators on the two-sphere and the path distributions
of orbital angular momentum eigenstates, with spherical elastica and
azimuthally decomposed semiclassical paths.  Units: hbar = I = 1."""

__version__ = "0.1.0"

from .errors import (S2PathsError, DomainError, DivergenceError,
                     ConsistencyError, ConvergenceError, DegenerateError,
                     NonFiniteError)
from .geom import (SphericalPoint, WindingDecomposition, angular_separation,
                   decompose_extended, rotate_to_global, geodesic_tilt,
                   tilt_to_phi0, maslov_index)
from .quadrature import (MidpointGrid, midpoint_integrate, alpha_edge_estimate,
                         thetaf_edge_estimate, lprime_interval_count)
from .propagators import (exact_term, exact_propagator, semiclassical_term,
                          semiclassical_propagator, circle_propagator,
                          circle_spectral, poisson_antipodal, sphere_spectral,
                          phase_comparison_dataset)
from .elastica import (ElasticaSpec, ElasticaGeometry, PolylineCurve,
                       geometry_from, critical_takeoff, takeoff_from_length,
                       sample_curve, winding_measure, classify_curve)
from .distributions import (StateLabel, RunConfig, DistributionCurve,
                            KappaScanResult, delta_J, reconstruct_wavefunction,
                            p1_distribution, bivariate_p, p2_distribution,
                            sum_rule, kappa_scan)
from .analytic import (ProjectionResult, legendre_cos_expansion, fourier_coeff,
                       semiclassical_projection, leading_magnitude,
                       projection_quadrature, antipodal_closed_form)
from .ptpaths import (PTPathSpec, PTPath, pt_potential, turning_angle,
                      time_of_theta, phi_of_theta, half_period,
                      half_period_phi, pt_path)
