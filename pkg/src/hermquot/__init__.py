"""hermquot: maximal quotient curves of the Hermitian curve over F_{q^2},
exact rational-point audits, Weierstrass semigroup data, and one-point
evaluation codes with gap-improved minimum-distance bounds."""

from ._kernels import available_backends, backend_name, set_backend
from .gf import (AdditiveOperator, FieldContext, FieldElement, GFError,
                 additive_solve, find_omega, make_field)
from .curves import (AffinePoint, AT_INFINITY, Automorphism, BudgetExceeded,
                     CoverReport, CoverViolation, CurveError, CurveSpec,
                     ExcludedLocus, GroupPreset, apply_automorphism,
                     build_curve, build_dp_group, compose, enumerate_points,
                     equation_eval, genus, identity_automorphism, inverse,
                     maximality_audit, orbits, phi, power, psi,
                     quotient_project, unipotent_power_closed_form,
                     verify_cover)
from .numsg import (NumericalSemigroup, SemigroupError, TelescopicReport,
                    from_generators, gap_runs, is_telescopic,
                    telescopic_numbers)
from .rrspace import (CabShape, MonomialBasis, PartialMembership,
                      cab_parameters, pole_order, rr_basis,
                      weierstrass_semigroup)
from .agc import (BoundCertificate, CertificateRefused, CodeError, DualCode,
                  EvaluationCode, brute_min_distance, build_CL, designed_distances,
                  dual_code, gkl_bound_CL, gkl_bound_COmega)

__version__ = "0.1.0"
