"""Exact computations with parabolic symplectic and orthogonal Higgs bundles on the projective line."""

__version__ = "0.1.0"

from .core import Poly, PolyMatrix, QuadNumber, char_poly, det, pfaffian
from .hitchin import (HitchinPoint, ParityError, base_scale, equivariance_check, hitchin_image,
                      nilpotency_check, residue_nilpotency_check, strong_vanishing_check)
from .locus import NilpotentLocusResult, nilpotent_locus_decide
from .pairing import (ANTISYMMETRIC, SYMMETRIC, PairingForm, check_pairing_iso,
                      compatibility_check, compatible_higgs_space, isotropic_generic_flags,
                      standard_form)
from .parabolic import (PARABOLIC, STRONG, HiggsField, MarkedCurve, ParabolicBundle,
                        SectionSpace, SubbundleData, generic_flags, hom_section_space,
                        make_bundle, parabolic_degree, parabolic_slope, validate)
from .stability import (StabilityVerdict, invariance_check, line_subbundle_candidates, saturate,
                        stability_decide_rank2)
from .verystable import (ModuliDimParams, moduli_dimension, scaling_fiber_witness,
                         serre_duality_check, very_stability_verdict)
