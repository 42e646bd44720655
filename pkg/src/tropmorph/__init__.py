"""Exact tropical curves, rational functions, and recovery of morphisms from
homomorphisms of their function semifields."""
from .chipfire import cf_point, chip_firing_move, complement_closure, distance_to_set
from .config import RecoveryConfig
from .curve import (Correspondence, Edge, Model, Point, canonical_loopless_model, canonical_model,
                    distance, loopless_model, refine_at, valence, validate_model)
from .errors import *  # noqa: F401,F403
from .generators import contract_infinite_edges, extend_by_constants, generating_set
from .morphism import (Morphism, apply_point, compose, identity, is_surjective, pullback,
                       validate_morphism)
from .ratfn import (Divisor, Extrema, RationalFunction, divisor_of, equals_fn, evaluate, extrema,
                    level_set, transfer, trop_add_fn, trop_mul_fn, trop_pow_fn)
from .recovery import (FiberReport, HomomorphismOracle, RecoveryResult, check_hom_laws,
                       max_set_finite, max_set_infinite, oracle_from_pullback, recover_morphism,
                       verify_recovery)
from .report import ValidationReport
from .scalar import INF, NEG_INF, ext, format_ext, parse_ext, to_boolean, trop_add, trop_mul, trop_pow
from .subset import ClosedSubset, validate_subset

__version__ = "0.1.0"
