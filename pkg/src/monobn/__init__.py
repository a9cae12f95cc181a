"""Monotonicity checking for discrete Bayesian networks.

Decides whether a network is monotone (isotone/antitone, in distribution and
in mode) in its observable variables: exactly, by brute-force enumeration on
small networks, and approximately but soundly via qualitative sign
propagation with bound-based refinement.  Includes a line-oriented network
file format (MBN), a CLI, a hardness-reduction gadget builder, and a seeded
random-network generator for property testing.
"""

from .gadget import GadgetSpec, build_gadget, condmap_exceeds, random_network
from .inference import (
    Distribution,
    Factor,
    ZeroEvidenceError,
    available_backends,
    cdf,
    enumeration_backend,
    evidence_probability,
    joint_probability,
    mode,
    posterior,
    posterior_by_enumeration,
    posterior_joint,
    set_enumeration_backend,
)
from .mbn import MbnParseError, MbnValidationError, parse_mbn, serialize_mbn
from .model import (
    EMPTY_ASSIGNMENT,
    TOLERANCE,
    Assignment,
    Network,
    OrderRelation,
    Variable,
    Violation,
    compare_assignments,
    covering_successors,
    enumerate_assignments,
    precedes,
    validate_network,
)
from .oracle import Counterexample, OracleVerdict, decide_mid, decide_mim, dominates
from .qualitative import (
    ApproxReport,
    Verdict,
    approx_verdict,
    arc_sign,
    propagate,
    refine_sign,
    sign_product,
    sign_sum,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "ApproxReport",
    "Counterexample",
    "Distribution",
    "EMPTY_ASSIGNMENT",
    "Factor",
    "GadgetSpec",
    "MbnParseError",
    "MbnValidationError",
    "Network",
    "OracleVerdict",
    "OrderRelation",
    "TOLERANCE",
    "Variable",
    "Verdict",
    "Violation",
    "ZeroEvidenceError",
    "approx_verdict",
    "arc_sign",
    "available_backends",
    "build_gadget",
    "cdf",
    "compare_assignments",
    "condmap_exceeds",
    "covering_successors",
    "decide_mid",
    "decide_mim",
    "dominates",
    "enumerate_assignments",
    "enumeration_backend",
    "evidence_probability",
    "joint_probability",
    "mode",
    "parse_mbn",
    "posterior",
    "posterior_by_enumeration",
    "posterior_joint",
    "precedes",
    "propagate",
    "random_network",
    "refine_sign",
    "serialize_mbn",
    "set_enumeration_backend",
    "sign_product",
    "sign_sum",
    "validate_network",
]
