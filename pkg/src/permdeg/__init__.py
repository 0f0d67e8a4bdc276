"""Permutation-group computations around the minimal faithful degree.

Modules: perm (arithmetic and constructors), stabchain (BSGS), group_ops
(centralizer/normalizer/join/index/core), dense and subgroup_enum (subgroup
classes up to conjugacy), iso (abstract isomorphism), mindeg (mu and the
minimal-embedding filter), pipeline (per-degree surveys and the degree-10
witness), cache and cli (persistence and command line).
"""

from .perm import Perm, PermGroup, make_gppq, make_named
from .stabchain import StabChain, build_chain, group_order
from .mindeg import MuResult, is_minimally_embedded, mu
from .pipeline import survey_degree, verify_up_to, witness_degree_10

__version__ = "1.0.0"

__all__ = [
    "Perm",
    "PermGroup",
    "make_gppq",
    "make_named",
    "StabChain",
    "build_chain",
    "group_order",
    "MuResult",
    "mu",
    "is_minimally_embedded",
    "survey_degree",
    "verify_up_to",
    "witness_degree_10",
    "__version__",
]
