#
# Copyright (c) 2026 The selmer-census authors.
#
# This file is part of selmer-census.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Weierstrass curves over F_p, over Z/p^2 and over Q"""

from ._local import (
    AffinePoint,
    CurvePair,
    LocalCurveSummary,
    IsomorphismClass,
    discriminant,
    is_nonsingular,
    j_invariant,
    quadratic_character,
    character_sum_table,
    nonsingular_mask,
    trace_table,
    count_points,
    trace_of_frobenius,
    is_anomalous,
    summarize,
    add_points,
    scalar_multiply,
    find_point_of_order_p,
    isomorphism_orbit,
    isomorphism_classes,
    isogeny_census,
)
from ._lift import (
    LiftTestResult,
    LemmaRankReport,
    OracleEquivalenceReport,
    METHOD_DIVISION_POLYNOMIAL,
    METHOD_PADIC_ORACLE,
    METHOD_FORCED,
    lift_point,
    division_poly_value,
    rank_mod_p_squared,
    is_in_Ap,
    fiber_ranks,
    padic_order_oracle,
    verify_fibers,
    anomalous_pairs,
    verify_lemma_rank,
    verify_oracle_equivalence,
    ap_membership_table,
)
from ._global import (
    GlobalCurve,
    PrimeScanReport,
    FineSelmerInputs,
    FineSelmerVerdict,
    SelmerVerdict,
    STATUS_FINITE,
    STATUS_TRIVIAL,
    STATUS_INCONCLUSIVE,
    CONDITION_SHA,
    CONDITION_TAMAGAWA,
    CONDITION_LOCAL_TORSION,
    CONDITION_ANOMALOUS,
    CONDITION_PHI_ISOMORPHISM,
    height,
    is_minimal_pair,
    minimalize,
    minimal_mask,
    minimal_pair_fraction,
    exceptional_primes,
    scan_primes,
    fine_selmer_verdict,
    classical_selmer_verdict,
)

__all__ = [
    "AffinePoint",
    "CurvePair",
    "LocalCurveSummary",
    "IsomorphismClass",
    "discriminant",
    "is_nonsingular",
    "j_invariant",
    "quadratic_character",
    "character_sum_table",
    "nonsingular_mask",
    "trace_table",
    "count_points",
    "trace_of_frobenius",
    "is_anomalous",
    "summarize",
    "add_points",
    "scalar_multiply",
    "find_point_of_order_p",
    "isomorphism_orbit",
    "isomorphism_classes",
    "isogeny_census",
    "LiftTestResult",
    "LemmaRankReport",
    "OracleEquivalenceReport",
    "METHOD_DIVISION_POLYNOMIAL",
    "METHOD_PADIC_ORACLE",
    "METHOD_FORCED",
    "lift_point",
    "division_poly_value",
    "rank_mod_p_squared",
    "is_in_Ap",
    "fiber_ranks",
    "padic_order_oracle",
    "verify_fibers",
    "anomalous_pairs",
    "verify_lemma_rank",
    "verify_oracle_equivalence",
    "ap_membership_table",
    "GlobalCurve",
    "PrimeScanReport",
    "FineSelmerInputs",
    "FineSelmerVerdict",
    "SelmerVerdict",
    "STATUS_FINITE",
    "STATUS_TRIVIAL",
    "STATUS_INCONCLUSIVE",
    "CONDITION_SHA",
    "CONDITION_TAMAGAWA",
    "CONDITION_LOCAL_TORSION",
    "CONDITION_ANOMALOUS",
    "CONDITION_PHI_ISOMORPHISM",
    "height",
    "is_minimal_pair",
    "minimalize",
    "minimal_mask",
    "minimal_pair_fraction",
    "exceptional_primes",
    "scan_primes",
    "fine_selmer_verdict",
    "classical_selmer_verdict",
]
