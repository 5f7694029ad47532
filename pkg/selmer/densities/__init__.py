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

"""Certified evaluation of the upper density bounds"""

from ._bounds import (
    CertifiedReal,
    DensityBoundReport,
    BOUND_FP,
    BOUND_BP,
    BOUND_DP,
    BOUNDS,
    DISCLAIMER,
    E5_HEURISTIC,
    E5_SUPPLIED,
    DEFAULT_TOLERANCE,
    zeta,
    zeta_minus_one,
    delaunay_term,
    heuristic_local_torsion_mass,
    bound_Fp,
    bound_Bp,
    bound_Dp,
    bound_report,
)

__all__ = [
    "CertifiedReal",
    "DensityBoundReport",
    "BOUND_FP",
    "BOUND_BP",
    "BOUND_DP",
    "BOUNDS",
    "DISCLAIMER",
    "E5_HEURISTIC",
    "E5_SUPPLIED",
    "DEFAULT_TOLERANCE",
    "zeta",
    "zeta_minus_one",
    "delaunay_term",
    "heuristic_local_torsion_mass",
    "bound_Fp",
    "bound_Bp",
    "bound_Dp",
    "bound_report",
]
