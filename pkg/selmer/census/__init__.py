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

"""Exact per-prime censuses of anomalous and local torsion pairs, their cache and the published table"""

from ._census import (
    PrimeCensusRecord,
    METHOD_SP_ONLY,
    METHOD_FIBER,
    METHOD_EXHAUSTIVE,
    METHODS,
    CSV_HEADER,
    EXHAUSTIVE_CEILING,
    sp_upper_bound,
    count_sbar,
    count_sp,
    sp_from_classes,
    count_ap,
    census_prime,
    census_range,
    render_decimal,
    write_csv,
)
from ._cache import CensusCache
from ._table1 import Table1Row, PUBLISHED_PROPORTIONS, RELATIVE_TOLERANCE, table1

__all__ = [
    "PrimeCensusRecord",
    "METHOD_SP_ONLY",
    "METHOD_FIBER",
    "METHOD_EXHAUSTIVE",
    "METHODS",
    "CSV_HEADER",
    "EXHAUSTIVE_CEILING",
    "sp_upper_bound",
    "count_sbar",
    "count_sp",
    "sp_from_classes",
    "count_ap",
    "census_prime",
    "census_range",
    "render_decimal",
    "write_csv",
    "CensusCache",
    "Table1Row",
    "PUBLISHED_PROPORTIONS",
    "RELATIVE_TOLERANCE",
    "table1",
]
