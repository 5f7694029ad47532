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

"""Large-sieve experiment on the number of local torsion primes of random pairs"""

from ._lab import (
    SieveConfig,
    SieveReport,
    BandRow,
    MODE_EXHAUSTIVE,
    MODE_MONTE_CARLO,
    DEFAULT_BETAS,
    sieve_primes,
    P_of_Y,
    P_of_Y_m,
    chebyshev_band_table,
    run_sieve_experiment,
)

__all__ = [
    "SieveConfig",
    "SieveReport",
    "BandRow",
    "MODE_EXHAUSTIVE",
    "MODE_MONTE_CARLO",
    "DEFAULT_BETAS",
    "sieve_primes",
    "P_of_Y",
    "P_of_Y_m",
    "chebyshev_band_table",
    "run_sieve_experiment",
]
