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

"""Errors, bulk results and run settings shared by all layers"""

from ._errors import (
    SelmerError,
    InvalidModulusError,
    PreconditionError,
    HenselLiftError,
    PrecisionExhaustedError,
    DivisionByZeroError,
    SingularCurveError,
    BadReductionError,
    UnsupportedPointError,
    OracleFailureError,
    InvalidDiscriminantError,
    CensusIntegrityError,
    MissingCensusError,
    RegressionFailure,
    OutOfScopeError,
    ConfigurationError,
    Result,
)
from ._settings import (
    Settings,
    resolve_worker_count,
    ENCODING_UTF_8,
    ENV_CENSUS_CACHE,
    SETTINGS_FILE_NAME,
    DEFAULT_CACHE_PATH,
    DEFAULT_CENSUS_CEILING,
    DEFAULT_PADIC_PRECISION,
    DEFAULT_SEED,
    KNOWN_KEYS,
)

__all__ = [
    "SelmerError",
    "InvalidModulusError",
    "PreconditionError",
    "HenselLiftError",
    "PrecisionExhaustedError",
    "DivisionByZeroError",
    "SingularCurveError",
    "BadReductionError",
    "UnsupportedPointError",
    "OracleFailureError",
    "InvalidDiscriminantError",
    "CensusIntegrityError",
    "MissingCensusError",
    "RegressionFailure",
    "OutOfScopeError",
    "ConfigurationError",
    "Result",
    "Settings",
    "resolve_worker_count",
    "ENCODING_UTF_8",
    "ENV_CENSUS_CACHE",
    "SETTINGS_FILE_NAME",
    "DEFAULT_CACHE_PATH",
    "DEFAULT_CENSUS_CEILING",
    "DEFAULT_PADIC_PRECISION",
    "DEFAULT_SEED",
    "KNOWN_KEYS",
]
