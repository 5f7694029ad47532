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
from .core import Settings, Result, SelmerError
from .census import CensusCache, PrimeCensusRecord
from .curves import CurvePair, GlobalCurve
from .hurwitz import QuadForm, hurwitz_H
from .sieve import SieveConfig, run_sieve_experiment

__all__ = [
    "Settings",
    "Result",
    "SelmerError",
    "CensusCache",
    "PrimeCensusRecord",
    "CurvePair",
    "GlobalCurve",
    "QuadForm",
    "hurwitz_H",
    "SieveConfig",
    "run_sieve_experiment",
]
