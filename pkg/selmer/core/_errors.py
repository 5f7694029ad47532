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
#
from typing import Any, Optional


class SelmerError(Exception):
    """Base class of all errors raised by this library."""

    pass


class InvalidModulusError(SelmerError, ValueError):
    """Raised when a modulus is not an admissible prime (or prime power)."""

    pass


class PreconditionError(SelmerError, ValueError):
    """Raised when the arguments of an operation violate its preconditions."""

    pass


class HenselLiftError(SelmerError):
    """Raised when a root cannot be lifted because it is not a simple root mod p."""

    pass


class PrecisionExhaustedError(SelmerError):
    """
    Raised when a p-adic operation would produce a result with fewer than one significant digit. The value
    is not returned because it could not be told apart from zero at the working precision.
    """

    pass


class DivisionByZeroError(SelmerError, ZeroDivisionError):
    """Raised when dividing by an exact p-adic zero or by a residue that is not a unit."""

    pass


class SingularCurveError(SelmerError):
    """Raised when a Weierstrass pair has vanishing discriminant in its context ring."""

    pass


class BadReductionError(SelmerError):
    """Raised when a curve over Z/p^2 (or over Q) has bad reduction at the prime in question."""

    pass


class UnsupportedPointError(SelmerError):
    """Raised when a point cannot be used by a division-polynomial evaluation (its y is not a unit)."""

    pass


class OracleFailureError(SelmerError):
    """Raised when the p-adic order oracle cannot decide even after precision escalation."""

    pass


class InvalidDiscriminantError(SelmerError, ValueError):
    """Raised for discriminants that are not negative or not congruent to 0, 1 mod 4."""

    pass


class CensusIntegrityError(SelmerError):
    """Raised when two independent derivations of a census count disagree."""

    pass


class MissingCensusError(SelmerError):
    """Raised when a census record needed by a computation is not available."""

    pass


class RegressionFailure(SelmerError):
    """Raised when computed data deviates from published regression data."""

    pass


class OutOfScopeError(SelmerError):
    """Raised when an input lies outside the range the library can reason about (e.g. rank >= 2)."""

    pass


class ConfigurationError(SelmerError, ValueError):
    """Raised when settings, profiles or command flags are invalid."""

    pass


class Result:
    """
    Outcome of one unit of work inside a bulk operation: either data or the exception that was raised while
    producing it.
    """

    def __init__(self, data: Any = None, exception: Optional[Exception] = None, source: Any = None):
        self.data = data
        self.exception = exception
        self.source = source

    def successful(self) -> bool:
        return self.exception is None
