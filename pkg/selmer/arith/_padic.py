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
from dataclasses import dataclass
from typing import Optional, Union

from selmer.core import PreconditionError, PrecisionExhaustedError, DivisionByZeroError, DEFAULT_PADIC_PRECISION
from ._modular import inverse_mod, valuation


@dataclass(frozen=True)
class PAdicScalar:
    """
    A p-adic number p^valuation * unit where the unit is only known modulo p^precision. The exact zero is a
    separate sentinel with ``valuation=None``; it is never approximated by a large valuation.
    """

    prime: int
    valuation: Optional[int]
    unit: int
    precision: int

    def __post_init__(self):
        if self.valuation is None:
            return
        if self.precision < 1:
            raise PrecisionExhaustedError("A p-adic scalar needs at least one significant digit")
        if self.unit % self.prime == 0:
            raise PreconditionError(f"Mantissa {self.unit} is not a unit mod {self.prime}")
        if not 0 < self.unit < self.prime ** self.precision:
            raise PreconditionError(f"Mantissa {self.unit} not reduced mod {self.prime}^{self.precision}")

    @classmethod
    def zero(cls, prime: int) -> "PAdicScalar":
        return cls(prime, None, 0, 0)

    @classmethod
    def from_int(cls, n: int, prime: int, precision: int = DEFAULT_PADIC_PRECISION) -> "PAdicScalar":
        if n == 0:
            return cls.zero(prime)
        v = valuation(n, prime)
        return cls(prime, v, (n // prime ** v) % prime ** precision, precision)

    @classmethod
    def _from_mantissa(cls, prime: int, shift: int, mantissa: int, absolute: int) -> "PAdicScalar":
        # mantissa * p^shift, known modulo p^absolute
        if mantissa % prime ** (absolute - shift) == 0:
            raise PrecisionExhaustedError(f"No significant {prime}-adic digits left below p^{absolute}")
        k = valuation(mantissa, prime)
        precision = absolute - shift - k
        return cls(prime, shift + k, (mantissa // prime ** k) % prime ** precision, precision)

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation is None

    @property
    def absolute_precision(self) -> Optional[int]:
        if self.is_exact_zero:
            return None
        return self.valuation + self.precision

    def _coerce(self, other: Union["PAdicScalar", int]) -> "PAdicScalar":
        if isinstance(other, PAdicScalar):
            if other.prime != self.prime:
                raise PreconditionError(f"Cannot combine {self.prime}-adic and {other.prime}-adic scalars")
            return other
        if other == 0:
            return PAdicScalar.zero(self.prime)
        # exact integers carry at least as many digits as self
        if self.is_exact_zero:
            return PAdicScalar.from_int(other, self.prime)
        v = valuation(other, self.prime)
        return PAdicScalar.from_int(other, self.prime, max(self.precision, self.absolute_precision - v, 1))

    def __neg__(self) -> "PAdicScalar":
        if self.is_exact_zero:
            return self
        modulus = self.prime ** self.precision
        return PAdicScalar(self.prime, self.valuation, (-self.unit) % modulus, self.precision)

    def __add__(self, other: Union["PAdicScalar", int]) -> "PAdicScalar":
        other = self._coerce(other)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        shift = min(self.valuation, other.valuation)
        absolute = min(self.absolute_precision, other.absolute_precision)
        mantissa = (
            self.unit * self.prime ** (self.valuation - shift) + other.unit * self.prime ** (other.valuation - shift)
        ) % self.prime ** (absolute - shift)
        return PAdicScalar._from_mantissa(self.prime, shift, mantissa, absolute)

    __radd__ = __add__

    def __sub__(self, other: Union["PAdicScalar", int]) -> "PAdicScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "PAdicScalar":
        return self._coerce(other) - self

    def __mul__(self, other: Union["PAdicScalar", int]) -> "PAdicScalar":
        other = self._coerce(other)
        if self.is_exact_zero or other.is_exact_zero:
            return PAdicScalar.zero(self.prime)
        precision = min(self.precision, other.precision)
        unit = (self.unit * other.unit) % self.prime ** precision
        return PAdicScalar(self.prime, self.valuation + other.valuation, unit, precision)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["PAdicScalar", int]) -> "PAdicScalar":
        other = self._coerce(other)
        if other.is_exact_zero:
            raise DivisionByZeroError("Division by the exact p-adic zero")
        if self.is_exact_zero:
            return self
        precision = min(self.precision, other.precision)
        modulus = self.prime ** precision
        unit = (self.unit * inverse_mod(other.unit, modulus)) % modulus
        return PAdicScalar(self.prime, self.valuation - other.valuation, unit, precision)

    def __rtruediv__(self, other: int) -> "PAdicScalar":
        return self._coerce(other) / self

    def reduce_mod(self, k: int) -> int:
        """
        Residue of an integral scalar modulo p^k.

        :return: The least nonnegative representative.
        """
        if self.is_exact_zero:
            return 0
        if self.valuation < 0:
            raise PreconditionError(f"Scalar with valuation {self.valuation} is not integral")
        if self.absolute_precision < k:
            raise PrecisionExhaustedError(f"Scalar is only known mod p^{self.absolute_precision}, not mod p^{k}")
        return (self.prime ** self.valuation * self.unit) % self.prime ** k

    def __str__(self) -> str:
        if self.is_exact_zero:
            return "0"
        return f"{self.prime}^{self.valuation} * {self.unit} + O({self.prime}^{self.absolute_precision})"
