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
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Dict

from sympy import primerange

from selmer.core import PreconditionError, RegressionFailure, resolve_worker_count
from ._census import count_sp, render_decimal

# published proportions #S_p / p^2 for 7 <= p < 150
PUBLISHED_PROPORTIONS: Dict[int, str] = {
    7: "0.0816326530612245",
    11: "0.0413223140495868",
    13: "0.0710059171597633",
    17: "0.0276816608996540",
    19: "0.0581717451523546",
    23: "0.0415879017013233",
    29: "0.0332936979785969",
    31: "0.0312174817898023",
    37: "0.0306793279766253",
    41: "0.0118976799524093",
    43: "0.0567874526771228",
    47: "0.0208239022181983",
    53: "0.0277678889284443",
    59: "0.0166618787704683",
    61: "0.0349368449341575",
    67: "0.0147026063711294",
    71: "0.0208292005554453",
    73: "0.0270219553387127",
    79: "0.0374939913475405",
    83: "0.0178545507330527",
    89: "0.0222194167403106",
    97: "0.0255074928260176",
    101: "0.00980296049406921",
    103: "0.0288434348194929",
    107: "0.00925845051969604",
    109: "0.0181802878545577",
    113: "0.0263137285613595",
    127: "0.0169260338520677",
    131: "0.0189382903094225",
    137: "0.0108689860940913",
    139: "0.0142849748977796",
    149: "0.0133327327597856",
}

TABLE_MIN_P = 5
TABLE_MAX_P = 10 ** 4
RELATIVE_TOLERANCE = Fraction(5, 10 ** 15)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Table1Row:
    p: int
    sp: int
    rendered: str
    published: Optional[str] = None

    @property
    def proportion(self) -> Fraction:
        return Fraction(self.sp, self.p * self.p)

    @property
    def relative_error(self) -> Optional[Fraction]:
        if self.published is None:
            return None
        return abs(Fraction(self.published) - self.proportion) / self.proportion

    @property
    def matches(self) -> Optional[bool]:
        if self.published is None:
            return None
        return self.rendered == self.published or self.relative_error <= RELATIVE_TOLERANCE


def table1(max_p: int = 150, min_p: int = 7, check: bool = False, parallelism: int = 0) -> List[Table1Row]:
    """
    Computes #S_p / p^2 for the primes min_p <= p < max_p, rendered to 15 significant digits.

    :param check: Compare every row that has a published value and raise :class:`RegressionFailure` naming the
        first prime whose relative error exceeds 5e-15.
    """
    if not TABLE_MIN_P <= min_p <= max_p <= TABLE_MAX_P + 1:
        raise PreconditionError(f"Prime range [{min_p}, {max_p}) not within [{TABLE_MIN_P}, {TABLE_MAX_P}]")
    primes = list(primerange(min_p, max_p))

    def row(p: int) -> Table1Row:
        sp = count_sp(p)[0]
        return Table1Row(p, sp, render_decimal(Fraction(sp, p * p)), PUBLISHED_PROPORTIONS.get(p))

    with ThreadPoolExecutor(max_workers=resolve_worker_count(parallelism)) as executor:
        rows = list(executor.map(row, primes))

    if check:
        for r in rows:
            if r.matches is False:
                raise RegressionFailure(
                    f"p={r.p}: computed {r.rendered}, published {r.published} "
                    f"(relative error {float(r.relative_error):.3e})"
                )
        logger.info(f"{sum(1 for r in rows if r.matches)} published rows reproduced")
    return rows
