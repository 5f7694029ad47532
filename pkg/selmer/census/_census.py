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
import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Tuple, Iterable, Iterator, Dict, Any, IO, List

from selmer.__version__ import __version__
from selmer.arith import require_prime
from selmer.core import CensusIntegrityError, PreconditionError, Result, resolve_worker_count
from selmer.curves import (
    anomalous_pairs,
    fiber_ranks,
    is_in_Ap,
    isomorphism_classes,
    nonsingular_mask,
    trace_table,
)
from selmer.hurwitz import hurwitz_H

METHOD_SP_ONLY = "sp-only"
METHOD_FIBER = "fiber"
METHOD_EXHAUSTIVE = "exhaustive"
METHODS = (METHOD_SP_ONLY, METHOD_FIBER, METHOD_EXHAUSTIVE)

EXHAUSTIVE_CEILING = 13

CSV_HEADER = ("p", "sbar", "sp", "sp_j0", "sp_j1728", "ap", "ap1", "ap2")

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeCensusRecord:
    """
    Exact counts for one prime: anomalous classes (sbar), anomalous pairs (sp) split by j = 0 and j = 1728, and
    the pairs mod p^2 of p-rank 2 (ap = ap1 + ap2, where ap1 lies over the j = 0, 1728 pairs). The ``ap`` fields
    are ``None`` for records produced without the mod p^2 census.
    """

    p: int
    sbar: int
    sp: int
    sp_j0: int
    sp_j1728: int
    sp_star: int
    ap: Optional[int]
    ap1: Optional[int]
    ap2: Optional[int]
    method: str
    version: str = __version__

    def to_json_dict(self) -> Dict[str, Any]:
        """Serializable form with every integer written as a decimal string."""
        return {
            f.name: (str(value) if isinstance(value, int) else value)
            for f in fields(self)
            for value in (getattr(self, f.name),)
        }

    @classmethod
    def from_json_dict(cls, payload: Dict[str, Any]) -> "PrimeCensusRecord":
        values = {}
        for f in fields(cls):
            value = payload.get(f.name)
            if f.name in ("method", "version"):
                values[f.name] = value
            else:
                values[f.name] = None if value is None else int(value)
        return cls(**values)

    @property
    def key(self) -> Tuple[int, str, str]:
        return self.p, self.version, self.method

    @property
    def has_ap(self) -> bool:
        return self.ap is not None

    def csv_row(self) -> List[str]:
        return ["" if getattr(self, name) is None else str(getattr(self, name)) for name in CSV_HEADER]

    def check_invariants(self) -> None:
        """Raises :class:`CensusIntegrityError` when any structural identity or bound fails."""
        p = self.p
        problems = []
        if self.sp_star != self.sp_j0 + self.sp_j1728:
            problems.append("sp_star != sp_j0 + sp_j1728")
        if self.sp > sp_upper_bound(p):
            problems.append(f"sp exceeds the class number bound {sp_upper_bound(p)}")
        if self.has_ap:
            if self.ap != self.ap1 + self.ap2:
                problems.append("ap != ap1 + ap2")
            if not self.ap1 < 2 * p ** 3:
                problems.append("ap1 >= 2p^3")
            if self.ap2 > p * self.sp:
                problems.append("ap2 > p * sp")
        if problems:
            raise CensusIntegrityError(f"Census record for p={p} violates: {'; '.join(problems)}")


def sp_upper_bound(p: int) -> int:
    """((p - 1)/2) * (z_p * H(p^2 + 1 - 6p) + H(1 - 4p)) with z_p = 1 only for p = 5."""
    classes = hurwitz_H(1 - 4 * p)
    if p <= 5:
        classes += hurwitz_H(p * p + 1 - 6 * p)
    return (p - 1) // 2 * classes


def _anomalous_traces(p: int) -> Tuple[int, ...]:
    return (1, 1 - p) if p == 5 else (1,)


def count_sbar(p: int) -> int:
    """
    Number of F_p-isomorphism classes of anomalous curves, derived by class enumeration and by the class number
    formula; the two derivations have to agree.
    """
    require_prime(p)
    traces = _anomalous_traces(p)
    enumerated = sum(1 for cls in isomorphism_classes(p) if cls.trace in traces)
    formula = sum(hurwitz_H(t * t - 4 * p) for t in traces)
    if enumerated != formula:
        raise CensusIntegrityError(
            f"Anomalous class count for p={p}: enumeration gives {enumerated}, class numbers give {formula}"
        )
    return enumerated


def _anomalous_mask(p: int):
    orders = p + 1 - trace_table(p)
    return nonsingular_mask(p) & (orders % p == 0)


def count_sp(p: int) -> Tuple[int, int, int]:
    """
    Counts the nonsingular anomalous pairs mod p.

    :return: (sp, pairs with a = 0, pairs with b = 0)
    """
    require_prime(p)
    mask = _anomalous_mask(p)
    return int(mask.sum()), int(mask[0, :].sum()), int(mask[:, 0].sum())


def sp_from_classes(p: int) -> int:
    """Sum of the orbit sizes of all anomalous isomorphism classes."""
    traces = _anomalous_traces(p)
    return sum(cls.orbit_size for cls in isomorphism_classes(p) if cls.trace in traces)


def _count_ap_fiber(p: int) -> Tuple[int, int, int]:
    pairs = anomalous_pairs(p)
    star = [(a, b) for a, b in pairs if a == 0 or b == 0]
    ap1 = sum(int(fiber_ranks(a, b, p).sum()) for a, b in star)
    ap2 = p * (len(pairs) - len(star))
    return ap1 + ap2, ap1, ap2


def _count_ap_exhaustive(p: int) -> Tuple[int, int, int]:
    ap1 = ap2 = 0
    modulus = p * p
    for a in range(modulus):
        for b in range(modulus):
            if is_in_Ap(a, b, p):
                if a % p == 0 or b % p == 0:
                    ap1 += 1
                else:
                    ap2 += 1
    return ap1 + ap2, ap1, ap2


def count_ap(p: int, mode: str = METHOD_FIBER, allow_large: bool = False) -> Tuple[int, int, int]:
    """
    Counts the pairs mod p^2 of p-rank 2.

    In ``fiber`` mode the pairs over j not in {0, 1728} are counted as p per anomalous pair and only the lifts of
    the remaining anomalous pairs are tested. ``exhaustive`` mode tests all p^4 pairs (restricted to
    p <= 13 unless ``allow_large``) and is cross-checked against the fiber count.

    :return: (ap, ap1, ap2)
    """
    require_prime(p)
    if mode == METHOD_FIBER:
        return _count_ap_fiber(p)
    if mode != METHOD_EXHAUSTIVE:
        raise PreconditionError(f"Unknown census mode {mode}")
    if p > EXHAUSTIVE_CEILING and not allow_large:
        raise PreconditionError(f"Exhaustive census is limited to p <= {EXHAUSTIVE_CEILING}, got {p}")
    exhaustive = _count_ap_exhaustive(p)
    fiber = _count_ap_fiber(p)
    if exhaustive != fiber:
        raise CensusIntegrityError(f"Census modes disagree for p={p}: exhaustive {exhaustive}, fiber {fiber}")
    return exhaustive


def census_prime(p: int, method: str = METHOD_FIBER, allow_large: bool = False) -> PrimeCensusRecord:
    if method not in METHODS:
        raise PreconditionError(f"Unknown census method {method}")
    sbar = count_sbar(p)
    sp, sp_j0, sp_j1728 = count_sp(p)
    ap = ap1 = ap2 = None
    if method != METHOD_SP_ONLY:
        ap, ap1, ap2 = count_ap(p, method, allow_large)
    record = PrimeCensusRecord(p, sbar, sp, sp_j0, sp_j1728, sp_j0 + sp_j1728, ap, ap1, ap2, method)
    record.check_invariants()
    logger.debug(f"Census for p={p}: sp={sp}, ap={ap} ({method})")
    return record


def census_range(
    primes: Iterable[int], method: str = METHOD_FIBER, parallelism: int = 0, allow_large: bool = False
) -> Iterator[Result]:
    """
    Runs the census for several primes. If feasible, primes are processed in parallel; results come back in
    input order.

    :return: An iterator over results carrying a :class:`PrimeCensusRecord` or the exception raised for that prime.
    """

    def run_census(p):
        try:
            return Result(data=census_prime(p, method, allow_large), source=p)
        except Exception as e:
            return Result(exception=e, source=p)

    with ThreadPoolExecutor(max_workers=resolve_worker_count(parallelism)) as executor:
        return executor.map(run_census, list(primes))


def render_decimal(value: Fraction, digits: int = 15) -> str:
    """
    Renders a nonnegative rational with ``digits`` significant digits, rounding half up and keeping trailing
    zeros, e.g. 8/289 -> 0.0276816608996540.
    """
    if value < 0:
        raise PreconditionError("Only nonnegative values are rendered")
    if value == 0:
        return "0"
    exponent = len(str(value.numerator)) - len(str(value.denominator))
    while Fraction(10) ** exponent > value:
        exponent -= 1
    while Fraction(10) ** (exponent + 1) <= value:
        exponent += 1
    shift = digits - 1 - exponent
    scaled = value * Fraction(10) ** shift
    mantissa = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    if mantissa == 10 ** digits:
        mantissa //= 10
        shift -= 1
    return format(Decimal(mantissa).scaleb(-shift), "f")


def write_csv(records: Iterable[PrimeCensusRecord], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.csv_row())
