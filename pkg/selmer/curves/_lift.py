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
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional, Tuple, List, Union, Dict

import numpy as np

from selmer.arith import Residue, PAdicScalar, require_prime, hensel_sqrt_lift, inverse_mod
from selmer.core import (
    PreconditionError,
    PrecisionExhaustedError,
    BadReductionError,
    UnsupportedPointError,
    OracleFailureError,
    DEFAULT_PADIC_PRECISION,
    DEFAULT_SEED,
)
from ._local import (
    AffinePoint,
    CurvePair,
    count_points,
    find_point_of_order_p,
    is_nonsingular,
    scalar_multiply,
    trace_table,
    nonsingular_mask,
)

METHOD_DIVISION_POLYNOMIAL = "division-polynomial"
METHOD_PADIC_ORACLE = "padic-oracle"
METHOD_FORCED = "forced-by-reduction"

MAX_PRECISION_ESCALATIONS = 2
# abscissae x + k*p, k < LIFT_SHIFTS, tried at each precision before escalating
LIFT_SHIFTS = 3

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftTestResult:
    """p-rank of E(Z/p^2) together with how it was decided and the order-p point of the reduction used."""

    rank: int
    method: str
    point: Optional[AffinePoint] = None


def _as_int(value: Union[Residue, int]) -> int:
    return int(value)


def lift_point(point: AffinePoint, a: int, b: int, p: int, k: int = 2) -> AffinePoint:
    """
    Lifts a point of the reduction mod p to E(Z/p^k): x is kept as an integer, y is Hensel-lifted.
    """
    x, y = point
    if y % p == 0:
        raise UnsupportedPointError(f"Point {point} has y = 0 mod {p} and does not lift uniquely")
    lifted = hensel_sqrt_lift(x ** 3 + a * x + b, y, p, k)
    return x, int(lifted)


class _DivisionValues:
    """Memoized values psi_n(P) of the division polynomials at a fixed point, modulo m."""

    def __init__(self, a: int, b: int, point: AffinePoint, modulus: int):
        x, y = point
        self._modulus = modulus
        self._inverse_2y = inverse_mod(2 * y, modulus)
        self._cache: Dict[int, int] = {
            0: 0,
            1: 1,
            2: (2 * y) % modulus,
            3: (3 * x ** 4 + 6 * a * x ** 2 + 12 * b * x - a ** 2) % modulus,
            4: (
                4
                * y
                * (x ** 6 + 5 * a * x ** 4 + 20 * b * x ** 3 - 5 * a ** 2 * x ** 2 - 4 * a * b * x - 8 * b ** 2 - a ** 3)
            )
            % modulus,
        }

    def __getitem__(self, n: int) -> int:
        if n not in self._cache:
            m = n // 2
            if n % 2 == 1:
                value = self[m + 2] * self[m] ** 3 - self[m - 1] * self[m + 1] ** 3
            else:
                value = self[m] * (self[m + 2] * self[m - 1] ** 2 - self[m - 2] * self[m + 1] ** 2) * self._inverse_2y
            self._cache[n] = value % self._modulus
        return self._cache[n]


def _prime_of_square_modulus(curve: CurvePair, p: Optional[int]) -> int:
    if curve.modulus is None:
        raise PreconditionError(f"{curve} has no residue context")
    if p is None:
        p = isqrt(curve.modulus)
        if p * p != curve.modulus:
            raise PreconditionError(f"Context modulus {curve.modulus} is not a prime square")
    return require_prime(p)


def division_poly_value(m: int, point: AffinePoint, curve: CurvePair, p: Optional[int] = None) -> Residue:
    """
    Evaluates psi_m at an affine point of a curve over Z/p^2 with the double-index recurrences. Even indices
    divide by 2y, which is exact because y is required to be a unit.
    """
    p = _prime_of_square_modulus(curve, p)
    modulus = curve.modulus
    if m < 1:
        raise PreconditionError(f"Division polynomial index must be positive, got {m}")
    x, y = point[0] % modulus, point[1] % modulus
    if y % p == 0:
        raise UnsupportedPointError(f"y = {y} of {point} is not a unit mod {p}")
    if (y * y - curve.rhs(x)) % modulus != 0:
        raise PreconditionError(f"{point} does not lie on {curve}")
    return Residue(_DivisionValues(curve.a, curve.b, (x, y), modulus)[m], modulus)


def _reduction(a: int, b: int, p: int) -> CurvePair:
    reduction = CurvePair.mod(a, b, p)
    if not is_nonsingular(reduction):
        raise BadReductionError(f"E[{a}, {b}] has bad reduction at {p}")
    return reduction


def _lift_has_order_p(a: int, b: int, p: int, point: AffinePoint) -> bool:
    modulus = p * p
    lifted = lift_point(point, a, b, p)
    value = division_poly_value(p, lifted, CurvePair.mod(a, b, modulus), p).value
    if value % p != 0:
        raise OracleFailureError(f"psi_{p} does not vanish mod {p} at the order-{p} point {point}")
    return value == 0


def rank_mod_p_squared(
    a: Union[Residue, int],
    b: Union[Residue, int],
    p: int,
    seed: int = DEFAULT_SEED,
    oracle: bool = False,
) -> LiftTestResult:
    """
    Decides the p-rank of E_{a,b}(Z/p^2).

    :param oracle: Decide with the p-adic chord-tangent oracle instead of the division polynomial psi_p.
    :return: Rank 1 when the reduction is not anomalous, otherwise 2 exactly when the lift of an order-p point
        of the reduction still has order p.
    """
    require_prime(p)
    a, b = _as_int(a) % (p * p), _as_int(b) % (p * p)
    reduction = _reduction(a, b, p)
    if count_points(reduction) % p != 0:
        return LiftTestResult(1, METHOD_FORCED)
    point = find_point_of_order_p(reduction, seed)
    if oracle:
        killed = padic_order_oracle(a, b, p, point)
        return LiftTestResult(2 if killed else 1, METHOD_PADIC_ORACLE, point)
    return LiftTestResult(2 if _lift_has_order_p(a, b, p, point) else 1, METHOD_DIVISION_POLYNOMIAL, point)


def is_in_Ap(a: Union[Residue, int], b: Union[Residue, int], p: int) -> bool:
    """Membership of (a, b) mod p^2 in the local torsion locus; pairs with bad reduction are not members."""
    require_prime(p)
    if (4 * _as_int(a) ** 3 + 27 * _as_int(b) ** 2) % p == 0:
        return False
    return rank_mod_p_squared(a, b, p).rank == 2


def fiber_ranks(a: int, b: int, p: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """
    Membership of the p^2 lifts (a + i*p, b + j*p) in the local torsion locus, as a boolean p x p array
    indexed by (i, j). One order-p point of the reduction serves every lift.
    """
    reduction = _reduction(a % p, b % p, p)
    members = np.zeros((p, p), dtype=bool)
    if count_points(reduction) % p != 0:
        return members
    point = find_point_of_order_p(reduction, seed)
    for i in range(p):
        for j in range(p):
            members[i, j] = _lift_has_order_p(reduction.a + i * p, reduction.b + j * p, p, point)
    return members


class _AtInfinity:
    pass


_INFINITY = _AtInfinity()

PAdicPoint = Tuple[PAdicScalar, PAdicScalar]


def _padic_double(point: PAdicPoint, a: int) -> PAdicPoint:
    x, y = point
    slope = (3 * x * x + a) / (2 * y)
    x3 = slope * slope - 2 * x
    return x3, slope * (x - x3) - y


def _padic_add(first: PAdicPoint, second: PAdicPoint, a: int) -> Union[PAdicPoint, _AtInfinity]:
    (x1, y1), (x2, y2) = first, second
    try:
        dx = x2 - x1
    except PrecisionExhaustedError:
        dx = None
    if dx is None or dx.is_exact_zero:
        # equal abscissae at working precision: either the same point or opposite points
        try:
            y_sum = y1 + y2
        except PrecisionExhaustedError:
            return _INFINITY
        if y_sum.is_exact_zero:
            return _INFINITY
        try:
            y1 - y2
        except PrecisionExhaustedError:
            return _padic_double(first, a)
        raise PrecisionExhaustedError("Abscissae agree but ordinates are neither equal nor opposite")
    slope = (y2 - y1) / dx
    x3 = slope * slope - x1 - x2
    return x3, slope * (x1 - x3) - y1


def _oracle_at(a: int, b: int, p: int, point: AffinePoint, precision: int, shift: int = 0) -> bool:
    x0, y0 = lift_point((point[0] + shift * p, point[1]), a, b, p, precision)
    base = (PAdicScalar.from_int(x0, p, precision), PAdicScalar.from_int(y0, p, precision))
    current: Union[PAdicPoint, _AtInfinity] = base
    for bit in bin(p)[3:]:
        current = _padic_double(current, a)
        if bit == "1":
            current = _padic_add(current, base, a)
    if isinstance(current, _AtInfinity):
        return True
    x_multiple = current[0]
    if x_multiple.is_exact_zero or x_multiple.valuation >= 0:
        raise OracleFailureError(f"p * P does not reduce to the identity for {point} on E[{a}, {b}]")
    # points of the formal group at depth d have v(x) = -2d; depth 2 is the kernel of reduction mod p^2
    return x_multiple.valuation <= -4


def padic_order_oracle(
    a: int, b: int, p: int, point: AffinePoint, precision: int = DEFAULT_PADIC_PRECISION
) -> bool:
    """
    Lifts the order-p point to E(Q_p) with the given number of p-adic digits and computes p times the lift by
    chord-tangent additions over :class:`PAdicScalar` coordinates. Every lift of the point gives the same answer,
    so a lift whose multiples hit an exact zero coordinate is replaced by one with abscissa shifted by p. When all
    shifts exhaust the precision it is doubled, at most twice.

    :return: True when p times the lift vanishes in E(Z/p^2), i.e. the lift has order p modulo p^2.
    """
    require_prime(p)
    reduction = _reduction(a, b, p)
    if point[1] % p == 0 or scalar_multiply(reduction, p, point) is not None:
        raise PreconditionError(f"{point} is not a point of order {p} on {reduction}")
    for attempt in range(MAX_PRECISION_ESCALATIONS + 1):
        for shift in range(LIFT_SHIFTS):
            try:
                return _oracle_at(a, b, p, point, precision, shift)
            except PrecisionExhaustedError as e:
                logger.debug(f"Oracle for E[{a}, {b}] at p={p}, abscissa shift {shift}: {e}")
        logger.warning(f"Oracle for E[{a}, {b}] at p={p} exhausted {precision} digits, escalating")
        precision *= 2
    raise OracleFailureError(f"Oracle for E[{a}, {b}] at p={p} undecided at {precision // 2} digits")


def _eligible_for_fiber(a: int, b: int, p: int) -> None:
    reduction = CurvePair.mod(a, b, p)
    if not is_nonsingular(reduction) or count_points(reduction) % p != 0:
        raise PreconditionError(f"({a}, {b}) is not an anomalous pair mod {p}")
    if reduction.a == 0 or reduction.b == 0:
        raise PreconditionError(f"({a}, {b}) has j-invariant 0 or 1728 mod {p}")


def verify_fibers(a: Union[Residue, int], b: Union[Residue, int], p: int) -> int:
    """Counts how many of the p^2 lifts of an anomalous pair with j not in {0, 1728} have p-rank 2."""
    require_prime(p)
    a, b = _as_int(a) % p, _as_int(b) % p
    _eligible_for_fiber(a, b, p)
    return int(fiber_ranks(a, b, p).sum())


def anomalous_pairs(p: int) -> List[Tuple[int, int]]:
    """All nonsingular pairs mod p whose curve has p | #E(F_p), in lexicographic order."""
    traces = trace_table(p)
    orders = p + 1 - traces
    members = nonsingular_mask(p) & (orders % p == 0)
    return [(int(a), int(b)) for a, b in np.argwhere(members)]


@dataclass
class LemmaRankReport:
    p: int
    pairs: int = 0
    nonsingular: int = 0
    rank_two: int = 0
    violations: List[Tuple[int, int]] = field(default_factory=list)

    def passed(self) -> bool:
        return not self.violations


def verify_lemma_rank(p: int) -> LemmaRankReport:
    """
    Exhaustive check over all p^4 pairs mod p^2: the rank is 1 or 2, and rank 2 only occurs over anomalous
    reductions (anomaly read independently from the character sum table).
    """
    require_prime(p)
    report = LemmaRankReport(p)
    orders = p + 1 - trace_table(p)
    mask = nonsingular_mask(p)
    modulus = p * p
    for a in range(modulus):
        for b in range(modulus):
            report.pairs += 1
            if not mask[a % p, b % p]:
                continue
            report.nonsingular += 1
            rank = rank_mod_p_squared(a, b, p).rank
            if rank not in (1, 2) or (rank == 2 and orders[a % p, b % p] % p != 0):
                report.violations.append((a, b))
            elif rank == 2:
                report.rank_two += 1
    logger.info(f"Rank check mod {p}^2: {report.rank_two} of {report.nonsingular} nonsingular pairs have rank 2")
    return report


@dataclass
class OracleEquivalenceReport:
    p: int
    tested: int = 0
    disagreements: List[Tuple[int, int]] = field(default_factory=list)

    def passed(self) -> bool:
        return not self.disagreements


def verify_oracle_equivalence(
    p: int, samples: int = 1000, seed: int = DEFAULT_SEED, precision: int = DEFAULT_PADIC_PRECISION
) -> OracleEquivalenceReport:
    """
    Compares the division polynomial criterion against the p-adic oracle. For p <= 7 every lift of every
    anomalous pair is tested (the remaining pairs are decided by their reduction alone); otherwise ``samples``
    seeded lifts of anomalous pairs are drawn.
    """
    require_prime(p)
    report = OracleEquivalenceReport(p)
    pairs = anomalous_pairs(p)
    if p <= 7:
        lifts = [(a + i * p, b + j * p) for a, b in pairs for i in range(p) for j in range(p)]
    else:
        rng = np.random.default_rng(seed)
        chosen = rng.integers(0, len(pairs), size=samples)
        offsets = rng.integers(0, p, size=(samples, 2))
        lifts = [
            (pairs[k][0] + int(i) * p, pairs[k][1] + int(j) * p) for k, (i, j) in zip(chosen.tolist(), offsets)
        ]
    for a, b in lifts:
        point = find_point_of_order_p(CurvePair.mod(a, b, p))
        report.tested += 1
        if _lift_has_order_p(a, b, p, point) != padic_order_oracle(a, b, p, point, precision):
            report.disagreements.append((a, b))
    return report


def ap_membership_table(p: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """
    Boolean p^2 x p^2 table of local torsion locus membership, indexed by (a mod p^2, b mod p^2). Only the
    lifts of anomalous reductions are tested; every other pair is a non-member.
    """
    require_prime(p)
    table = np.zeros((p * p, p * p), dtype=bool)
    steps = np.arange(p) * p
    for a, b in anomalous_pairs(p):
        table[np.ix_(a + steps, b + steps)] = fiber_ranks(a, b, p, seed)
    table.setflags(write=False)
    logger.debug(f"Membership table mod {p}^2 holds {int(table.sum())} pairs")
    return table
