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
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from math import gcd, prod
from typing import List, Tuple, Optional, Dict, Any, Sequence

import numpy as np
from sympy import factorint, integer_nthroot, mobius, primefactors, primerange

from selmer.arith import require_prime, valuation
from selmer.core import (
    PreconditionError,
    SingularCurveError,
    BadReductionError,
    OutOfScopeError,
    resolve_worker_count,
)
from ._local import CurvePair, discriminant, count_points
from ._lift import rank_mod_p_squared

STATUS_FINITE = "finite"
STATUS_TRIVIAL = "trivial"
STATUS_INCONCLUSIVE = "inconclusive"

CONDITION_SHA = "Sha"
CONDITION_TAMAGAWA = "Tamagawa"
CONDITION_LOCAL_TORSION = "local torsion"
CONDITION_ANOMALOUS = "anomalous"
CONDITION_PHI_ISOMORPHISM = "phi_E isomorphism"

logger = logging.getLogger(__name__)


def height(a: int, b: int) -> int:
    return max(abs(a) ** 3, b * b)


def _offending_primes(a: int, b: int) -> List[int]:
    g = gcd(a, b)
    if g == 0:
        raise PreconditionError("(0, 0) is divisible by every prime")
    return [
        ell
        for ell in factorint(g)
        if (a == 0 or valuation(a, ell) >= 4) and (b == 0 or valuation(b, ell) >= 6)
    ]


def is_minimal_pair(a: int, b: int) -> bool:
    """True iff no prime l has l^4 | a and l^6 | b. The pair (0, 0) is never minimal."""
    if a == 0 and b == 0:
        return False
    return not _offending_primes(a, b)


def minimalize(a: int, b: int) -> Tuple[int, int]:
    """Divides out every l^4, l^6 scaling, giving the minimal pair isomorphic over Q."""
    if a == 0 and b == 0:
        raise PreconditionError("(0, 0) has no minimal model")
    while True:
        offending = _offending_primes(a, b)
        if not offending:
            return a, b
        for ell in offending:
            a, b = a // ell ** 4, b // ell ** 6


def minimal_mask(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized :func:`is_minimal_pair` over integer arrays of equal shape."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    bound = max(
        integer_nthroot(int(np.abs(a).max(initial=0)), 4)[0],
        integer_nthroot(int(np.abs(b).max(initial=0)), 6)[0],
        2,
    )
    mask = ~((a == 0) & (b == 0))
    for ell in primerange(2, bound + 1):
        mask &= ~((a % ell ** 4 == 0) & (b % ell ** 6 == 0))
    return mask


def minimal_pair_fraction(a_max: int, b_max: int) -> Fraction:
    """
    Exact proportion of minimal pairs among all (a, b) with |a| <= a_max and |b| <= b_max. Pairs with d^4 | a
    and d^6 | b are counted for every d and combined by Moebius inversion.
    """
    if a_max < 0 or b_max < 0:
        raise PreconditionError("Box bounds must be nonnegative")
    d_max = max(integer_nthroot(a_max, 4)[0], integer_nthroot(b_max, 6)[0], 1)
    minimal = 0
    for d in range(1, d_max + 1):
        mu = mobius(d)
        if mu:
            minimal += mu * ((2 * (a_max // d ** 4) + 1) * (2 * (b_max // d ** 6) + 1) - 1)
    return Fraction(minimal, (2 * a_max + 1) * (2 * b_max + 1))


@dataclass(frozen=True)
class GlobalCurve:
    pair: CurvePair

    @classmethod
    def of(cls, a: int, b: int) -> "GlobalCurve":
        return cls(CurvePair(a, b))

    @property
    def minimal(self) -> bool:
        return is_minimal_pair(self.pair.a, self.pair.b)

    @property
    def height(self) -> int:
        return height(self.pair.a, self.pair.b)


@dataclass
class PrimeScanReport:
    Y: int
    anomalous: List[int] = field(default_factory=list)
    local_torsion: List[int] = field(default_factory=list)
    bad: List[int] = field(default_factory=list)
    exceptional: Optional[List[int]] = None

    @property
    def anomalous_count(self) -> int:
        return len(self.anomalous)

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result["anomalous_count"] = self.anomalous_count
        return result


def exceptional_primes(sha_order: int, tamagawa: Sequence[int]) -> List[int]:
    """Primes dividing 2 * #Sha * prod(c_l)."""
    if sha_order < 1 or any(c < 1 for c in tamagawa):
        raise PreconditionError("Sha order and Tamagawa numbers must be positive")
    return sorted(primefactors(2 * sha_order * prod(tamagawa)))


def _classify_prime(a: int, b: int, delta: int, p: int) -> Tuple[int, str]:
    if delta % p == 0:
        return p, "bad"
    if count_points(CurvePair.mod(a, b, p)) % p != 0:
        return p, "ordinary"
    if rank_mod_p_squared(a, b, p).rank == 2:
        return p, "local-torsion"
    return p, "anomalous"


def scan_primes(
    curve: GlobalCurve,
    Y: int,
    parallelism: int = 0,
    sha_order: Optional[int] = None,
    tamagawa: Optional[Sequence[int]] = None,
) -> PrimeScanReport:
    """
    Classifies every prime 5 <= p <= Y: bad primes are listed and skipped, anomalous primes satisfy
    p | #E(F_p) and local torsion primes additionally have p-rank 2 over Z/p^2.

    :param parallelism: Worker count as in :func:`selmer.core.resolve_worker_count`.
    :param sha_order: Together with ``tamagawa`` adds the exceptional primes of the curve to the report.
    """
    a, b = curve.pair.a, curve.pair.b
    delta = discriminant(curve.pair)
    if delta == 0:
        raise SingularCurveError(f"{curve.pair} is singular")
    if Y < 5:
        raise PreconditionError(f"Scan ceiling must be at least 5, got {Y}")

    primes = list(primerange(5, Y + 1))
    with ThreadPoolExecutor(max_workers=resolve_worker_count(parallelism)) as executor:
        classified = list(executor.map(lambda p: _classify_prime(a, b, delta, p), primes))

    report = PrimeScanReport(Y)
    for p, kind in classified:
        if kind == "bad":
            report.bad.append(p)
        elif kind in ("anomalous", "local-torsion"):
            report.anomalous.append(p)
            if kind == "local-torsion":
                report.local_torsion.append(p)
    if sha_order is not None:
        report.exceptional = exceptional_primes(sha_order, tamagawa or [])
    logger.debug(f"Scanned {len(primes)} primes for {curve.pair}: {report.anomalous_count} anomalous")
    return report


@dataclass(frozen=True)
class FineSelmerInputs:
    """
    Global invariants supplied by the user. ``sha_p_order`` is #Sha(E/Q)[p^infinity] and ``tamagawa`` lists the
    c_l(E) at the bad primes. ``phi_isomorphism`` is only consulted in rank 1.
    """

    a: int
    b: int
    p: int
    rank: int
    sha_p_order: int = 1
    tamagawa: Tuple[int, ...] = ()
    phi_isomorphism: Optional[bool] = None


@dataclass(frozen=True)
class SelmerVerdict:
    p: int
    status: str
    failed_condition: Optional[str]
    local_torsion: bool
    anomalous: bool

    @property
    def conclusive(self) -> bool:
        return self.status != STATUS_INCONCLUSIVE


FineSelmerVerdict = SelmerVerdict


def _local_data(inputs: FineSelmerInputs) -> Tuple[bool, bool]:
    require_prime(inputs.p)
    if inputs.rank < 0:
        raise PreconditionError(f"Rank must be nonnegative, got {inputs.rank}")
    if inputs.sha_p_order < 1 or any(c < 1 for c in inputs.tamagawa):
        raise PreconditionError("Sha order and Tamagawa numbers must be positive")
    pair = CurvePair(inputs.a, inputs.b)
    if discriminant(pair) % inputs.p == 0:
        raise BadReductionError(f"{pair} has bad reduction at {inputs.p}")
    anomalous = count_points(pair.reduce(inputs.p)) % inputs.p == 0
    local_torsion = anomalous and rank_mod_p_squared(inputs.a, inputs.b, inputs.p).rank == 2
    return anomalous, local_torsion


def _tamagawa_divisible(inputs: FineSelmerInputs) -> bool:
    return any(c % inputs.p == 0 for c in inputs.tamagawa)


def fine_selmer_verdict(inputs: FineSelmerInputs) -> SelmerVerdict:
    """
    Decides whether the mu and lambda invariants of the fine Selmer group are certified to vanish. The torsion
    condition is never computed directly: in rank 0 it follows when p is not a local torsion prime, in rank 1
    it additionally needs the user's assertion that phi_E is an isomorphism. A failed condition only means
    inconclusive, never positive invariants.
    """
    if inputs.rank >= 2:
        raise OutOfScopeError(f"Rank {inputs.rank} curves are outside the fine Selmer criterion")
    anomalous, local_torsion = _local_data(inputs)

    failed = None
    if inputs.sha_p_order != 1:
        failed = CONDITION_SHA
    elif _tamagawa_divisible(inputs):
        failed = CONDITION_TAMAGAWA
    elif local_torsion:
        failed = CONDITION_LOCAL_TORSION
    elif inputs.rank == 1 and not inputs.phi_isomorphism:
        failed = CONDITION_PHI_ISOMORPHISM
    status = STATUS_INCONCLUSIVE if failed else STATUS_FINITE
    return SelmerVerdict(inputs.p, status, failed, local_torsion, anomalous)


def classical_selmer_verdict(inputs: FineSelmerInputs) -> SelmerVerdict:
    """
    Unit criterion for the full p-primary Selmer group over the cyclotomic tower of a rank 0 curve with good
    ordinary reduction: the group vanishes when p divides neither #Sha nor any c_l and p is not anomalous.
    """
    if inputs.rank != 0:
        raise OutOfScopeError("The classical criterion is only implemented for rank 0")
    anomalous, local_torsion = _local_data(inputs)
    reduction = CurvePair(inputs.a, inputs.b).reduce(inputs.p)
    if (inputs.p + 1 - count_points(reduction)) % inputs.p == 0:
        raise OutOfScopeError(f"p={inputs.p} is supersingular for {reduction}")

    failed = None
    if inputs.sha_p_order != 1:
        failed = CONDITION_SHA
    elif _tamagawa_divisible(inputs):
        failed = CONDITION_TAMAGAWA
    elif anomalous:
        failed = CONDITION_ANOMALOUS
    status = STATUS_INCONCLUSIVE if failed else STATUS_TRIVIAL
    return SelmerVerdict(inputs.p, status, failed, local_torsion, anomalous)
