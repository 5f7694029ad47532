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
import sys
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Optional, Tuple, Dict, Any

from mpmath.ctx_mp import MPContext
from sympy import primerange

from selmer.arith import require_prime
from selmer.census import PrimeCensusRecord
from selmer.core import PreconditionError, MissingCensusError

DEFAULT_TOLERANCE = 1e-12
DELAUNAY_CUTOFF = 1e-15

BOUND_FP = "Fp"
BOUND_BP = "Bp"
BOUND_DP = "Dp"
BOUNDS = (BOUND_FP, BOUND_BP, BOUND_DP)

E5_HEURISTIC = "heuristic"
E5_SUPPLIED = "supplied"

DISCLAIMER = (
    "Upper densities are conditional: they hold under the hypotheses of the underlying results, including "
    "nondegeneracy of the p-adic regulator, none of which is checked here."
)

ASYMPTOTICS = {
    BOUND_FP: "census term ~ p^(-1/2) up to logarithmic factors",
    BOUND_BP: "census term <= 2/p + C p^(-3/2) log p (log log p)^2",
    BOUND_DP: "d(E5) + 2/p + C p^(-3/2) log p (log log p)^2",
}

_EPSILON = sys.float_info.epsilon

# read-only after setup
_CONTEXT = MPContext()
_CONTEXT.dps = 40

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CertifiedReal:
    """A float together with a bound on its absolute distance to the exact value."""

    value: float
    error: float

    def __add__(self, other: "CertifiedReal") -> "CertifiedReal":
        value = self.value + other.value
        return CertifiedReal(value, self.error + other.error + _EPSILON * abs(value))

    def contains(self, x: float) -> bool:
        return abs(x - self.value) <= self.error


def _certify(value, error) -> CertifiedReal:
    approximation = float(value)
    return CertifiedReal(approximation, float(error) + _EPSILON * abs(approximation))


@lru_cache(maxsize=None)
def _zeta_tail(s: int, tol: float) -> Tuple[Any, Any]:
    """
    Midpoint and half-width of an enclosure of sum over n >= 2 of n^-s. The tail beyond N is the integral
    N^(1-s)/(s-1) - N^-s/2 plus a trapezoid remainder in [0, (s N^(-s-1) + s(s+1) N^(-s-2))/12].
    """
    ctx = _CONTEXT
    n = 8
    while True:
        remainder = (s * ctx.mpf(n) ** (-s - 1) + s * (s + 1) * ctx.mpf(n) ** (-s - 2)) / 12
        if remainder / 2 <= tol / 4:
            break
        n *= 2
    partial = ctx.fsum(ctx.mpf(k) ** -s for k in range(2, n + 1))
    tail = ctx.mpf(n) ** (1 - s) / (s - 1) - ctx.mpf(n) ** -s / 2
    return partial + tail + remainder / 2, remainder / 2 + ctx.mpf(10) ** (-30) * n


def zeta(s: int, tol: float = DEFAULT_TOLERANCE) -> CertifiedReal:
    """zeta(s) for an integer s >= 2 with certified absolute error at most ``tol``."""
    if s < 2:
        raise PreconditionError(f"zeta is only evaluated for s >= 2, got {s}")
    mid, width = _zeta_tail(s, tol)
    return _certify(1 + mid, width)


def zeta_minus_one(s: int, tol: float = DEFAULT_TOLERANCE) -> CertifiedReal:
    """zeta(s) - 1, evaluated without cancellation."""
    if s < 2:
        raise PreconditionError(f"zeta is only evaluated for s >= 2, got {s}")
    mid, width = _zeta_tail(s, tol)
    return _certify(mid, width)


def delaunay_term(p: int) -> CertifiedReal:
    """
    Predicted proportion of curves with p dividing #Sha: 1 - prod over i >= 1 of (1 - p^-(2i-1)). The product
    stops once the next factor is within 1e-15 of 1.
    """
    require_prime(p)
    ctx = _CONTEXT
    product = ctx.mpf(1)
    exponent = 1
    while True:
        factor = ctx.mpf(p) ** -exponent
        if factor < DELAUNAY_CUTOFF:
            break
        product *= 1 - factor
        exponent += 2
    # dropped factors move the product by at most sum of p^-(2i-1) over the remaining i
    truncation = ctx.mpf(p) ** -exponent / (1 - ctx.mpf(p) ** -2)
    return _certify(1 - product, truncation)


def heuristic_local_torsion_mass(Y: int) -> float:
    """Expected number of local torsion primes 5 <= p <= Y: sum of 1/(4 p^(3/2))."""
    ctx = _CONTEXT
    return float(ctx.fsum(1 / (4 * ctx.mpf(p) ** ctx.mpf(1.5)) for p in primerange(5, Y + 1)))


@dataclass(frozen=True)
class DensityBoundReport:
    p: int
    bound: str
    census_quantity: str
    census_count: int
    census_term: float
    delaunay_term: float
    tamagawa_term: float
    e5_term: Optional[float]
    e5_source: Optional[str]
    total: float
    error: float
    vacuous: bool
    asymptotic: str
    coarse_bound: Optional[float] = None
    refined_bound: Optional[float] = None
    disclaimer: str = DISCLAIMER

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _require_record(p: int, census: Optional[PrimeCensusRecord], with_ap: bool) -> PrimeCensusRecord:
    require_prime(p)
    if census is None:
        raise MissingCensusError(f"No census record for p={p}")
    if census.p != p:
        raise PreconditionError(f"Census record is for p={census.p}, not p={p}")
    if with_ap and not census.has_ap:
        raise MissingCensusError(f"Census record for p={p} carries no mod p^2 counts")
    return census


def _report(
    p: int,
    bound: str,
    quantity: str,
    count: int,
    denominator_power: int,
    tol: float,
    e5: Optional[CertifiedReal] = None,
    e5_source: Optional[str] = None,
    structural: Tuple[Optional[float], Optional[float]] = (None, None),
) -> DensityBoundReport:
    zeta10 = zeta(10, tol)
    scale = count / p ** denominator_power
    census_term = CertifiedReal(zeta10.value * scale, zeta10.error * scale + _EPSILON * zeta10.value * scale)
    delaunay = delaunay_term(p)
    tamagawa = zeta_minus_one(p, tol)
    total = census_term + delaunay + tamagawa
    if e5 is not None:
        total = total + e5
    if total.value >= 1:
        logger.warning(f"Density bound {bound} for p={p} is vacuous (total {total.value:.6f})")
    return DensityBoundReport(
        p=p,
        bound=bound,
        census_quantity=quantity,
        census_count=count,
        census_term=census_term.value,
        delaunay_term=delaunay.value,
        tamagawa_term=tamagawa.value,
        e5_term=None if e5 is None else e5.value,
        e5_source=e5_source,
        total=total.value,
        error=total.error,
        vacuous=total.value >= 1,
        asymptotic=ASYMPTOTICS[bound],
        coarse_bound=structural[0],
        refined_bound=structural[1],
    )


def bound_Fp(p: int, census: Optional[PrimeCensusRecord], tol: float = DEFAULT_TOLERANCE) -> DensityBoundReport:
    """zeta(10) #S_p / p^2 + Delaunay term + (zeta(p) - 1)."""
    record = _require_record(p, census, with_ap=False)
    return _report(p, BOUND_FP, "sp", record.sp, 2, tol)


def _structural_bounds(record: PrimeCensusRecord, tol: float) -> Tuple[float, float]:
    # both dominate zeta(10) #A_p / p^4 through ap1 < 2p^3 and ap2 <= p #S_p
    p = record.p
    zeta10 = zeta(10, tol).value
    coarse = zeta10 * (2 / p + record.sp / p ** 3)
    refined = zeta10 * (record.sp_star / p ** 2 + record.sp / p ** 3)
    return coarse, refined


def bound_Bp(p: int, census: Optional[PrimeCensusRecord], tol: float = DEFAULT_TOLERANCE) -> DensityBoundReport:
    """zeta(10) #A_p / p^4 + Delaunay term + (zeta(p) - 1)."""
    record = _require_record(p, census, with_ap=True)
    return _report(p, BOUND_BP, "ap", record.ap, 4, tol, structural=_structural_bounds(record, tol))


def bound_Dp(
    p: int,
    census: Optional[PrimeCensusRecord],
    e5_density: Optional[float] = None,
    tol: float = DEFAULT_TOLERANCE,
) -> DensityBoundReport:
    """
    The :func:`bound_Bp` terms plus the upper density of curves where phi_E fails to be an isomorphism.

    :param e5_density: That density; defaults to the heuristic value 1/(2p).
    """
    record = _require_record(p, census, with_ap=True)
    if e5_density is None:
        e5 = _certify(_CONTEXT.mpf(1) / (2 * p), 0)
        source = E5_HEURISTIC
    else:
        if not 0 <= e5_density <= 1:
            raise PreconditionError(f"Density must lie in [0, 1], got {e5_density}")
        e5 = CertifiedReal(float(e5_density), 0.0)
        source = E5_SUPPLIED
    return _report(p, BOUND_DP, "ap", record.ap, 4, tol, e5, source, _structural_bounds(record, tol))


def bound_report(
    bound: str, p: int, census: Optional[PrimeCensusRecord], e5_density: Optional[float] = None
) -> DensityBoundReport:
    if bound == BOUND_FP:
        return bound_Fp(p, census)
    if bound == BOUND_BP:
        return bound_Bp(p, census)
    if bound == BOUND_DP:
        return bound_Dp(p, census, e5_density)
    raise PreconditionError(f"Unknown bound {bound}, expected one of {', '.join(BOUNDS)}")
