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
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Dict, List, FrozenSet

import numpy as np

from selmer.arith import Residue, require_prime, inverse_mod, sqrt_mod_p
from selmer.core import PreconditionError, SingularCurveError, DEFAULT_SEED

AffinePoint = Tuple[int, int]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvePair:
    """
    The Weierstrass pair (a, b) of y^2 = x^3 + a*x + b. A ``modulus`` of ``None`` means the pair lives over the
    integers; otherwise both coefficients are reduced residues modulo p or p^2.
    """

    a: int
    b: int
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None:
            if self.modulus < 2:
                raise PreconditionError(f"Context modulus must be at least 2, got {self.modulus}")
            if not (0 <= self.a < self.modulus and 0 <= self.b < self.modulus):
                raise PreconditionError(f"Pair ({self.a}, {self.b}) not reduced mod {self.modulus}")

    @classmethod
    def mod(cls, a: int, b: int, modulus: int) -> "CurvePair":
        return cls(a % modulus, b % modulus, modulus)

    def reduce(self, modulus: int) -> "CurvePair":
        if self.modulus is not None and self.modulus % modulus != 0:
            raise PreconditionError(f"Cannot reduce a pair mod {self.modulus} to mod {modulus}")
        return CurvePair.mod(self.a, self.b, modulus)

    def rhs(self, x: int) -> int:
        value = x ** 3 + self.a * x + self.b
        return value if self.modulus is None else value % self.modulus

    def __str__(self) -> str:
        context = "Z" if self.modulus is None else f"Z/{self.modulus}"
        return f"E[{self.a}, {self.b}] over {context}"


@dataclass(frozen=True)
class LocalCurveSummary:
    p: int
    order: int
    trace: int
    anomalous: bool
    supersingular: bool
    j: Optional[Residue]


def _prime_context(c: CurvePair) -> int:
    if c.modulus is None:
        raise PreconditionError(f"{c} has no prime context")
    return require_prime(c.modulus)


def discriminant(c: CurvePair) -> int:
    """Returns -16(4a^3 + 27b^2), reduced into the context ring."""
    value = -16 * (4 * c.a ** 3 + 27 * c.b ** 2)
    return value if c.modulus is None else value % c.modulus


def is_nonsingular(c: CurvePair, p: Optional[int] = None) -> bool:
    """
    Tests Δ ≠ 0 over the integers, or Δ a unit modulo the prime ``p`` (defaulting to the context modulus).
    """
    if p is None and c.modulus is None:
        return discriminant(c) != 0
    prime = c.modulus if p is None else p
    # 16 is a unit for every admissible prime
    return (4 * c.a ** 3 + 27 * c.b ** 2) % prime != 0


def j_invariant(c: CurvePair) -> Residue:
    p = _prime_context(c)
    denominator = (4 * c.a ** 3 + 27 * c.b ** 2) % p
    if denominator == 0:
        raise SingularCurveError(f"{c} is singular")
    if c.a == 0:
        return Residue(0, p)
    if c.b == 0:
        return Residue.of(1728, p)
    return Residue.of(1728 * 4 * c.a ** 3 * inverse_mod(denominator, p), p)


@lru_cache(maxsize=64)
def quadratic_character(p: int) -> np.ndarray:
    """Table of the Legendre symbol (x/p) for x = 0..p-1."""
    chi = -np.ones(p, dtype=np.int64)
    chi[0] = 0
    squares = (np.arange(1, p, dtype=np.int64) ** 2) % p
    chi[squares] = 1
    chi.setflags(write=False)
    return chi


@lru_cache(maxsize=16)
def character_sum_table(p: int) -> np.ndarray:
    """
    The p x p table S[a, b] = sum over x in F_p of (x^3 + a*x + b / p). Row a is the correlation of the value
    histogram of x^3 + a*x with the quadratic character, so the whole table is a single integer matrix product
    with the circulant character matrix.
    """
    require_prime(p)
    chi = quadratic_character(p)
    xs = np.arange(p, dtype=np.int64)
    cubes = (xs ** 3) % p
    values = (cubes[None, :] + np.outer(xs, xs)) % p
    histogram = np.bincount((xs[:, None] * p + values).ravel(), minlength=p * p).reshape(p, p).astype(np.int64)
    circulant = chi[(xs[:, None] + xs[None, :]) % p]
    table = histogram @ circulant.T
    table.setflags(write=False)
    logger.debug(f"Character sum table for p={p} computed")
    return table


@lru_cache(maxsize=16)
def nonsingular_mask(p: int) -> np.ndarray:
    xs = np.arange(p, dtype=np.int64)
    mask = (4 * xs[:, None] ** 3 + 27 * xs[None, :] ** 2) % p != 0
    mask.setflags(write=False)
    return mask


def trace_table(p: int) -> np.ndarray:
    """Traces of Frobenius t[a, b] = p + 1 - #E(F_p); entries at singular pairs carry no meaning."""
    return -character_sum_table(p)


def _require_nonsingular_mod_p(c: CurvePair) -> int:
    p = _prime_context(c)
    if (4 * c.a ** 3 + 27 * c.b ** 2) % p == 0:
        raise SingularCurveError(f"{c} is singular")
    return p


def count_points(c: CurvePair) -> int:
    """
    Counts #E(F_p) including the point at infinity.

    :return: 1 + sum over x of (1 + (x^3 + ax + b / p)).
    """
    p = _require_nonsingular_mod_p(c)
    xs = np.arange(p, dtype=np.int64)
    values = (xs ** 3 % p + c.a * xs + c.b) % p
    return int(p + 1 + quadratic_character(p)[values].sum())


def trace_of_frobenius(c: CurvePair) -> int:
    return c.modulus + 1 - count_points(c)


def is_anomalous(c: CurvePair) -> bool:
    return count_points(c) % c.modulus == 0


def summarize(c: CurvePair) -> LocalCurveSummary:
    order = count_points(c)
    p = c.modulus
    trace = p + 1 - order
    return LocalCurveSummary(
        p=p,
        order=order,
        trace=trace,
        anomalous=order % p == 0,
        supersingular=trace % p == 0,
        j=j_invariant(c),
    )


def add_points(c: CurvePair, first: Optional[AffinePoint], second: Optional[AffinePoint]) -> Optional[AffinePoint]:
    """Chord-tangent addition over F_p; ``None`` is the point at infinity."""
    p = c.modulus
    if first is None:
        return second
    if second is None:
        return first
    x1, y1 = first
    x2, y2 = second
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        slope = (3 * x1 * x1 + c.a) * inverse_mod(2 * y1, p) % p
    else:
        slope = (y2 - y1) * inverse_mod(x2 - x1, p) % p
    x3 = (slope * slope - x1 - x2) % p
    return x3, (slope * (x1 - x3) - y1) % p


def scalar_multiply(c: CurvePair, n: int, point: Optional[AffinePoint]) -> Optional[AffinePoint]:
    result = None
    addend = point
    while n > 0:
        if n & 1:
            result = add_points(c, result, addend)
        addend = add_points(c, addend, addend)
        n >>= 1
    return result


def find_point_of_order_p(c: CurvePair, seed: int = DEFAULT_SEED) -> Optional[AffinePoint]:
    """
    Searches an affine point of exact order p. Random points are multiplied by the cofactor #E/p until a
    nonzero multiple shows up; after 4p unsuccessful draws all x = 0..p-1 are scanned in order.

    :return: The point, or ``None`` when p does not divide #E(F_p).
    """
    p = _require_nonsingular_mod_p(c)
    order = count_points(c)
    if order % p != 0:
        return None
    cofactor = order // p

    def candidate(x: int) -> Optional[AffinePoint]:
        root = sqrt_mod_p(c.rhs(x) % p, p)
        if root is None:
            return None
        return scalar_multiply(c, cofactor, (x, int(root)))

    rng = np.random.default_rng(seed)
    for x in rng.integers(0, p, size=4 * p):
        point = candidate(int(x))
        if point is not None:
            return point
    logger.debug(f"Random search on {c} exhausted, scanning all abscissae")
    for x in range(p):
        point = candidate(x)
        if point is not None:
            return point
    raise PreconditionError(f"No point of order {p} found on {c} although {p} divides {order}")


def isomorphism_orbit(a: int, b: int, p: int) -> FrozenSet[Tuple[int, int]]:
    """The F_p-isomorphism orbit {(c^4 a, c^6 b) : c in F_p^*} of a pair."""
    require_prime(p)
    c = np.arange(1, p, dtype=np.int64)
    c2 = c * c % p
    c4 = c2 * c2 % p
    c6 = c4 * c2 % p
    return frozenset(zip((c4 * (a % p) % p).tolist(), (c6 * (b % p) % p).tolist()))


@dataclass(frozen=True)
class IsomorphismClass:
    representative: Tuple[int, int]
    orbit_size: int
    trace: int


def isomorphism_classes(p: int) -> List[IsomorphismClass]:
    """Walks every nonsingular pair mod p and collects the F_p-isomorphism classes in order of first appearance."""
    require_prime(p)
    traces = trace_table(p)
    mask = nonsingular_mask(p)
    seen = np.zeros((p, p), dtype=bool)
    classes = []
    for a in range(p):
        for b in range(p):
            if seen[a, b] or not mask[a, b]:
                continue
            orbit = isomorphism_orbit(a, b, p)
            for pair in orbit:
                seen[pair] = True
            classes.append(IsomorphismClass((a, b), len(orbit), int(traces[a, b])))
    return classes


def isogeny_census(p: int) -> Dict[int, int]:
    """
    Number N(t) of F_p-isomorphism classes of curves with trace of Frobenius t, for every trace that occurs.
    """
    counts = Counter(cls.trace for cls in isomorphism_classes(p))
    return dict(sorted(counts.items()))
