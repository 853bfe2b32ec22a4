"""Compressed eigenvalue spectra for the depolarized-pair protocol family.

A symmetric collective attack leaves every signal pair in the same depolarized
maximally entangled state, parameterized by the symbol-agreement probability
beta0 (error rate 1 - beta0, spread evenly over the d - 1 wrong symbols with
probability beta1 each).  Over n sifted signals the adversary's marginal
rho_E, the joint classical-quantum state rho_XE, and the conditional outcome
distribution P(X|Y) all have Pascal-triangle structure: n + 1 (plus possibly
a zero level) distinct eigenvalues with binomial multiplicities.  This module
builds those spectra in compressed (value, multiplicity) form.

Internally a spectrum keeps integer level numerators over one common
denominator so the entropy scans downstream run on plain integers; values
only become `Fraction`s when `levels` is read.  Constructors also attach the
exact step ratios of the geometric level family (`_GeomHint`), letting level
masses (mult*value) and squared masses (mult*value^2) stream through exact
small-factor recurrences instead of per-level big multiplications.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional

__all__ = [
    "ProtocolParams",
    "CompressedSpectrum",
    "ProbSpectrum",
    "eve_spectrum",
    "xe_spectrum",
    "conditional_spectrum",
]


@dataclass(frozen=True)
class ProtocolParams:
    """Validated protocol inputs.

    d: signal dimension (qudit), n: sifted-key length, beta0: probability
    that Alice's and Bob's sifted symbols agree, epsilon: security parameter
    of the final key.  Derived: beta1 = (1-beta0)/(d-1) per wrong symbol,
    epsilon_prime = (epsilon/8)^2, the smoothing budget handed to each
    entropy.
    """

    d: int
    n: int
    beta0: Fraction
    epsilon: Fraction

    def __post_init__(self):
        if not isinstance(self.d, int) or isinstance(self.d, bool) or self.d < 2:
            raise ValueError(f"dimension d must be an integer >= 2, got {self.d!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"signal count n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "beta0", Fraction(self.beta0))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if not (Fraction(1, self.d) < self.beta0 <= 1):
            raise ValueError(
                f"beta0 must satisfy 1/d < beta0 <= 1, got {self.beta0} (d={self.d})"
            )
        if not (0 < self.epsilon < 1):
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    @property
    def beta1(self) -> Fraction:
        return (1 - self.beta0) / (self.d - 1)

    @property
    def error_rate(self) -> Fraction:
        return 1 - self.beta0

    @property
    def epsilon_prime(self) -> Fraction:
        return (self.epsilon / 8) ** 2


@dataclass(frozen=True)
class _GeomHint:
    """Exact step ratios of a geometric level block.

    For level indices start+j, j = 0..n:
        num[j+1] = num[j] * val_num // val_den
        mult[j+1] = mult[j] * (n-j) // ((j+1) * mult_div)
    Both divisions are exact at every step.  Indices below `start` are zero
    levels.
    """

    start: int
    n: int
    val_num: int
    val_den: int
    mult_div: int


def _geometric_levels(n: int, alpha: int, beta: int, mult0: int, mult_div: int):
    nums = [beta**n]
    for l in range(n):
        nums.append(nums[-1] * alpha // beta)
    mults = [mult0]
    for l in range(n):
        mults.append(mults[-1] * (n - l) // ((l + 1) * mult_div))
    return nums, mults


def _iter_masses(nums, mults, geom, reverse=False) -> Iterator[int]:
    """Yield mult*num per level (masses scaled by the common denominator)."""
    m = len(nums)
    if geom is None:
        order = range(m - 1, -1, -1) if reverse else range(m)
        for i in order:
            yield mults[i] * nums[i]
        return
    s, n = geom.start, geom.n
    up, dn, div = geom.val_num, geom.val_den, geom.mult_div
    if not reverse:
        for _ in range(s):
            yield 0
        w = mults[s] * nums[s]
        yield w
        for j in range(n):
            w = w * ((n - j) * up) // ((j + 1) * div * dn)
            yield w
    else:
        w = mults[s + n] * nums[s + n]
        yield w
        for j in range(n, 0, -1):
            w = w * (j * div * dn) // ((n - j + 1) * up)
            yield w
        for _ in range(s):
            yield 0


def _squared_mass_between(nums, mults, geom, lo: int, hi: int) -> int:
    """Sum of mult*num^2 over level indices lo..hi inclusive."""
    lo = max(lo, 0)
    hi = min(hi, len(nums) - 1)
    if hi < lo:
        return 0
    if geom is None:
        return sum(mults[i] * nums[i] * nums[i] for i in range(lo, hi + 1))
    lo = max(lo, geom.start)  # zero levels contribute nothing
    if hi < lo:
        return 0
    n, div = geom.n, geom.mult_div
    up2, dn2 = geom.val_num**2, geom.val_den**2
    sig = mults[lo] * nums[lo] * nums[lo]
    total = sig
    for j in range(lo - geom.start, hi - geom.start):
        sig = sig * ((n - j) * up2) // ((j + 1) * div * dn2)
        total += sig
    return total


def _check_levels(nums, mults, den, total, masses, what):
    if not nums or len(nums) != len(mults):
        raise ValueError(f"{what}: malformed level lists")
    if den < 1:
        raise ValueError(f"{what}: denominator must be positive")
    prev = -1
    for v in nums:
        if v <= prev:
            raise ValueError(f"{what}: level values must be strictly ascending")
        prev = v
    if nums[0] < 0:
        raise ValueError(f"{what}: negative level value")
    if any(c < 1 for c in mults):
        raise ValueError(f"{what}: multiplicities must be >= 1")
    if sum(mults) != total:
        raise ValueError(f"{what}: multiplicities do not sum to {total}")
    if sum(masses) != den:
        raise ValueError(f"{what}: spectrum does not sum to 1 exactly")


@dataclass(eq=False)
class CompressedSpectrum:
    """Density-operator spectrum as strictly ascending (value, multiplicity)
    levels; values are stored as `value_nums[i] / den`."""

    value_nums: list[int]
    mults: list[int]
    den: int
    total_dim: int
    geom: Optional[_GeomHint] = field(default=None, repr=False)

    def __post_init__(self):
        _check_levels(
            self.value_nums, self.mults, self.den, self.total_dim,
            self.iter_masses(), "CompressedSpectrum",
        )

    @classmethod
    def from_levels(cls, levels, total_dim: int) -> "CompressedSpectrum":
        """Build from explicit (Fraction, multiplicity) pairs (ascending)."""
        vals = [Fraction(v) for v, _ in levels]
        den = math.lcm(*(v.denominator for v in vals)) if vals else 1
        nums = [v.numerator * (den // v.denominator) for v in vals]
        return cls(nums, [int(m) for _, m in levels], den, total_dim)

    @cached_property
    def levels(self) -> list[tuple[Fraction, int]]:
        return [
            (Fraction(v, self.den), m)
            for v, m in zip(self.value_nums, self.mults)
        ]

    def iter_masses(self, reverse: bool = False) -> Iterator[int]:
        return _iter_masses(self.value_nums, self.mults, self.geom, reverse)

    def squared_mass_sum(self, lo: int, hi: int) -> int:
        """Sum of mult*value^2 over level indices lo..hi, scaled by den^2."""
        return _squared_mass_between(self.value_nums, self.mults, self.geom, lo, hi)


@dataclass(eq=False)
class ProbSpectrum:
    """Grouped probability distribution: ascending (probability, count)
    levels with probabilities stored as `prob_nums[i] / den`; `support` is
    the number of strings carrying the distribution."""

    prob_nums: list[int]
    counts: list[int]
    den: int
    support: int
    geom: Optional[_GeomHint] = field(default=None, repr=False)

    def __post_init__(self):
        _check_levels(
            self.prob_nums, self.counts, self.den, self.support,
            self.iter_masses(), "ProbSpectrum",
        )
        if self.prob_nums[0] == 0:
            raise ValueError("ProbSpectrum: zero-probability level stored")

    @cached_property
    def levels(self) -> list[tuple[Fraction, int]]:
        return [
            (Fraction(p, self.den), c)
            for p, c in zip(self.prob_nums, self.counts)
        ]

    def iter_masses(self, reverse: bool = False) -> Iterator[int]:
        return _iter_masses(self.prob_nums, self.counts, self.geom, reverse)


def eve_spectrum(params: ProtocolParams) -> CompressedSpectrum:
    """Spectrum of the adversary's marginal rho_E over n signals.

    Levels l = 0..n: value A^l * B^(n-l) with A = (beta0(d+1)-1)/d and
    B = (1-beta0)/(d(d-1)), multiplicity C(n,l)*(d^2-1)^(n-l); total
    dimension d^(2n).  All eigenvalues are nonzero, so the stored levels
    carry the full rank.  At beta0 = 1 the state is pure: single level
    (1, x1) on an effectively one-dimensional support.
    """
    d, n = params.d, params.n
    p, q = params.beta0.numerator, params.beta0.denominator
    if p == q:
        return CompressedSpectrum([1], [1], 1, 1)
    alpha = (p * (d + 1) - q) * (d - 1)
    beta = q - p
    nums, mults = _geometric_levels(n, alpha, beta, (d * d - 1) ** n, d * d - 1)
    return CompressedSpectrum(
        nums, mults, (q * d * (d - 1)) ** n, d ** (2 * n),
        geom=_GeomHint(0, n, alpha, beta, d * d - 1),
    )


def xe_spectrum(params: ProtocolParams) -> CompressedSpectrum:
    """Spectrum of the joint classical-quantum state rho_XE over n signals.

    One zero level of multiplicity d^(3n) - d^(2n), then (indexing the
    nonzero family by l = 0..n, stored shifted up by one) values
    (beta0/d)^l * (beta1/d)^(n-l) with multiplicity d^n*C(n,l)*(d-1)^(n-l).
    At beta0 = 1 only the uniform level d^-n (x d^n) survives and the zero
    multiplicity grows to d^(3n) - d^n.
    """
    d, n = params.d, params.n
    p, q = params.beta0.numerator, params.beta0.denominator
    if p == q:
        return CompressedSpectrum(
            [0, 1], [d ** (3 * n) - d**n, d**n], d**n, d ** (3 * n)
        )
    alpha = p * (d - 1)
    beta = q - p
    nums, mults = _geometric_levels(
        n, alpha, beta, d**n * (d - 1) ** n, d - 1
    )
    return CompressedSpectrum(
        [0] + nums,
        [d ** (3 * n) - d ** (2 * n)] + mults,
        (q * d * (d - 1)) ** n,
        d ** (3 * n),
        geom=_GeomHint(1, n, alpha, beta, d - 1),
    )


def conditional_spectrum(params: ProtocolParams) -> ProbSpectrum:
    """Grouped conditional distribution P(X | Y=y) over n signals.

    The distribution is the same for every y: a string agreeing with y in l
    positions has probability beta0^l * beta1^(n-l), and there are
    C(n,l)*(d-1)^(n-l) such strings; support d^n.  At beta0 = 1 the
    conditional distribution is deterministic.
    """
    d, n = params.d, params.n
    p, q = params.beta0.numerator, params.beta0.denominator
    if p == q:
        return ProbSpectrum([1], [1], 1, 1)
    alpha = p * (d - 1)
    beta = q - p
    nums, counts = _geometric_levels(n, alpha, beta, (d - 1) ** n, d - 1)
    return ProbSpectrum(
        nums, counts, (q * (d - 1)) ** n, d**n,
        geom=_GeomHint(0, n, alpha, beta, d - 1),
    )
