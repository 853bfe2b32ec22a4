"""Smoothed Renyi entropies over compressed spectra.

Three quantities feed the finite-key length: S0 (log of the smallest rank
reachable by removing eigenvalue mass at most eps), S2 (-log of the smallest
purity within the total-variation ball of radius 2*eps), and the conditional
H0 (log of the smallest number of outcome strings carrying probability at
least 1-eps).  The minimizers commute with the input state, so each reduces
to a one-dimensional scan over the compressed levels; every threshold,
floor, and tie-break below is an exact integer comparison (ties s_r = eps
include r, matching the non-strict max/min definitions).

The scans use prefix-sum identities instead of accumulating per-level
differences, e.g. for the raise side of the water fill

    s_r = lam_r * (count of levels below r) - (mass of levels below r),

so the only big*big products are the handful of comparisons whose outcome
bit-length bounds cannot already decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kernel import log2_bits
from .spectra import CompressedSpectrum, ProbSpectrum

__all__ = [
    "RankTrimResult",
    "WaterfillSolution",
    "SupportCutResult",
    "EpsilonTooLargeError",
    "s0_smooth",
    "s2_smooth",
    "h0_smooth",
]


class EpsilonTooLargeError(ValueError):
    """The smoothing budget would drive the raised floor past the lowered
    ceiling (x >= y); the two-sided water-fill solution does not exist."""


@dataclass(frozen=True)
class RankTrimResult:
    """Trace of the rank minimization: b fully removed levels, k removed
    eigenvalues in total, s_b the mass of the fully removed levels."""

    b: int
    k: int
    remaining_rank: int
    s_b: Fraction


@dataclass(frozen=True)
class WaterfillSolution:
    """Trace of the purity minimization: the lowest b_minus+1 levels raised
    to x, the highest b_plus+1 lowered to y, middle untouched."""

    b_minus: int
    b_plus: int
    x: Fraction
    y: Fraction
    purity: Fraction


@dataclass(frozen=True)
class SupportCutResult:
    """Trace of the support minimization: b distinct probabilities taken
    from the top, k strings kept, s_b their total mass before the trim."""

    b: int
    k: int
    s_b: Fraction


def _as_budget(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 <= eps < 1:
        raise ValueError(f"smoothing budget must lie in [0, 1), got {eps}")
    return eps


def _mul_le(a: int, b: int, rhs: int) -> bool:
    """a*b <= rhs for nonnegative ints, usually decided from bit lengths."""
    if a == 0 or b == 0:
        return rhs >= 0
    if rhs <= 0:
        return False
    hi = a.bit_length() + b.bit_length()  # a*b < 2**hi
    rb = rhs.bit_length()                 # 2**(rb-1) <= rhs < 2**rb
    if hi < rb:
        return True
    if hi - 2 >= rb:                      # a*b >= 2**(hi-2) >= 2**rb > rhs
        return False
    return a * b <= rhs


def s0_smooth(spec: CompressedSpectrum, eps) -> tuple[float, RankTrimResult]:
    """Smoothed rank entropy: log2 of the smallest rank among spectra within
    removal budget eps.

    Scans levels from the bottom, wholly removing levels while their
    cumulative mass stays <= eps, then removes floor((eps - s_b)/lam_b)
    further eigenvalues from the first kept level.  Zero levels are dropped
    up front: removing them is free and they never count toward rank.
    """
    eps = _as_budget(eps)
    nums, mults, den = spec.value_nums, spec.mults, spec.den
    nz = 0
    while nums[nz] == 0:
        nz += 1
    rank = sum(mults[nz:])
    en, ed = eps.numerator, eps.denominator
    target = en * den
    last = len(nums) - 1
    S = 0
    removed = 0
    b = 0
    for i, w in enumerate(spec.iter_masses()):
        if i < nz:
            continue
        if i == last:
            break  # always keep the top level (unreachable while eps < 1)
        if (S + w) * ed <= target:
            S += w
            removed += mults[i]
            b += 1
        else:
            break
    extra = (target - S * ed) // (ed * nums[nz + b])
    k = removed + extra
    remaining = rank - k
    assert remaining >= 1
    return log2_bits(remaining), RankTrimResult(
        b=b, k=k, remaining_rank=remaining, s_b=Fraction(S, den)
    )


def s2_smooth(spec: CompressedSpectrum, eps) -> tuple[float, WaterfillSolution]:
    """Smoothed collision entropy: -log2 of the smallest purity within the
    ball of total-variation radius 2*eps (budget eps on each side).

    Two scans locate b_minus = max{r : s_r^- <= eps} (cost of raising the
    r lowest levels) and b_plus analogously from the top; the leftover
    budget fixes the flat values x and y.  Exact rationals throughout.
    """
    eps = _as_budget(eps)
    nums, mults, den = spec.value_nums, spec.mults, spec.den
    m = len(nums)
    if m == 1:
        # single level: the spectrum is uniform on its support and nothing
        # can move; the ball contains no lower-purity spectrum
        lam = Fraction(nums[0], den)
        purity = mults[0] * lam * lam
        return -log2_bits(purity), WaterfillSolution(0, 0, lam, lam, purity)
    en, ed = eps.numerator, eps.denominator
    target = en * den

    # bottom scan; state while testing r: Ced = (count of levels < r) * ed,
    # Wed = (mass of levels < r) * ed; s_r <= eps iff lam_r*Ced <= target+Wed
    masses = spec.iter_masses()
    Ced = mults[0] * ed
    Wed = next(masses) * ed
    b_minus = 0
    at_b = (nums[0], 0, 0)  # (lam_b, Ced, Wed) prefixes at r = b
    for r in range(1, m):
        w_r = next(masses)
        if _mul_le(nums[r], Ced, target + Wed):
            b_minus = r
            at_b = (nums[r], Ced, Wed)
            Ced += mults[r] * ed
            Wed += w_r * ed
        else:
            break
    n_low = Ced // ed
    s_minus = Fraction(at_b[0] * at_b[1] - at_b[2], den * ed)
    x = Fraction(nums[b_minus], den) + (eps - s_minus) / n_low

    # top scan, mirrored: s_r^+ = T_{r-1} - lam_{m-1-r} * Ct_{r-1}
    masses = spec.iter_masses(reverse=True)
    Cted = mults[m - 1] * ed
    Ted = next(masses) * ed
    b_plus = 0
    at_t = (nums[m - 1], 0, 0)
    for r in range(1, m):
        w_r = next(masses)
        lam_num = nums[m - 1 - r]
        if not _mul_le(lam_num, Cted, Ted - target - 1):  # lam*Ct >= Ted-target
            b_plus = r
            at_t = (lam_num, Cted, Ted)
            Cted += mults[m - 1 - r] * ed
            Ted += w_r * ed
        else:
            break
    n_top = Cted // ed
    s_plus = Fraction(at_t[2] - at_t[0] * at_t[1], den * ed)
    y = Fraction(nums[m - 1 - b_plus], den) - (eps - s_plus) / n_top

    if x >= y:
        raise EpsilonTooLargeError(
            f"epsilon too large for spectrum: raised floor {x} meets "
            f"lowered ceiling {y}"
        )
    mid = spec.squared_mass_sum(b_minus + 1, m - 2 - b_plus)
    purity = n_low * x * x + Fraction(mid, den * den) + n_top * y * y
    return -log2_bits(purity), WaterfillSolution(
        b_minus=b_minus, b_plus=b_plus, x=x, y=y, purity=purity
    )


def h0_smooth(spec: ProbSpectrum, eps) -> tuple[float, SupportCutResult]:
    """Smoothed conditional support: log2 of the smallest number of strings
    whose total conditional probability reaches 1 - eps.

    Accumulates distinct probabilities from the top until their mass reaches
    1 - eps, then gives back floor((s_b - (1-eps))/p_b) strings of the last
    (smallest) included probability.
    """
    eps = _as_budget(eps)
    nums, counts, den = spec.prob_nums, spec.counts, spec.den
    m = len(nums)
    en, ed = eps.numerator, eps.denominator
    target = (ed - en) * den  # S/den >= 1-eps  iff  S*ed >= target
    S = 0
    cnt = 0
    b = 0
    for w in spec.iter_masses(reverse=True):
        S += w
        b += 1
        cnt += counts[m - b]
        if S * ed >= target:
            break
    k = cnt - (S * ed - target) // (ed * nums[m - b])
    if k < 1:
        k = 1
    return log2_bits(k), SupportCutResult(b=b, k=k, s_b=Fraction(S, den))
