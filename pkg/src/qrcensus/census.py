"""Quadratic-residue census of an odd modulus.

A nonzero y is a residue of n when some x has x**2 = y mod n; non-unit
residues (gcd(y, n) > 1) count too.  "Small" means 1 <= y <= (n-1)/2,
"large" means (n-1)/2 < y <= n-1; n is odd so there is never a tie.
Values of x whose square is 0 are tracked separately and never counted
as residues, yet the small ys they occupy still count as non-residues.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

from qrcensus import kernel
from qrcensus.modmath import as_modulus

STRATEGIES = ("incremental", "naive")


class CensusTallies(NamedTuple):
    """The ten counts/sums of one census, plus the small zero-square roots."""

    r_b: int
    n_b: int
    r_h: int
    n_h: int
    sum_r: int
    sum_n: int
    sum_rb: int
    sum_nb: int
    sum_rh: int
    sum_nh: int
    zero_square_roots: tuple


class ResidueDetail(NamedTuple):
    y: int
    smallest_root: int


@dataclass(frozen=True)
class ResidueCensus:
    n: int
    residues: frozenset
    r_b: int
    n_b: int
    r_h: int
    n_h: int
    sum_r: int
    sum_n: int
    sum_rb: int
    sum_nb: int
    sum_rh: int
    sum_nh: int
    zero_square_roots: frozenset
    details: Optional[tuple] = None


def _check_strategy(strategy):
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")


@lru_cache(maxsize=65536)
def _incremental_tallies(n):
    t = kernel.census_tallies(n)
    return CensusTallies(*t[:10], tuple(t[10]))


def tallies(n, *, strategy: str = "incremental") -> CensusTallies:
    """Census counts and sums without materializing the residue set.

    "incremental" maintains x**2 mod n by adding 2x+1 and conditionally
    subtracting n; "naive" squares with mul_mod.  They must agree; both
    stay available so each can audit the other.
    """
    n = as_modulus(n)
    _check_strategy(strategy)
    if strategy == "incremental":
        return _incremental_tallies(n)
    t = kernel.census_tallies(n, True)
    return CensusTallies(*t[:10], tuple(t[10]))


def _iter_bits(bitmap):
    for i, byte in enumerate(bitmap):
        if byte:
            base = i << 3
            while byte:
                low = byte & -byte
                yield base + low.bit_length() - 1
                byte ^= low


def quadratic_residue_set(n, *, strategy: str = "incremental") -> frozenset:
    """All nonzero quadratic residues of n, i.e. {x**2 mod n} \\ {0} for
    x in [1, (n-1)/2] (x and n-x square to the same value)."""
    n = as_modulus(n)
    _check_strategy(strategy)
    return frozenset(_iter_bits(kernel.residue_bitmap(n, strategy == "naive")))


def census(n, want_details: bool = False, *, strategy: str = "incremental") -> ResidueCensus:
    """The full census record of n; want_details adds (y, smallest_root)
    rows for every residue."""
    n = as_modulus(n)
    t = tallies(n, strategy=strategy)
    return ResidueCensus(
        n=n,
        residues=quadratic_residue_set(n, strategy=strategy),
        r_b=t.r_b,
        n_b=t.n_b,
        r_h=t.r_h,
        n_h=t.n_h,
        sum_r=t.sum_r,
        sum_n=t.sum_n,
        sum_rb=t.sum_rb,
        sum_nb=t.sum_nb,
        sum_rh=t.sum_rh,
        sum_nh=t.sum_nh,
        zero_square_roots=frozenset(t.zero_square_roots),
        details=residue_details(n) if want_details else None,
    )


def residue_details(n) -> tuple:
    """(y, smallest_root) for every residue of n, ascending by y."""
    n = as_modulus(n)
    first = {}
    for x in range(1, (n - 1) // 2 + 1):
        s = x * x % n
        if s and s not in first:
            first[s] = x
    return tuple(ResidueDetail(y, first[y]) for y in sorted(first))


def smallest_sqrt(y: int, n) -> Optional[int]:
    """Least x >= 1 with x**2 = y mod n, or None when y is a non-residue.

    Roots come in mirror pairs x and n-x, so the least one always lies in
    the small half.
    """
    n = as_modulus(n)
    if not 1 <= y <= n - 1:
        raise ValueError(f"y must be in [1, {n - 1}], got {y}")
    for x in range(1, (n - 1) // 2 + 1):
        if x * x % n == y:
            return x
    return None


def small_residue_count(n) -> int:
    """r_b(n): how many residues lie in [1, (n-1)/2]."""
    return tallies(n).r_b


def n_h(n) -> int:
    """Count of large non-residues: y in ((n-1)/2, n-1] with no square root."""
    return tallies(n).n_h
