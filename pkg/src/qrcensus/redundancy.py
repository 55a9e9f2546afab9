"""Square collisions: why composite moduli have few distinct residues.

For composite n, distinct a, b <= (n-1)/2 can share a square; each such
collision removes one candidate residue.  The witness is the identity
a**2 - b**2 = (a-b)(a+b): n divides that product without dividing either
factor's matching power, which is only possible when n is composite.
"""

from dataclasses import dataclass
from typing import NamedTuple

from qrcensus.modmath import as_modulus, factorize


@dataclass(frozen=True)
class CollisionPair:
    """a and its least partner b with a**2 = b**2 mod n, 1 <= b < a <= (n-1)/2."""

    n: int
    a: int
    b: int
    shared_square: int

    def __post_init__(self):
        n = as_modulus(self.n)
        a, b = self.a, self.b
        if not 1 <= b < a <= (n - 1) // 2:
            raise ValueError(f"need 1 <= b < a <= {(n - 1) // 2}, got a={a}, b={b}")
        if a * a % n != b * b % n:
            raise ValueError(f"{a}**2 and {b}**2 differ mod {n}")
        if self.shared_square != a * a % n:
            raise ValueError(
                f"shared_square {self.shared_square} is not {a}**2 mod {n}"
            )

    @property
    def witness_low(self) -> int:
        return self.a - self.b

    @property
    def witness_high(self) -> int:
        return self.a + self.b


class WitnessCheck(NamedTuple):
    factor_low: int
    factor_high: int
    product: int
    modulus_divides: bool


def collision_pairs(n) -> list:
    """One pair (a, min b) for each a in [2, (n-1)/2] that repeats a smaller
    value's square, ascending by a.  Primes yield the empty list."""
    n = as_modulus(n)
    first = {}
    out = []
    for x in range(1, (n - 1) // 2 + 1):
        s = x * x % n
        if s == 0:
            continue
        b = first.get(s)
        if b is None:
            first[s] = x
        else:
            out.append(CollisionPair(n, x, b, s))
    return out


def collision_classes(n) -> list:
    """Alternate presentation: (shared_square, members) for every square
    shared by at least two values of [1, (n-1)/2], ascending members."""
    n = as_modulus(n)
    groups = {}
    for x in range(1, (n - 1) // 2 + 1):
        s = x * x % n
        if s:
            groups.setdefault(s, []).append(x)
    return [(s, members) for s, members in sorted(groups.items()) if len(members) > 1]


def zero_square_roots(n) -> frozenset:
    """All x in [1, n-1] with x**2 = 0 mod n.

    These are the multiples of prod(p**ceil(e/2)) over the factorization
    of n; squarefree n has none.
    """
    n = as_modulus(n)
    k = 1
    for p, e in factorize(n).items():
        k *= p ** ((e + 1) // 2)
    if k >= n:
        return frozenset()
    return frozenset(range(k, n, k))


def witness(pair: CollisionPair) -> WitnessCheck:
    """The (a-b, a+b) divisibility certificate, re-verified rather than
    assumed from the pair."""
    if (pair.a * pair.a - pair.b * pair.b) % pair.n != 0:
        raise ValueError(f"invalid pair: {pair.a}**2 != {pair.b}**2 mod {pair.n}")
    low = pair.witness_low
    high = pair.witness_high
    product = low * high
    return WitnessCheck(low, high, product, product % pair.n == 0)
