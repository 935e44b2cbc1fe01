"""Scalar arithmetic over prime fields GF(q).

Field elements are plain Python ints in ``[0, q)``; the field itself is a
:class:`FieldSpec`.  GF(2) is flagged via :attr:`FieldSpec.binary` so that the
linear algebra layer can switch to bit-packed rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPrime, ZeroInverse

MAX_MODULUS = 1 << 31


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x < 4:
        return True
    if x % 2 == 0 or x % 3 == 0:
        return False
    i = 5
    while i * i <= x:
        if x % i == 0 or x % (i + 2) == 0:
            return False
        i += 6
    return True


def smallest_prime_at_least(x: int) -> int:
    """Least prime ``p >= x`` (``x >= 2``)."""
    if x < 2:
        raise ValueError("x must be >= 2")
    while not is_prime(x):
        x += 1
    return x


@dataclass(frozen=True)
class FieldSpec:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise NotPrime(f"modulus must be an int, got {self.q!r}")
        if self.q >= MAX_MODULUS or not is_prime(self.q):
            raise NotPrime(f"modulus {self.q} is not a prime below 2^31")

    @property
    def binary(self) -> bool:
        return self.q == 2

    def elem(self, value: int) -> int:
        return value % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        return mul_inv(a, self)

    def __str__(self):
        return f"GF({self.q})"


GF2 = FieldSpec(2)


def add(a: int, b: int, f: FieldSpec) -> int:
    if f.binary:
        return a ^ b
    return (a + b) % f.q


def mul(a: int, b: int, f: FieldSpec) -> int:
    if f.binary:
        return a & b
    return a * b % f.q


def mul_inv(a: int, f: FieldSpec) -> int:
    """Multiplicative inverse of ``a`` in GF(q).

    Raises :class:`ZeroInverse` for ``a == 0``.
    """
    a %= f.q
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    if f.binary:
        return 1
    return pow(a, -1, f.q)
