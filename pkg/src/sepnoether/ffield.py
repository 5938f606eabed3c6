"""Exact arithmetic in prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_MODULUS = 2**31


class FieldError(ValueError):
    pass


class OrderUnavailable(FieldError):
    """No element of the requested multiplicative order exists in F_p."""


class SearchExhausted(FieldError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (2 <= self.p < MAX_MODULUS) or not is_prime(self.p):
            raise FieldError(f"{self.p} is not a prime below 2^31")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def __repr__(self):
        return f"F_{self.p}"

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def signed(self, a: int) -> int:
        """Representative of a in (-p/2, p/2], used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def primitive_root(self) -> int:
        return _primitive_root(self.p)

    def elements(self):
        return (FieldElement(a, self) for a in range(self.p))


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: F_p^* is cyclic")


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise FieldError("residue out of range")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field(self.value * self.field.inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field(o * self.field.inv(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return FieldElement(pow(self.field.inv(self.value), -k, self.field.p), self.field)
        return FieldElement(pow(self.value, k, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise FieldError("zero has no multiplicative order")
        p = self.field.p
        n = p - 1
        for q in prime_factors(p - 1):
            while n % q == 0 and pow(self.value, n // q, p) == 1:
                n //= q
        return n


def element_of_order(field: PrimeField, n: int) -> FieldElement:
    """Deterministic element of multiplicative order n: g^((p-1)/n) for the least primitive root g."""
    if n < 1 or (field.p - 1) % n:
        raise OrderUnavailable(f"F_{field.p} has no element of order {n}")
    g = field.primitive_root()
    return FieldElement(pow(g, (field.p - 1) // n, field.p), field)


def choose_prime(group_order: int, min_elements: int) -> PrimeField:
    """Smallest prime p with p = 1 mod group_order and p > min_elements."""
    if group_order < 1:
        raise ValueError("group order must be positive")
    p = min_elements + 1
    r = (p - 1) % group_order
    if r:
        p += group_order - r
    while p < MAX_MODULUS:
        if p >= 2 and is_prime(p):
            return PrimeField(p)
        p += group_order
    raise SearchExhausted(f"no prime = 1 mod {group_order} below 2^31")
