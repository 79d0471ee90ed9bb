"""Prime fields F_p and primitive roots of unity."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

P_MAX = 2**31 - 1


class NoSuchRoot(ValueError):
    """No element of the requested multiplicative order exists in F_p."""


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p > P_MAX:
        raise ValueError(f"modulus {p} exceeds 2^31 - 1")


def derive_a_bar(a: int, p: int) -> int:
    """Return ``a / gcd(a, p)``.

    Only one factor of ``p`` is removed, so for ``p**2 | a`` the result is
    still divisible by ``p`` and :func:`find_primitive_root` will refuse it.
    """
    if a < 2:
        raise ValueError(f"a must be >= 2, got {a}")
    _check_prime(p)
    return a // gcd(a, p)


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise DivisionByZero("0 has no multiplicative order")
    y, d = x, 1
    while y != 1:
        y = y * x % p
        d += 1
    return d


def find_primitive_root(a_bar: int, p: int) -> "FieldElement":
    """Smallest residue of multiplicative order exactly ``a_bar`` in F_p."""
    _check_prime(p)
    if a_bar < 1 or (p - 1) % a_bar != 0:
        raise NoSuchRoot(
            f"no primitive {a_bar}-th root of unity in F_{p}: "
            f"need a_bar | p - 1 = {p - 1}"
        )
    for x in range(1, p):
        # cheap filter before the exact order computation
        if pow(x, a_bar, p) == 1 and multiplicative_order(x, p) == a_bar:
            return FieldElement(x, p)
    raise NoSuchRoot(f"no primitive {a_bar}-th root of unity in F_{p}")  # pragma: no cover


@dataclass(frozen=True, order=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(-self.value % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero(f"0 is not invertible in F_{self.p}")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(o, self.p).inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return FieldElement(pow(self.value, n, self.p), self.p)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def neg(x: FieldElement) -> FieldElement:
    return -x


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def inv(x: FieldElement) -> FieldElement:
    return x.inv()


def power(x: FieldElement, n: int) -> FieldElement:
    return x**n


@dataclass(frozen=True)
class FieldSpec:
    """F_p together with a fixed primitive ``a_bar``-th root of unity ``q``.

    Build with :meth:`create`; the raw constructor trusts its arguments.
    """

    p: int
    a: int
    a_bar: int
    q: int

    @classmethod
    def create(cls, p: int, a: int, q: int | None = None) -> "FieldSpec":
        a_bar = derive_a_bar(a, p)
        if q is None:
            q = find_primitive_root(a_bar, p).value
        else:
            q %= p
            if q == 0 or multiplicative_order(q, p) != a_bar:
                raise NoSuchRoot(f"q = {q} is not a primitive {a_bar}-th root of unity in F_{p}")
        return cls(p, a, a_bar, q)

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self.p)

    @property
    def q_inv(self) -> int:
        return pow(self.q, -1, self.p)

    def to_dict(self) -> dict:
        return {"p": self.p, "a": self.a, "a_bar": self.a_bar, "q": self.q}
