"""Exact scalars: the rationals (via ``gmpy2.mpq``) and prime fields F_p.

Every scalar in the package is either an ``mpq`` (canonical reduced fraction
with positive denominator) or a :class:`Residue` (canonical residue in
``[0, p)``).  A :class:`Field` descriptor converts, parses and formats them.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Union

from gmpy2 import mpq, mpz

__all__ = ["Field", "Residue", "QQ", "GF", "Scalar", "field_of", "is_prime"]


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


class Residue:
    """Element of F_p, stored as its canonical residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise TypeError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, (int, mpz)):
            return int(other)
        raise TypeError(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return Residue(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return Residue(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Residue(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if o == 0:
            raise ZeroDivisionError(f"division by 0 in F_{self.p}")
        return Residue(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Residue(self._coerce(other), self.p) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            # convenience for comparisons with 0 and 1
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[mpq, Residue]


class Field:
    """Descriptor for Q (``p is None``) or F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, x) -> Scalar:
        if self.p is None:
            if isinstance(x, Residue):
                raise TypeError("field mismatch: F_p element given for Q")
            if isinstance(x, str):
                return self.parse(x)
            return mpq(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise TypeError(f"field mismatch: F_{x.p} element given for F_{self.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        q = mpq(x)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
        return Residue(num * pow(den, -1, self.p), self.p)

    def contains(self, x) -> bool:
        if self.p is None:
            return isinstance(x, mpq)
        return isinstance(x, Residue) and x.p == self.p

    def parse(self, s: str) -> Scalar:
        s = s.strip()
        if "/" in s:
            a, b = s.split("/")
            return self(mpq(int(a), int(b)))
        return self(int(s))

    def format(self, x: Scalar) -> str:
        return str(x)

    def elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise ValueError("Q is infinite")
        for v in range(self.p):
            yield Residue(v, self.p)

    def random(self, rng, lo: int = -9, hi: int = 9) -> Scalar:
        """Uniform over {lo..hi} for Q, over all of F_p otherwise."""
        if self.p is None:
            return mpq(rng.randint(lo, hi))
        return Residue(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng, lo: int = -9, hi: int = 9) -> Scalar:
        while True:
            x = self.random(rng, lo, hi)
            if x != 0:
                return x

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.p is None else {"kind": "Fp", "p": self.p}

    @staticmethod
    def from_json(obj: dict) -> "Field":
        kind = obj.get("kind")
        if kind == "Q":
            return QQ
        if kind == "Fp":
            return GF(int(obj["p"]))
        raise ValueError(f"unknown field kind {kind!r}")

    @staticmethod
    def from_name(name: str) -> "Field":
        """Parse ``Q``, ``QQ``, ``F5``, ``GF5`` or a bare prime ``5``."""
        n = name.strip().upper()
        if n in ("Q", "QQ"):
            return QQ
        for prefix in ("GF", "FP", "F"):
            if n.startswith(prefix) and n[len(prefix):].isdigit():
                return GF(int(n[len(prefix):]))
        if n.isdigit():
            return GF(int(n))
        raise ValueError(f"unrecognised field {name!r}")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


def field_of(x) -> Field:
    if isinstance(x, Residue):
        return GF(x.p)
    if isinstance(x, mpq):
        return QQ
    raise TypeError(f"{x!r} is not a field scalar")
