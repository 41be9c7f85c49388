"""Exact scalar fields: prime fields F_p (p >= 5) and the rationals.

Field elements are plain Python values: ``int`` residues in ``[0, p)`` for a
prime field and ``fractions.Fraction`` for the rationals.  Each field also
knows how to build and normalise numpy arrays of its elements, which is what
the linear algebra layer works with.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# int64 matmuls stay exact while n * p**2 < 2**63; beyond this we fall back to
# Python integers in object arrays.
_INT64_PRIME_LIMIT = 2**20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class PrimeField:
    kind = "prime"
    characteristic: int

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p < 5:
            raise FieldError(f"characteristic must be at least 5, got {p}")
        self.p = p
        self.characteristic = p
        self.dtype = np.int64 if p < _INT64_PRIME_LIMIT else object
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self(x.numerator) * self.inv(self(x.denominator)) % self.p
        return int(x) % self.p

    def inv(self, a) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def normalize(self, arr):
        return arr % self.p

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        if a.size:
            a = np.vectorize(self, otypes=[object])(a)
        return a.astype(self.dtype)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=self.dtype)

    def random(self, rng: np.random.Generator, shape=None):
        return rng.integers(0, self.p, size=shape).astype(self.dtype) if shape is not None \
            else int(rng.integers(0, self.p))

    def parse(self, s: str) -> int:
        return self(Fraction(s.strip()))

    def format(self, a) -> str:
        return str(int(a) % self.p)

    def spec(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    kind = "rational"
    characteristic = 0
    dtype = object

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            raise FieldError("floats are not exact field elements")
        return Fraction(x)

    def inv(self, a) -> Fraction:
        a = Fraction(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / a

    def normalize(self, arr):
        return arr

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        if a.size:
            a = np.vectorize(self, otypes=[object])(a)
        return a

    def zeros(self, shape) -> np.ndarray:
        a = np.empty(shape, dtype=object)
        a.fill(Fraction(0))
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = Fraction(1)
        return a

    def random(self, rng: np.random.Generator, shape=None):
        # small integers keep fraction growth in check during randomized checks
        if shape is None:
            return Fraction(int(rng.integers(-5, 6)))
        return self.array(rng.integers(-5, 6, size=shape))

    def parse(self, s: str) -> Fraction:
        return Fraction(s.strip())

    def format(self, a) -> str:
        return str(Fraction(a))

    def spec(self) -> dict:
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


QQ = RationalField()

Field = PrimeField | RationalField


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> Field:
    """Build a field from ``{"kind": "prime", "p": 5}`` / ``{"kind": "rational"}``."""
    if isinstance(spec, (PrimeField, RationalField)):
        return spec
    try:
        kind = spec["kind"]
    except (TypeError, KeyError):
        raise FieldError(f"malformed field spec: {spec!r}") from None
    if kind == "prime":
        return PrimeField(spec["p"])
    if kind == "rational":
        return QQ
    raise FieldError(f"unknown field kind {kind!r}")


def scalar_inv(a, field: Field):
    return field.inv(a)
