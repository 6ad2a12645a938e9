"""Finite field arithmetic for GF(p^n) in polynomial basis.

Elements are encoded as integers: the coefficient sequence (c_0, ..., c_{n-1})
of c_0 + c_1 x + ... + c_{n-1} x^{n-1} is read as a little-endian base-p
number. This encoding is also the canonical total order on field elements,
used for deterministic vertex ordering downstream.

Scalar operations work on any supported field; the numpy operation tables
(add, multiply, negate, invert, powers, Frobenius, trace) are built lazily and
are what the vectorised graph kernels use.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import product
from typing import TYPE_CHECKING, Union

import numpy as np

from srglab.exceptions import (
    EvenCharacteristic,
    NonPrimeCharacteristic,
    NotASubfield,
    ReducibleModulus,
    UnsupportedParameters,
    WrongField,
)
from srglab.gf.moduli import DEFAULT_MODULI, format_modulus

if TYPE_CHECKING:
    from srglab.gf.embedding import SubfieldEmbedding

logger = logging.getLogger(__name__)

MAX_ORDER = 1 << 16
TABLE_LIMIT = 1024


class SquareClass(Enum):
    ZERO = "zero"
    SQUARE = "square"
    NONSQUARE = "nonsquare"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


# ---------------------------------------------------------------------------
# Polynomials over GF(p), coefficient lists low-to-high
# ---------------------------------------------------------------------------


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num modulo den over GF(p); den must have a nonzero leading coefficient."""
    num = _trim([c % p for c in num])
    den = _trim([c % p for c in den])
    lead_inv = pow(den[-1], p - 2, p)
    while len(num) >= len(den):
        shift = len(num) - len(den)
        factor = (num[-1] * lead_inv) % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
        _trim(num)
    return num


def is_irreducible(p: int, modulus: tuple[int, ...]) -> bool:
    """Irreducibility by searching for a monic divisor of degree <= n/2."""
    n = len(modulus) - 1
    if n <= 1:
        return n == 1
    for degree in range(1, n // 2 + 1):
        for low in product(range(p), repeat=degree):
            divisor = list(low) + [1]
            if not _poly_mod(list(modulus), divisor, p):
                return False
    return True


def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n.

    Candidates are enumerated with the lower coefficients as a little-endian
    base-p counter, matching the element order.
    """
    for counter in range(p**n):
        low = []
        value = counter
        for _ in range(n):
            low.append(value % p)
            value //= p
        candidate = tuple(low) + (1,)
        if is_irreducible(p, candidate):
            return candidate
    raise ReducibleModulus(f"No irreducible polynomial of degree {n} over GF({p})")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) with a fixed irreducible modulus.

    Create instances through field_create(), which validates the modulus and
    returns one shared instance per (p, n, modulus).
    """

    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def __repr__(self) -> str:
        return f"GF({self.order})[{format_modulus(self.modulus)}]"

    # -- encoding ---------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: tuple[int, ...] | list[int]) -> int:
        if len(coeffs) != self.n or any(not 0 <= c < self.p for c in coeffs):
            raise WrongField(f"{list(coeffs)} is not a coefficient vector of {self}")
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + c
        return value

    def constant(self, k: int) -> int:
        """Index of the prime-field constant k."""
        return k % self.p

    def element(self, value: int | tuple[int, ...] | list[int]) -> "FieldElement":
        if isinstance(value, (tuple, list)):
            value = self.from_coeffs(value)
        if not 0 <= value < self.order:
            raise WrongField(f"{value} is not an element index of {self}")
        return FieldElement(value, self)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(a, self) for a in range(self.order)]

    # -- scalar arithmetic on indices --------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs([(x + y) % self.p for x, y in zip(ca, cb, strict=True)])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        return self.from_coeffs([(-x) % self.p for x in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(ca):
            if x == 0:
                continue
            for j, y in enumerate(cb):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, list(self.modulus), self.p)
        rem += [0] * (self.n - len(rem))
        return self.from_coeffs(rem)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int, k: int = 1) -> int:
        """a ** (p ** k)."""
        return self.pow(a, self.p ** (k % self.n))

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        order = self.order - 1
        for prime in prime_factors(self.order - 1):
            while order % prime == 0 and self.pow(a, order // prime) == 1:
                order //= prime
        return order

    # -- derived structure --------------------------------------------------

    @cached_property
    def primitive(self) -> int:
        """First element in canonical order generating the multiplicative group."""
        target = self.order - 1
        for a in range(1, self.order):
            if self.multiplicative_order(a) == target:
                logger.debug(f"Primitive element of {self}: {self.coeffs(a)}")
                return a
        raise AssertionError(f"{self} has no primitive element")

    def subfield(self, degree: int) -> "SubfieldEmbedding":
        """Embedding of the default GF(p^degree) into this field."""
        from srglab.gf.embedding import subfield_embedding

        if degree < 1 or self.n % degree:
            raise NotASubfield(f"GF({self.p}^{degree}) is not a subfield of {self}")
        return subfield_embedding(field_create(self.p, degree), self)

    # -- vectorised tables ----------------------------------------------------

    def _check_table_size(self) -> None:
        if self.order > TABLE_LIMIT:
            raise UnsupportedParameters(
                f"Operation tables are limited to order <= {TABLE_LIMIT}, got {self.order}"
            )

    @cached_property
    def _coeff_matrix(self) -> np.ndarray:
        return np.array([self.coeffs(a) for a in range(self.order)], dtype=np.int64)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.n, dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        self._check_table_size()
        c = self._coeff_matrix
        summed = (c[:, None, :] + c[None, :, :]) % self.p
        return (summed @ self._weights).astype(np.int32)

    @cached_property
    def neg_table(self) -> np.ndarray:
        self._check_table_size()
        return (((-self._coeff_matrix) % self.p) @ self._weights).astype(np.int32)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._check_table_size()
        c = self._coeff_matrix
        table = np.zeros((self.order, self.order), dtype=np.int32)
        x = self.p if self.n > 1 else 1
        for a in range(self.order):
            # Rows of the multiplication-by-a matrix: coefficients of a * x^i.
            rows = []
            current = a
            for _ in range(self.n):
                rows.append(self.coeffs(current))
                current = self.mul(current, x)
            mat = np.array(rows, dtype=np.int64)
            table[a] = ((c @ mat) % self.p) @ self._weights
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverses; entry 0 is 0."""
        table = np.zeros(self.order, dtype=np.int32)
        rows, cols = np.nonzero(self.mul_table == 1)
        table[rows] = cols
        return table

    @lru_cache(maxsize=None)  # noqa: B019
    def power_table(self, e: int) -> np.ndarray:
        """a ** e for every element a (with 0 ** e = 0 for e > 0)."""
        self._check_table_size()
        values = [self.pow(a, e) if a else int(e == 0) for a in range(self.order)]
        return np.array(values, dtype=np.int32)

    def frobenius_table(self, k: int = 1) -> np.ndarray:
        return self.power_table(self.p ** (k % self.n))

    @lru_cache(maxsize=None)  # noqa: B019
    def trace_table(self, target_degree: int) -> np.ndarray:
        """Tr to GF(p^target_degree) for every element, as indices of this field."""
        if target_degree < 1 or self.n % target_degree:
            raise NotASubfield(f"GF({self.p}^{target_degree}) is not a subfield of {self}")
        total = np.arange(self.order, dtype=np.int32)
        conj = total
        step = self.frobenius_table(target_degree)
        for _ in range(self.n // target_degree - 1):
            conj = step[conj]
            total = self.add_table[total, conj]
        return total

    @cached_property
    def square_class_table(self) -> np.ndarray:
        """0 for zero, 1 for nonzero squares, -1 for nonsquares (odd order only)."""
        if self.p == 2:
            raise EvenCharacteristic(f"Square classes are undefined in {self}")
        half = self.power_table((self.order - 1) // 2)
        table = np.where(half == 1, 1, -1).astype(np.int8)
        table[0] = 0
        return table


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec, stored as its canonical index."""

    value: int
    field: FieldSpec

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def _other(self, other: Union["FieldElement", int]) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise WrongField(f"Cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.constant(other)
        return NotImplemented

    def __add__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.field.sub(self._other(other), self.value), self.field)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.neg(self.value), self.field)

    def __mul__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(
            self.field.mul(self.value, self.field.inv(self._other(other))), self.field
        )

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def frobenius(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.field.frobenius(self.value, k), self.field)

    def __repr__(self) -> str:
        return f"{list(self.coeffs)}@GF({self.field.order})"


@lru_cache(maxsize=None)
def _create(p: int, n: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if modulus is None:
        if n == 1:
            modulus = (0, 1)
        elif (p, n) in DEFAULT_MODULI:
            modulus = DEFAULT_MODULI[(p, n)]
        else:
            modulus = find_irreducible(p, n)
            logger.info(f"GF({p}^{n}): no default modulus, using {format_modulus(modulus)}")
    else:
        if len(modulus) != n + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
            raise UnsupportedParameters(
                f"Modulus {list(modulus)} is not a monic degree-{n} polynomial over GF({p})"
            )
        if not is_irreducible(p, modulus):
            raise ReducibleModulus(f"{format_modulus(modulus)} factors over GF({p})")
    return FieldSpec(p, n, modulus)


def field_create(p: int, n: int = 1, modulus: tuple[int, ...] | list[int] | None = None) -> FieldSpec:
    """Create GF(p^n).

    Args:
        p: Prime characteristic
        n: Extension degree (>= 1)
        modulus: Optional monic degree-n polynomial, coefficients low-to-high.
            When omitted, the built-in default table is used, and otherwise the
            lexicographically smallest monic irreducible polynomial.

    Returns:
        The shared FieldSpec for these parameters

    Raises:
        NonPrimeCharacteristic: p is not prime
        ReducibleModulus: the supplied modulus factors over GF(p)
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if n < 1:
        raise UnsupportedParameters(f"Extension degree must be >= 1, got {n}")
    if p**n > MAX_ORDER:
        raise UnsupportedParameters(f"GF({p}^{n}) exceeds the supported order {MAX_ORDER}")
    return _create(p, n, tuple(modulus) if modulus is not None else None)


def is_square(x: FieldElement) -> SquareClass:
    """Square class of x in a field of odd order."""
    field = x.field
    if field.p == 2:
        raise EvenCharacteristic(f"Square classes are undefined in {field}")
    if x.value == 0:
        return SquareClass.ZERO
    half = field.pow(x.value, (field.order - 1) // 2)
    return SquareClass.SQUARE if half == 1 else SquareClass.NONSQUARE


def primitive_element(field: FieldSpec) -> FieldElement:
    """The deterministic primitive element of field (cached on the FieldSpec)."""
    return FieldElement(field.primitive, field)
