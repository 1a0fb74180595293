"""
Finite fields with an involution.

A FieldSpec wraps a `galois` field class together with the involution the
Hermitian geometry uses: the identity (Case O, orthogonal geometry) or the
Frobenius map x -> x^(p^(m/2)) (Case U, unitary geometry). Elements are 0-d
`galois.FieldArray` values; matrices are 2-d FieldArrays of the same class.
"""

import enum
import functools
import itertools
import logging
from dataclasses import dataclass

import galois
import numpy as np

from .errors import (
    CharTwoRejected,
    DenominatorVanishes,
    InvalidInputError,
    InvolutionUnavailable,
    NotPrime,
    ReduciblePolynomial,
)

logger = logging.getLogger(__name__)

# Square roots and norm equations are solved from a lookup table up to this
# field order, and through the multiplicative generator above it.
EXHAUSTIVE_LIMIT = 10 ** 4


class Involution(str, enum.Enum):
    IDENTITY = 'identity'
    FROBENIUS = 'frobenius'


class SquareClass(str, enum.Enum):
    ZERO = 'zero'
    SQUARE = 'square'
    NONSQUARE = 'nonsquare'

    def times(self, other):
        """Multiply square classes: an order-2 group with zero absorbing."""
        if SquareClass.ZERO in (self, other):
            return SquareClass.ZERO
        if self == other:
            return SquareClass.SQUARE
        return SquareClass.NONSQUARE


@functools.lru_cache(maxsize=None)
def _galois_field(p, m, modulus):
    if m == 1:
        return galois.GF(p)
    prime_field = galois.GF(p)
    # galois wants coefficients highest degree first
    poly = galois.Poly(list(reversed(modulus)), field=prime_field)
    return galois.GF(p ** m, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldSpec:
    """An odd-characteristic field F_{p^m} with a fixed involution."""

    p: int
    m: int
    modulus: tuple
    involution: Involution

    @property
    def GF(self):
        return _galois_field(self.p, self.m, self.modulus)

    @property
    def order(self):
        return self.p ** self.m

    @property
    def is_unitary(self):
        return self.involution == Involution.FROBENIUS

    @property
    def case(self):
        return 'U' if self.is_unitary else 'O'

    @property
    def frobenius_exponent(self):
        """q with x^sigma = x^q; the order of the fixed field F_0 in Case U."""
        return self.p ** (self.m // 2)

    @property
    def fixed_order(self):
        return self.frobenius_exponent if self.is_unitary else self.order

    @property
    def zero(self):
        return self.GF(0)

    @property
    def one(self):
        return self.GF(1)

    def element(self, value):
        """Build an element from an int or a little-endian coefficient list."""
        return self.GF(self.element_int(value))

    def element_int(self, value):
        if isinstance(value, (list, tuple)):
            if len(value) > self.m:
                raise InvalidInputError(
                    f"element {list(value)} has more than {self.m} coefficients")
            return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(value))
        if isinstance(value, (bool, float)) or not isinstance(value, (int, np.integer)):
            raise InvalidInputError(f"cannot read field element from {value!r}")
        # bare integers are prime-subfield constants
        return int(value) % self.p

    def embed(self, n):
        """Image of the integer n under Z -> F."""
        return self.GF(int(n) % self.p)

    def matrix(self, rows):
        """Build a 2-d FieldArray from nested lists of encoded elements."""
        ints = [[self.element_int(v) for v in row] for row in rows]
        if not ints or not ints[0]:
            raise InvalidInputError("matrix must have at least one row and one column")
        if any(len(row) != len(ints[0]) for row in ints):
            raise InvalidInputError("matrix rows have different lengths")
        return self.GF(np.array(ints, dtype=np.int64))

    def encode(self, x):
        """Inverse of element(): bare int for prime fields, else digit list."""
        value = int(x)
        if self.m == 1:
            return value
        return [(value // self.p ** i) % self.p for i in range(self.m)]

    def canonical_key(self, x):
        return _digits(int(x), self.p, self.m)

    def __str__(self):
        return f"F_{self.order} ({self.involution.value})"


def _digits(value, p, m):
    return tuple((value // p ** i) % p for i in range(m))


def _is_irreducible(p, coeffs):
    """Trial division by every monic polynomial of degree at most m/2."""
    prime_field = galois.GF(p)
    f = galois.Poly(list(reversed(coeffs)), field=prime_field)
    zero = galois.Poly.Zero(field=prime_field)
    degree = len(coeffs) - 1
    for d in range(1, degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = galois.Poly([1, *tail], field=prime_field)
            if f % divisor == zero:
                return False
    return True


def field_make(p, m=1, modulus=None, involution=Involution.IDENTITY):
    """Validate and build a FieldSpec.

    Args:
        p: Odd prime characteristic.
        m: Extension degree.
        modulus: Little-endian coefficients of a monic irreducible polynomial
            of degree m over Z_p; ignored when m == 1.
        involution: 'identity' or 'frobenius' (the latter needs m even).

    Returns:
        The FieldSpec.

    Raises:
        CharTwoRejected, NotPrime, ReduciblePolynomial, InvolutionUnavailable,
        InvalidInputError for malformed arguments.
    """
    try:
        p, m = int(p), int(m)
        involution = Involution(involution)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"bad field description: {e}") from e

    if p == 2:
        raise CharTwoRejected("characteristic 2 is not supported")
    if p < 2 or not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise InvalidInputError(f"extension degree must be at least 1, got {m}")
    if involution == Involution.FROBENIUS and m % 2:
        raise InvolutionUnavailable(f"frobenius involution needs an even degree, got {m}")

    if m == 1:
        spec = FieldSpec(p, 1, (), involution)
        logger.debug("field_make -> %s", spec)
        return spec

    if not modulus:
        raise InvalidInputError(f"a modulus of degree {m} is required")
    coeffs = tuple(int(c) % p for c in modulus)
    if len(coeffs) != m + 1:
        raise InvalidInputError(f"modulus must have {m + 1} coefficients, got {len(coeffs)}")
    if coeffs[-1] != 1:
        raise InvalidInputError("modulus must be monic")
    if not _is_irreducible(p, coeffs):
        raise ReduciblePolynomial(f"modulus {list(coeffs)} is reducible over Z_{p}")

    spec = FieldSpec(p, m, coeffs, involution)
    logger.debug("field_make -> %s", spec)
    return spec


def involve(field, x):
    """x^sigma, elementwise for arrays."""
    if not field.is_unitary:
        return x
    return x ** field.frobenius_exponent


def is_fixed(field, x):
    return bool(np.all(involve(field, x) == x))


@functools.lru_cache(maxsize=None)
def canonical_elements(field):
    """Element integers sorted by the little-endian coefficient order."""
    return tuple(sorted(range(field.order), key=lambda v: _digits(v, field.p, field.m)))


@functools.lru_cache(maxsize=None)
def _root_table(field, plain):
    ordered = canonical_elements(field)
    values = field.GF(np.array(ordered, dtype=np.int64))
    if plain or not field.is_unitary:
        images = values * values
    else:
        images = values ** (field.frobenius_exponent + 1)
    table = {}
    for root, image in zip(ordered, images.view(np.ndarray).tolist()):
        table.setdefault(int(image), root)
    return table


def _root_by_generator(field, x, plain):
    if plain or not field.is_unitary:
        if not bool(x.is_square()):
            return None
        r = np.sqrt(x)
        return min((r, -r), key=field.canonical_key)
    e = field.frobenius_exponent + 1
    k = int(x.log())
    if k % e:
        return None
    w = field.GF.primitive_element
    r0 = w ** (k // e)
    u = w ** (field.frobenius_exponent - 1)
    return min((r0 * u ** i for i in range(e)), key=field.canonical_key)


def sqrt_or_none(field, x, plain=False):
    """Canonical root of x, or None.

    By default this solves the Hermitian square r^sigma * r = x, which is the
    plain square root in Case O. With plain=True it solves r * r = x in either
    case. The root returned is the first in canonical element order.
    """
    x = field.GF(int(x))
    if int(x) == 0:
        return field.zero
    if not plain and field.is_unitary and not is_fixed(field, x):
        return None
    if field.order <= EXHAUSTIVE_LIMIT:
        root = _root_table(field, bool(plain)).get(int(x))
        return None if root is None else field.GF(root)
    return _root_by_generator(field, x, plain)


def norm_solve(field, b):
    """Canonical alpha with alpha^sigma * alpha = b; None when unsolvable."""
    b = field.GF(int(b))
    if not is_fixed(field, b):
        return None
    return sqrt_or_none(field, b)


def square_class(field, x):
    if int(x) == 0:
        return SquareClass.ZERO
    return SquareClass.NONSQUARE if sqrt_or_none(field, x) is None else SquareClass.SQUARE


@functools.lru_cache(maxsize=None)
def canonical_nonsquare(field):
    """Smallest nonsquare of F_0 in canonical order; None in Case U."""
    if field.is_unitary:
        return None
    for value in canonical_elements(field):
        if value and square_class(field, field.GF(value)) == SquareClass.NONSQUARE:
            return field.GF(value)
    return None


@functools.lru_cache(maxsize=None)
def _unimodular_ints(field):
    ordered = canonical_elements(field)
    values = field.GF(np.array(ordered, dtype=np.int64))
    norms = values * involve(field, values)
    return tuple(v for v, n in zip(ordered, norms.view(np.ndarray).tolist()) if n == 1)


def unimodular_elements(field):
    """All t with t * t^sigma = 1, in canonical order."""
    return [field.GF(v) for v in _unimodular_ints(field)]


def embed_rational(field, num, den):
    """(num * 1) / (den * 1) in the field."""
    if int(den) % field.p == 0:
        raise DenominatorVanishes(f"{den} vanishes in characteristic {field.p}")
    return field.embed(num) / field.embed(den)


def as_element(field, x):
    """Coerce an int, coefficient list or FieldArray scalar into the field."""
    if isinstance(x, galois.FieldArray):
        return field.GF(int(x))
    return field.element(x)
