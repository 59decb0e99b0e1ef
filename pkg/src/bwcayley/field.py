"""Exact ground-field arithmetic: GF(p) for prime p, and the rationals.

Field elements are plain Python values (int residues in [0, p) for GF(p),
`fractions.Fraction` for the rationals), operated on through a field object.
Everything is exact; no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Union

Element = Union[int, Fraction]


class FieldError(Exception):
    pass


class MalformedSpec(FieldError):
    """Field spec string does not match ``gf:<p>`` or ``q``."""


class NonPrimeModulus(FieldError):
    """Requested GF(p) with composite or too-small p."""


class InfiniteField(FieldError):
    """Operation requires a finite field."""


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (desk-scale moduli)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def icbrt(n: int) -> int:
    """Floor of the real cube root of a nonnegative integer, exactly."""
    if n < 0:
        raise ValueError("icbrt expects n >= 0")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)  # upper bound for the cube root
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


class PrimeField:
    """GF(p), p prime. Elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        self.p = p
        self._cube_table: Optional[dict] = None

    # --- structure ---
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    is_finite = True

    def spec_string(self) -> str:
        return f"gf:{self.p}"

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    # --- arithmetic ---
    def of(self, n) -> int:
        """Coerce an integer (or Fraction with invertible denominator) into GF(p)."""
        if isinstance(n, Fraction):
            return self.div(n.numerator % self.p, n.denominator % self.p)
        return n % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class Rationals:
    """The field of rational numbers. Elements are `fractions.Fraction`.

    Fraction keeps every value reduced with a positive denominator, so
    canonical-form invariants hold for free.
    """

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def order(self) -> None:
        return None

    is_finite = False

    def spec_string(self) -> str:
        return "q"

    def elements(self) -> Iterator[Fraction]:
        raise InfiniteField("cannot enumerate the rationals")

    def of(self, n) -> Fraction:
        return Fraction(n)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1) / a  # Fraction even for plain-int input

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise ZeroDivisionError("division by 0")
        return Fraction(a) / b

    def pow(self, a: Fraction, e: int) -> Fraction:
        if e < 0:
            return Fraction(1) / (Fraction(a) ** -e)
        return Fraction(a) ** e

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Rationals")

    def __repr__(self) -> str:
        return "Rationals()"


Field = Union[PrimeField, Rationals]

QQ = Rationals()


def parse_field_spec(text: str) -> Field:
    """Parse ``gf:<p>`` into GF(p) or ``q`` into the rationals."""
    text = text.strip().lower()
    if text == "q":
        return Rationals()
    if text.startswith("gf:"):
        body = text[3:]
        if not body.isdigit():
            raise MalformedSpec(f"bad field spec {text!r}")
        return PrimeField(int(body))
    raise MalformedSpec(f"bad field spec {text!r}")


def _cube_table(F: PrimeField) -> dict:
    if F._cube_table is None:
        table: dict = {a: [] for a in range(F.p)}
        for s in range(F.p):
            table[pow(s, 3, F.p)].append(s)
        F._cube_table = table
    return F._cube_table


def cube_roots(a: Element, F: Field) -> set:
    """All s in the field with s**3 == a.

    Over GF(p) by one exhaustive pass (cached per field). Over the rationals
    a reduced fraction is a cube exactly when numerator and denominator are
    integer cubes, and then the root is unique (cubing is injective on Q).
    """
    if isinstance(F, PrimeField):
        return set(_cube_table(F)[a % F.p])
    a = Fraction(a)
    num, den = a.numerator, a.denominator
    rn = icbrt(abs(num))
    rd = icbrt(den)
    if rn**3 == abs(num) and rd**3 == den:
        root = Fraction(-rn if num < 0 else rn, rd)
        return {root}
    return set()


def nontrivial_cube_root_of_unity(F: Field) -> Optional[Element]:
    """Some w != 1 with w**3 == 1, if the field has one.

    Searches the roots of X^2 + X + 1. Over GF(3) its only root is 1, which
    is excluded, and X^2 + X + 1 has no rational root (discriminant -3), so
    the result is None in both of those cases.
    """
    if isinstance(F, PrimeField):
        for x in range(2, F.p):
            if (x * x + x + 1) % F.p == 0:
                return x
        return None
    return None


@dataclass(frozen=True)
class CubeRootProfile:
    """How cubing behaves on the field; drives the spread classification."""

    characteristic: int
    cubing_injective: bool
    cubing_surjective: bool
    nontrivial_unity_root: Optional[Element]


def cube_root_profile(F: Field) -> CubeRootProfile:
    """Compute the cube-root profile by direct inspection of the cubing map.

    For GF(p) injectivity and surjectivity are read off the exhaustive cube
    table rather than from the p mod 3 shortcut, so the two can be
    cross-checked against each other in tests.
    """
    if isinstance(F, PrimeField):
        table = _cube_table(F)
        image = {a for a, roots in table.items() if roots}
        injective = all(len(roots) <= 1 for roots in table.values())
        surjective = len(image) == F.p
        return CubeRootProfile(
            characteristic=F.p,
            cubing_injective=injective,
            cubing_surjective=surjective,
            nontrivial_unity_root=nontrivial_cube_root_of_unity(F),
        )
    # Cubing is strictly monotone on Q, hence injective; 2 has no rational
    # cube root, hence not surjective.
    return CubeRootProfile(0, True, False, None)


class SpreadRegime(Enum):
    """Which of the classification's four cases the ground field falls in."""

    CHAR3 = "Char3"
    SPREAD_AND_COVERING = "SpreadAndCovering"
    MAXIMAL_PARTIAL_NOT_COVERING = "MaximalPartialNotCovering"
    NOT_PARTIAL_SPREAD = "NotPartialSpread"


def classify_field(F: Field) -> SpreadRegime:
    """Spread regime of the osculating-tangent line set over F."""
    if F.characteristic == 3:
        return SpreadRegime.CHAR3
    profile = cube_root_profile(F)
    if profile.nontrivial_unity_root is not None:
        return SpreadRegime.NOT_PARTIAL_SPREAD
    if profile.cubing_surjective:
        return SpreadRegime.SPREAD_AND_COVERING
    return SpreadRegime.MAXIMAL_PARTIAL_NOT_COVERING
