"""Points, planes and lines of PG(3,K); Plücker coordinates; enumeration.

Homogeneous coordinate tuples are always kept in canonical form (first
nonzero coordinate scaled to 1), which makes them unique, hashable keys.
Points are column 4-tuples, planes are coefficient row 4-tuples, and Plücker
sextuples use the coordinate order (y01, y02, y03, y12, y13, y23) with
y_ij = p_i*q_j - p_j*q_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, Iterator, List, Sequence, Tuple

from .field import Field, InfiniteField
from .linalg import nullspace

Vector = Tuple            # canonical homogeneous tuple, any length
ProjPoint = Tuple         # 4-tuple
ProjPlane = Tuple         # 4-tuple of plane coefficients
KleinPoint = Tuple        # 6-tuple


class GeometryError(Exception):
    pass


class CoincidentPoints(GeometryError):
    """Two supposedly distinct projective points coincide."""


def canonicalize(vec: Sequence, F: Field) -> Vector:
    """Scale a homogeneous tuple so its first nonzero coordinate is 1."""
    vec = tuple(F.of(v) if isinstance(v, int) else v for v in vec)
    for v in vec:
        if v != F.zero:
            inv = F.inv(v)
            return tuple(F.mul(inv, w) for w in vec)
    raise GeometryError("zero vector has no projective class")


def primitive_int_vector(vec: Sequence[Fraction]) -> Tuple[int, ...]:
    """Integer representative of a rational homogeneous tuple.

    Clears denominators, divides by the content, and makes the first nonzero
    entry positive. Used for compact witnesses in reports.
    """
    fracs = [Fraction(v) for v in vec]
    denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    content = 0
    for v in ints:
        content = gcd(content, abs(v))
    if content > 1:
        ints = [v // content for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


def plucker(p: Sequence, q: Sequence, F: Field) -> KleinPoint:
    """Canonical Plücker sextuple of the line joining two distinct points."""
    p0, p1, p2, p3 = p
    q0, q1, q2, q3 = q
    mul, sub = F.mul, F.sub
    y = (
        sub(mul(p0, q1), mul(p1, q0)),
        sub(mul(p0, q2), mul(p2, q0)),
        sub(mul(p0, q3), mul(p3, q0)),
        sub(mul(p1, q2), mul(p2, q1)),
        sub(mul(p1, q3), mul(p3, q1)),
        sub(mul(p2, q3), mul(p3, q2)),
    )
    if all(v == F.zero for v in y):
        raise CoincidentPoints(f"points {p} and {q} span no line")
    return canonicalize(y, F)


def quadric_value(y: Sequence, F: Field):
    """The Klein quadric form y01*y23 - y02*y13 + y03*y12."""
    mul = F.mul
    return F.add(F.sub(mul(y[0], y[5]), mul(y[1], y[4])), mul(y[2], y[3]))


def quadric_polarization(y: Sequence, z: Sequence, F: Field):
    """Bilinear polarization of the quadric form on two sextuples."""
    mul = F.mul
    acc = F.zero
    for i, j in ((0, 5), (5, 0), (2, 3), (3, 2)):
        acc = F.add(acc, mul(y[i], z[j]))
    for i, j in ((1, 4), (4, 1)):
        acc = F.sub(acc, mul(y[i], z[j]))
    return acc


@dataclass(frozen=True)
class Line:
    """A line of PG(3,K): an ordered spanning pair plus its Plücker sextuple.

    Equality and hashing use only the canonical Plücker coordinates, so lines
    built from different spanning pairs compare equal.
    """

    p: ProjPoint
    q: ProjPoint
    plucker: KleinPoint = dc_field(compare=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Line) and self.plucker == other.plucker

    def __hash__(self) -> int:
        return hash(self.plucker)

    def __repr__(self) -> str:
        return f"Line(plucker={self.plucker})"


def line_through(p: Sequence, q: Sequence, F: Field) -> Line:
    p = canonicalize(p, F)
    q = canonicalize(q, F)
    if p == q:
        raise CoincidentPoints(f"{p} given twice")
    return Line(p=p, q=q, plucker=plucker(p, q, F))


def dedup_lines(lines: Iterable[Line]) -> List[Line]:
    """Order-preserving dedup by canonical Plücker sextuple."""
    seen = set()
    out = []
    for l in lines:
        if l.plucker not in seen:
            seen.add(l.plucker)
            out.append(l)
    return out


def _det3(m, F: Field):
    mul, sub = F.mul, F.sub
    a = mul(m[0][0], sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
    b = mul(m[0][1], sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])))
    c = mul(m[0][2], sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])))
    return F.add(F.sub(a, b), c)


def det4(m, F: Field):
    """Determinant of a 4x4 matrix by cofactor expansion along the first row."""
    total = F.zero
    for j in range(4):
        if m[0][j] == F.zero:
            continue
        minor = [[row[k] for k in range(4) if k != j] for row in m[1:]]
        term = F.mul(m[0][j], _det3(minor, F))
        total = F.add(total, term) if j % 2 == 0 else F.sub(total, term)
    return total


def lines_skew(l1: Line, l2: Line, F: Field) -> bool:
    """Skewness via the 4x4 determinant of the four spanning points."""
    return det4([list(l1.p), list(l1.q), list(l2.p), list(l2.q)], F) != F.zero


def lines_skew_plucker(l1: Line, l2: Line, F: Field) -> bool:
    """Skewness via the polarization of the Klein quadric form.

    Independent route from `lines_skew`; the two must always agree.
    """
    return quadric_polarization(l1.plucker, l2.plucker, F) != F.zero


def incidence(x: Sequence, l: Line, F: Field) -> bool:
    """Whether the point lies on the line."""
    x = canonicalize(x, F)
    if x == l.p:
        return True
    return plucker(l.p, x, F) == l.plucker


def point_in_plane(x: Sequence, e: Sequence, F: Field) -> bool:
    acc = F.zero
    for xi, ei in zip(x, e):
        acc = F.add(acc, F.mul(xi, ei))
    return acc == F.zero


def line_in_plane(l: Line, e: Sequence, F: Field) -> bool:
    return point_in_plane(l.p, e, F) and point_in_plane(l.q, e, F)


def intersect_planes(e1: Sequence, e2: Sequence, F: Field) -> Line:
    """The line common to two distinct planes."""
    basis = nullspace([list(e1), list(e2)], 4, F)
    if len(basis) != 2:
        raise GeometryError("planes coincide; no unique intersection line")
    return line_through(basis[0], basis[1], F)


def _canonical_tuples(length: int, F: Field) -> Iterator[Vector]:
    """All canonical homogeneous tuples, in lexicographic coordinate order."""
    if not F.is_finite:
        raise InfiniteField("enumeration needs a finite field")
    elems = list(F.elements())
    for lead in range(length - 1, -1, -1):
        prefix = (F.zero,) * lead + (F.one,)
        for tail in product(elems, repeat=length - 1 - lead):
            yield prefix + tail


def enumerate_points(F: Field) -> List[ProjPoint]:
    return list(_canonical_tuples(4, F))


def enumerate_planes(F: Field) -> List[ProjPlane]:
    return list(_canonical_tuples(4, F))


def enumerate_pg5_points(F: Field) -> Iterator[KleinPoint]:
    return _canonical_tuples(6, F)


def enumerate_lines(F: Field) -> List[Line]:
    """All (q²+1)(q²+q+1) lines of PG(3,q), deduplicated, stable order."""
    points = enumerate_points(F)
    lines: List[Line] = []
    seen = set()
    for i, p in enumerate(points):
        for q in points[i + 1 :]:
            y = plucker(p, q, F)
            if y not in seen:
                seen.add(y)
                lines.append(Line(p=p, q=q, plucker=y))
    return lines
