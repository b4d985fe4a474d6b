"""The polarised Heisenberg group.

Elements are triples (s, x, y) with the product

    (s, x, y) * (s', x', y') = (s + s' + x*y', x + x', y + y').

The centre is {(s, 0, 0)}.  Four subgroups drive everything downstream:
the centre, the two maximal abelian subgroups {(s, 0, y)} and {(s, x, 0)},
and the discrete lattice subgroup {(s, n, k) : n, k integers}.  For each
of them this module provides the projection onto the homogeneous space,
a section back into the group, the remainder factor, and the character.
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

from .errors import MembershipError
from .numerics import TWO_PI, int_frac

MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class HeisenbergElement:
    s: float
    x: float
    y: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.s, self.x, self.y)


class SubgroupTag(enum.Enum):
    CENTRE = "centre"
    ABELIAN_X = "abelian_x"
    ABELIAN_Y = "abelian_y"
    LATTICE = "lattice"


@dataclass(frozen=True)
class Decomposition:
    """g = section(projection) * remainder, remainder in the tagged subgroup."""
    projection: tuple[float, ...]
    section: HeisenbergElement
    remainder: HeisenbergElement


def identity() -> HeisenbergElement:
    return HeisenbergElement(0.0, 0.0, 0.0)


def multiply(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(a.s + b.s + a.x * b.y, a.x + b.x, a.y + b.y)


def inverse(g: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(-g.s + g.x * g.y, -g.x, -g.y)


def commutator(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    return multiply(multiply(a, b), inverse(multiply(b, a)))


def swap_automorphism(g: HeisenbergElement) -> HeisenbergElement:
    """The automorphism (s, x, y) -> (s - x*y, -y, x) exchanging the two
    abelian subgroups; used to pass between coordinate and momentum pictures."""
    return HeisenbergElement(g.s - g.x * g.y, -g.y, g.x)


def decompose(g: HeisenbergElement, tag: SubgroupTag) -> Decomposition:
    if tag is SubgroupTag.CENTRE:
        proj = (g.x, g.y)
        sec = HeisenbergElement(0.0, g.x, g.y)
        rem = HeisenbergElement(g.s, 0.0, 0.0)
    elif tag is SubgroupTag.ABELIAN_X:
        proj = (g.x,)
        sec = HeisenbergElement(0.0, g.x, 0.0)
        rem = HeisenbergElement(g.s - g.x * g.y, 0.0, g.y)
    elif tag is SubgroupTag.ABELIAN_Y:
        proj = (g.y,)
        sec = HeisenbergElement(0.0, 0.0, g.y)
        rem = HeisenbergElement(g.s, g.x, 0.0)
    elif tag is SubgroupTag.LATTICE:
        nx, fx = int_frac(g.x)
        ny, fy = int_frac(g.y)
        proj = (fx, fy)
        sec = HeisenbergElement(0.0, fx, fy)
        rem = HeisenbergElement(g.s - fx * ny, float(nx), float(ny))
    else:  # pragma: no cover
        raise ValueError(f"unknown subgroup tag {tag!r}")
    return Decomposition(proj, sec, rem)


def in_subgroup(h: HeisenbergElement, tag: SubgroupTag,
                tol: float = MEMBERSHIP_TOL) -> bool:
    if tag is SubgroupTag.CENTRE:
        return abs(h.x) <= tol and abs(h.y) <= tol
    if tag is SubgroupTag.ABELIAN_X:
        return abs(h.x) <= tol
    if tag is SubgroupTag.ABELIAN_Y:
        return abs(h.y) <= tol
    if tag is SubgroupTag.LATTICE:
        return (abs(h.x - round(h.x)) <= tol and abs(h.y - round(h.y)) <= tol)
    raise ValueError(f"unknown subgroup tag {tag!r}")  # pragma: no cover


def character(tag: SubgroupTag, param: float, h: HeisenbergElement) -> complex:
    """chi(h) = e^{2*pi*i*param*s} on the tagged subgroup.

    `param` is the Planck parameter hbar for the continuous subgroups and the
    integer quasi-periodicity index m for the lattice.  Raises
    :class:`MembershipError` when h lies outside the subgroup.
    """
    if not in_subgroup(h, tag):
        raise MembershipError(
            f"{h.as_tuple()} is not a member of subgroup {tag.value}")
    if tag is SubgroupTag.LATTICE and abs(param - round(param)) > MEMBERSHIP_TOL:
        raise MembershipError("lattice character index must be an integer")
    return cmath.exp(1j * TWO_PI * param * h.s)
