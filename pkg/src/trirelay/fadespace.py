"""Enumeration of singular fade subspaces.

A fade triple (H_A, H_B, H_C) collapses the relay's 64-point effective
constellation exactly when it is orthogonal to some nonzero vector of
point differences.  Two difference vectors describe the same subspace iff
they are proportional over C, so the subspaces are the proportionality
classes of the 728 nonzero difference vectors.  All class arithmetic here
is exact (Gaussian integers / reduced Gaussian rationals); no tolerances.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .constellation import DiffClass, GaussianInt, classify_diff, diff_set

CASE_ONE_ZERO = 2  # zero components in a class with one active link
CASE_TWO_ZERO = 1
CASE_ALL_ACTIVE = 0


@dataclass(frozen=True)
class DiffVector:
    """A length-3 vector of 4-PSK point differences, not all zero."""

    d_a: GaussianInt
    d_b: GaussianInt
    d_c: GaussianInt

    def __post_init__(self) -> None:
        comps = (self.d_a, self.d_b, self.d_c)
        for d in comps:
            if d not in diff_set():
                raise ValueError(f"component is not a 4-PSK difference: {d}")
        if all(d.is_zero() for d in comps):
            raise ValueError("difference vector must have a nonzero component")

    @property
    def components(self) -> tuple[GaussianInt, GaussianInt, GaussianInt]:
        return (self.d_a, self.d_b, self.d_c)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(x for d in self.components for x in (d.re, d.im))

    def zero_positions(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.components) if d.is_zero())

    def adjacent_count(self) -> int:
        return sum(1 for d in self.components if not d.is_zero() and classify_diff(d) is DiffClass.ADJACENT)

    def to_complex(self) -> tuple[complex, complex, complex]:
        return tuple(d.to_complex() for d in self.components)

    def __str__(self) -> str:
        return "[" + ", ".join(str(d) for d in self.components) + "]"


def proportional(v: DiffVector, w: DiffVector) -> bool:
    """True iff v and w span the same line over C.

    Exact test: all three 2x2 cross products of the component pairs vanish.
    """
    va, vb, vc = v.components
    wa, wb, wc = w.components
    return va * wb == vb * wa and va * wc == vc * wa and vb * wc == vc * wb


@dataclass(frozen=True)
class SubspaceClass:
    """One singular fade subspace: a proportionality class of difference vectors.

    ``case`` follows the zero pattern of the members: 1 = two zero
    components, 2 = one zero component, 3 = all components nonzero.  Only
    case-3 classes are removable: a zero component would force two cells
    sharing that coordinate into one cluster, which no valid relay map
    allows.
    """

    id: int
    canonical: DiffVector
    members: tuple[DiffVector, ...]
    case: int
    zero_positions: tuple[int, ...]
    adjacent_count: int
    removable: bool

    def __str__(self) -> str:
        return f"class {self.id}: {self.canonical} (case {self.case}, {len(self.members)} members)"


def _projective_key(v: DiffVector) -> tuple:
    """Exact invariant shared by proportional vectors and by nothing else.

    Normalizes by the first nonzero component: each ratio d_k / d_p is the
    reduced Gaussian rational (d_k * conj(d_p)) / |d_p|^2.
    """
    comps = v.components
    pivot = next(d for d in comps if not d.is_zero())
    den = pivot.norm2()
    key = []
    for d in comps:
        num = d * pivot.conjugate()
        g = gcd(gcd(abs(num.re), abs(num.im)), den)
        key.append((num.re // g, num.im // g, den // g))
    return tuple(key)


def all_difference_vectors() -> list[DiffVector]:
    """The 728 nonzero vectors with 4-PSK-difference components, in sort-key order."""
    nonneg = sorted(diff_set(), key=lambda d: (d.re, d.im))
    vecs = [
        DiffVector(a, b, c)
        for a, b, c in itertools.product(nonneg, repeat=3)
        if not (a.is_zero() and b.is_zero() and c.is_zero())
    ]
    vecs.sort(key=DiffVector.sort_key)
    return vecs


@lru_cache(maxsize=1)
def enumerate_classes() -> tuple[SubspaceClass, ...]:
    """Partition the 728 difference vectors into subspace classes.

    Ids run 0..150 in lexicographic order of the canonical (smallest)
    member.  Grouping uses the exact projective key; tests cross-check it
    against pairwise proportional().
    """
    groups: dict[tuple, list[DiffVector]] = {}
    for v in all_difference_vectors():
        groups.setdefault(_projective_key(v), []).append(v)

    classes = []
    for members in sorted(groups.values(), key=lambda ms: ms[0].sort_key()):
        canon = members[0]  # members arrive in sort-key order
        zeros = canon.zero_positions()
        case = {CASE_ONE_ZERO: 1, CASE_TWO_ZERO: 2, CASE_ALL_ACTIVE: 3}[len(zeros)]
        classes.append(
            SubspaceClass(
                id=len(classes),
                canonical=canon,
                members=tuple(members),
                case=case,
                zero_positions=zeros,
                adjacent_count=max(m.adjacent_count() for m in members),
                removable=case == 3,
            )
        )
    return tuple(classes)


def class_by_id(class_id: int) -> SubspaceClass:
    classes = enumerate_classes()
    if not 0 <= class_id < len(classes):
        raise KeyError(f"no subspace class with id {class_id}")
    return classes[class_id]


def class_of(v: DiffVector) -> SubspaceClass:
    """The enumerated class containing v."""
    key = _projective_key(v)
    for cls in enumerate_classes():
        if _projective_key(cls.canonical) == key:
            return cls
    raise KeyError(f"no class contains {v}")  # unreachable for valid vectors


def canonical(v: DiffVector) -> DiffVector:
    """Lexicographically smallest member of v's proportionality class."""
    return class_of(v).canonical


def orbit_size(cls: SubspaceClass) -> int:
    return len(cls.members)


def is_removable(cls: SubspaceClass) -> bool:
    return cls.removable


def census(classes: tuple[SubspaceClass, ...] | None = None) -> dict[str, int]:
    """Counts per case and per case-3 adjacent-component subcase."""
    classes = enumerate_classes() if classes is None else classes
    counts = {
        "case1": sum(1 for c in classes if c.case == 1),
        "case2": sum(1 for c in classes if c.case == 2),
        "case3": sum(1 for c in classes if c.case == 3),
        "total": len(classes),
        "removable": sum(1 for c in classes if c.removable),
    }
    for k in (1, 2, 3):
        counts[f"case3_adjacent{k}"] = sum(
            1 for c in classes if c.case == 3 and c.adjacent_count == k
        )
    return counts
