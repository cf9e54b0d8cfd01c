"""Relay clustering maps as 4x4x4 label arrays.

A map assigns every transmit triple (x_A, x_B, x_C) a cluster label that
the relay broadcasts.  A node that knows its own symbol can recover the
other two iff no label repeats inside any axis-aligned 4x4 slice; maps
with that property are exactly the valid relay maps.  This module builds
such maps under co-clustering constraints that neutralize a chosen
singular fade subspace, using a greedy smallest-label completion.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .constellation import N_SYMBOLS, GaussianInt, diff_realizations
from .fadespace import DiffVector, SubspaceClass

SIDE = N_SYMBOLS
N_CELLS = SIDE**3
MIN_LABELS = SIDE**2
MAX_LABELS = SIDE**3
# Greedy completion has never needed more than this many labels over the
# full removable catalog; exceeding it is a regression, not an outcome.
MAX_COMPLETION_LABELS = 23


class Node(IntEnum):
    A = 0
    B = 1
    C = 2


class NonRemovableClassError(ValueError):
    """Raised for co-clustering constraints no valid map can satisfy."""


class LabelNotInSliceError(KeyError):
    """Raised when a label does not occur in the queried own-symbol slice."""


def cell_index(a: int, b: int, c: int) -> int:
    return (a * SIDE + b) * SIDE + c


def cell_coords(index: int) -> tuple[int, int, int]:
    a, rest = divmod(index, SIDE * SIDE)
    return (a, *divmod(rest, SIDE))


@dataclass(frozen=True)
class RelayMap:
    """Immutable 4x4x4 array of cluster labels 0..t-1.

    Axis order is (x_A, x_B, x_C).  Labels must form a contiguous range
    with every label used; slice distinctness is checked separately by
    exclusive_law_ok so that invalid candidates remain representable.
    """

    cells: np.ndarray
    t: int
    class_id: int | None = None
    canonical: DiffVector | None = None

    @staticmethod
    def from_cells(
        cells,
        class_id: int | None = None,
        canonical: DiffVector | None = None,
    ) -> "RelayMap":
        arr = np.asarray(cells, dtype=np.int64)
        if arr.shape != (SIDE, SIDE, SIDE):
            raise ValueError(f"map must be {SIDE}x{SIDE}x{SIDE}, got shape {arr.shape}")
        labels = np.unique(arr)
        t = int(arr.max()) + 1
        if arr.min() < 0 or len(labels) != t:
            raise ValueError("labels must form a contiguous range 0..t-1, all used")
        if not MIN_LABELS <= t <= MAX_LABELS:
            raise ValueError(f"label count {t} outside [{MIN_LABELS}, {MAX_LABELS}]")
        arr = arr.copy()
        arr.setflags(write=False)
        return RelayMap(cells=arr, t=t, class_id=class_id, canonical=canonical)

    def label(self, a: int, b: int, c: int) -> int:
        return int(self.cells[a, b, c])

    def slice_labels(self, node: Node, own: int) -> np.ndarray:
        """The 16 labels visible to ``node`` when its own symbol is ``own``.

        Flattened in index order of the two foreign symbols.
        """
        if node is Node.A:
            return self.cells[own, :, :].reshape(-1)
        if node is Node.B:
            return self.cells[:, own, :].reshape(-1)
        return self.cells[:, :, own].reshape(-1)

    def to_json_dict(self) -> dict:
        canon = None
        if self.canonical is not None:
            canon = [[d.re, d.im] for d in self.canonical.components]
        return {
            "t": self.t,
            "cells": self.cells.tolist(),
            "class_id": self.class_id,
            "canonical": canon,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "RelayMap":
        try:
            cells = data["cells"]
            t = data["t"]
            class_id = data.get("class_id")
            canon_raw = data.get("canonical")
        except (TypeError, KeyError) as exc:
            raise ValueError(f"map file missing field: {exc}") from exc
        canonical = None
        if canon_raw is not None:
            canonical = DiffVector(*(GaussianInt(re, im) for re, im in canon_raw))
        m = RelayMap.from_cells(cells, class_id=class_id, canonical=canonical)
        if m.t != t:
            raise ValueError(f"declared t={t} but cells use {m.t} labels")
        return m


class CellPartition:
    """Union-find over the 64 map cells (path compression + union by size)."""

    def __init__(self) -> None:
        self._parent = list(range(N_CELLS))
        self._size = [1] * N_CELLS

    def find(self, x: int) -> int:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self._size[rx] < self._size[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        self._size[rx] += self._size[ry]

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def groups(self) -> list[tuple[int, ...]]:
        """All groups with at least two cells, each sorted, in first-cell order."""
        by_root: dict[int, list[int]] = {}
        for i in range(N_CELLS):
            by_root.setdefault(self.find(i), []).append(i)
        merged = [tuple(cells) for cells in by_root.values() if len(cells) > 1]
        merged.sort(key=lambda g: g[0])
        return merged


def exclusive_law_ok(m: RelayMap) -> bool:
    """Check that every fixed-a, fixed-b and fixed-c slice holds 16 distinct labels."""
    for i in range(SIDE):
        for sl in (m.cells[i, :, :], m.cells[:, i, :], m.cells[:, :, i]):
            if len(np.unique(sl)) != SIDE * SIDE:
                return False
    return True


def constraint_pairs(cls: SubspaceClass) -> list[tuple[int, int]]:
    """All cell pairs forced together to neutralize the class's subspace.

    For every member vector and every componentwise realization of it as
    an ordered difference of transmit triples, the two triples' cells must
    share a label.  Adjacent components contribute two realizations each,
    antipodal ones a single realization.
    """
    pairs = []
    for vec in cls.members:
        for xa, xa2 in diff_realizations(vec.d_a):
            for xb, xb2 in diff_realizations(vec.d_b):
                for xc, xc2 in diff_realizations(vec.d_c):
                    pairs.append((cell_index(xa, xb, xc), cell_index(xa2, xb2, xc2)))
    return pairs


def constraints_for(cls: SubspaceClass) -> CellPartition:
    """Co-clustering constraints for a removable subspace class."""
    if not cls.removable:
        raise NonRemovableClassError(
            f"class {cls.id} ({cls.canonical}) has a zero difference component; "
            "merging its cells would give two triples that agree in a known "
            "coordinate the same label, so no valid relay map can neutralize it"
        )
    part = CellPartition()
    for i, j in constraint_pairs(cls):
        part.union(i, j)
    return part


def _conflicts(cells: np.ndarray, a: int, b: int, c: int, label: int) -> bool:
    return (
        bool((cells[a, :, :] == label).any())
        or bool((cells[:, b, :] == label).any())
        or bool((cells[:, :, c] == label).any())
    )


def complete(
    constraints: CellPartition,
    class_id: int | None = None,
    canonical: DiffVector | None = None,
) -> RelayMap:
    """Fill a constrained array into a valid relay map, greedily.

    Constrained groups get labels 0, 1, ... in order of first appearance
    under a file-major (a, b, c) scan; every remaining cell then takes the
    smallest label absent from its three slices, in the same scan order.
    A fresh label never conflicts, so completion always succeeds.
    """
    cells = np.full((SIDE, SIDE, SIDE), -1, dtype=np.int64)
    group_label: dict[int, int] = {}
    for group in constraints.groups():
        label = len(group_label)
        group_label[group[0]] = label
        for idx in group:
            cells[cell_coords(idx)] = label

    for a in range(SIDE):
        for b in range(SIDE):
            for c in range(SIDE):
                if cells[a, b, c] >= 0:
                    continue
                label = 0
                while _conflicts(cells, a, b, c, label):
                    label += 1
                cells[a, b, c] = label

    return RelayMap.from_cells(cells, class_id=class_id, canonical=canonical)


def map_for_class(cls: SubspaceClass) -> RelayMap:
    """Constrained completion for one removable class, with its identity attached."""
    m = complete(constraints_for(cls), class_id=cls.id, canonical=cls.canonical)
    if m.t > MAX_COMPLETION_LABELS:
        raise RuntimeError(
            f"completion for class {cls.id} needed {m.t} labels, "
            f"above the {MAX_COMPLETION_LABELS}-label regression bound"
        )
    return m


def removes(m: RelayMap, cls: SubspaceClass) -> bool:
    """True iff the map honors every co-clustering constraint of the class.

    Classes with a zero difference component can never be removed by a
    slice-distinct map, so the check runs over the raw constraint pairs
    regardless of removability and simply reports the outcome.
    """
    flat = m.cells.reshape(-1)
    return all(flat[i] == flat[j] for i, j in constraint_pairs(cls))


def invert(m: RelayMap, node: Node, own: int, label: int) -> tuple[int, int]:
    """Recover the two foreign symbols from a label and the node's own symbol.

    Slice distinctness makes the occurrence unique; for t > 16 a label may
    be absent from the 16-cell slice, which raises LabelNotInSliceError.
    """
    if not 0 <= label < m.t:
        raise LabelNotInSliceError(f"label {label} out of range for t={m.t}")
    flat = m.slice_labels(node, own)
    hits = np.flatnonzero(flat == label)
    if hits.size == 0:
        raise LabelNotInSliceError(
            f"label {label} absent from node {node.name}'s slice for own symbol {own}"
        )
    return tuple(divmod(int(hits[0]), SIDE))


# Fixed baseline map: label(a, b, c) = 4*(b XOR a) + (c XOR a), written out
# as the literal table it is used as.
_XOR_CELLS = (
    ((0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11), (12, 13, 14, 15)),
    ((5, 4, 7, 6), (1, 0, 3, 2), (13, 12, 15, 14), (9, 8, 11, 10)),
    ((10, 11, 8, 9), (14, 15, 12, 13), (2, 3, 0, 1), (6, 7, 4, 5)),
    ((15, 14, 13, 12), (11, 10, 9, 8), (7, 6, 5, 4), (3, 2, 1, 0)),
)


def xor_map() -> RelayMap:
    """The fixed 16-label map used by the non-adaptive scheme."""
    return RelayMap.from_cells(_XOR_CELLS)


def random_valid_map(rng: np.random.Generator) -> RelayMap:
    """A random valid map: axis and label permutations of the baseline.

    Permuting the index values along each axis and relabeling preserve
    slice distinctness.
    """
    cells = np.asarray(_XOR_CELLS, dtype=np.int64)
    pa, pb, pc = (rng.permutation(SIDE) for _ in range(3))
    cells = cells[np.ix_(pa, pb, pc)]
    relabel = rng.permutation(MIN_LABELS)
    return RelayMap.from_cells(relabel[cells])
