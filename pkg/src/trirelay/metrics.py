"""Effective relay constellations, minimum-distance metrics, map selection.

The definitional forms scan all ordered pairs of transmit triples; the
catalog keeps a per-map mask over the 728 distinct difference triples so
that per-frame selection costs one 728-point inner product instead of
4096 pair distances per map.  Both routes must agree to float precision.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constellation import N_SYMBOLS, psk_point
from .fadespace import SubspaceClass, all_difference_vectors, enumerate_classes
from .latincube import RelayMap, map_for_class, xor_map

N_TRIPLES = N_SYMBOLS**3


@dataclass(frozen=True)
class FadeState:
    """One realization of the three uplink channel gains."""

    h_a: complex
    h_b: complex
    h_c: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.h_a, self.h_b, self.h_c], dtype=complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


def _symbol_triples() -> np.ndarray:
    """(64, 3) complex points, row index (a*16 + b*4 + c)."""
    pts = np.array([p.to_complex() for p in (psk_point(i) for i in range(N_SYMBOLS))])
    a, b, c = np.meshgrid(pts, pts, pts, indexing="ij")
    return np.stack([a.reshape(-1), b.reshape(-1), c.reshape(-1)], axis=1)


SYMBOL_TRIPLES = _symbol_triples()
_PAIR_DIFFS = SYMBOL_TRIPLES[:, None, :] - SYMBOL_TRIPLES[None, :, :]  # (64, 64, 3)


def _diff_triple_table() -> tuple[np.ndarray, np.ndarray]:
    """All 728 nonzero difference triples and the pair -> triple row index."""
    vecs = all_difference_vectors()
    triples = np.array([v.to_complex() for v in vecs])
    lookup = {
        tuple(int(x) for d in v.components for x in (d.re, d.im)): row
        for row, v in enumerate(vecs)
    }
    pair_rows = np.full((N_TRIPLES, N_TRIPLES), -1, dtype=np.int64)
    imag_int = np.rint(_PAIR_DIFFS.imag).astype(np.int64)
    real_int = np.rint(_PAIR_DIFFS.real).astype(np.int64)
    for i in range(N_TRIPLES):
        for j in range(N_TRIPLES):
            if i == j:
                continue
            key = (
                real_int[i, j, 0], imag_int[i, j, 0],
                real_int[i, j, 1], imag_int[i, j, 1],
                real_int[i, j, 2], imag_int[i, j, 2],
            )
            pair_rows[i, j] = lookup[key]
    return triples, pair_rows


DIFF_TRIPLES, _PAIR_DIFF_ROW = _diff_triple_table()


def effective_constellation(h: FadeState) -> np.ndarray:
    """The 64 received points H_A x_A + H_B x_B + H_C x_C, in index order."""
    return SYMBOL_TRIPLES @ h.as_array()


def dmin_fade(h: FadeState) -> float:
    """Minimum distance of the effective constellation.

    Zero exactly when h lies in a singular fade subspace.
    """
    return float(np.abs(DIFF_TRIPLES @ h.as_array()).min())


def dmin_cluster(m: RelayMap, h: FadeState) -> float:
    """Minimum effective distance between triples the map separates."""
    labels = m.cells.reshape(-1)
    split = labels[:, None] != labels[None, :]
    dists = np.abs(_PAIR_DIFFS @ h.as_array())
    return float(dists[split].min())


def split_mask(m: RelayMap) -> np.ndarray:
    """Boolean mask over the 728 difference triples realized across clusters."""
    labels = m.cells.reshape(-1)
    split = labels[:, None] != labels[None, :]
    mask = np.zeros(len(DIFF_TRIPLES), dtype=bool)
    mask[_PAIR_DIFF_ROW[split]] = True
    return mask


@lru_cache(maxsize=1)
def _canonical_table() -> tuple[np.ndarray, np.ndarray]:
    canon = np.array([c.canonical.to_complex() for c in enumerate_classes()])
    return canon, np.linalg.norm(canon, axis=1)


def is_singular(h: FadeState, tol: float = 1e-9) -> int | None:
    """Id of a subspace class containing h, or None.

    Membership is the normalized inner-product test |h . v| <= tol |h| |v|
    against each class's canonical vector; smallest id wins.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    canon, vnorms = _canonical_table()
    vals = np.abs(canon @ h.as_array())
    hits = np.flatnonzero(vals <= tol * h.norm() * vnorms)
    return int(hits[0]) if hits.size else None


class MapCatalog:
    """One constrained map per removable class, plus the fixed baseline.

    Entries are ordered by ascending class id with the baseline last, so a
    first-argmax scan breaks ties toward the smallest id and prefers any
    class map over the baseline.
    """

    def __init__(self, maps: list[RelayMap], non_adaptive: RelayMap):
        self.maps: tuple[RelayMap, ...] = (*maps, non_adaptive)
        self.non_adaptive = non_adaptive
        self._masks = np.stack([split_mask(m) for m in self.maps])

    @staticmethod
    def build(classes: tuple[SubspaceClass, ...] | None = None) -> "MapCatalog":
        classes = enumerate_classes() if classes is None else classes
        removable = sorted((c for c in classes if c.removable), key=lambda c: c.id)
        return MapCatalog([map_for_class(c) for c in removable], xor_map())

    def __len__(self) -> int:
        return len(self.maps)

    def class_maps(self) -> tuple[RelayMap, ...]:
        return self.maps[:-1]

    def cluster_dmins(self, h: FadeState) -> np.ndarray:
        """dmin_cluster of every entry at h, via the precomputed masks."""
        vals = np.abs(DIFF_TRIPLES @ h.as_array())
        return np.where(self._masks, vals[None, :], np.inf).min(axis=1)


def select_map(catalog: MapCatalog, h: FadeState) -> RelayMap:
    """The catalog map with the largest minimum cluster distance at h."""
    return catalog.maps[int(np.argmax(catalog.cluster_dmins(h)))]
