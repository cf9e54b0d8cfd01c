"""Monte Carlo end-to-end simulation of the two-phase relaying protocol.

Per frame: three nodes transmit 4-PSK simultaneously to the relay (one
channel use per symbol slot), the relay jointly ML-decodes the triple,
maps it to a cluster label, and broadcasts the label as a t-PSK point;
each node ML-detects the label within its own-symbol slice and inverts
the map to the two foreign symbols.  Channel gains are Rician and held
constant per frame; the adaptive scheme reselects the relay map each
frame from the uplink gains.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .latincube import Node, RelayMap, SIDE
from .metrics import FadeState, MapCatalog, SYMBOL_TRIPLES, effective_constellation, select_map

BITS_PER_SYMBOL = 2
_BITCOUNT = np.array([0, 1, 1, 2])  # set bits of a 2-bit symbol-index XOR


class Scheme(Enum):
    ADAPTIVE = "adaptive"
    NON_ADAPTIVE = "fixed"


class ConfigError(ValueError):
    """Invalid simulation configuration."""


@dataclass(frozen=True)
class ChannelModel:
    """Rician block-fading gain model.

    Total mean power is 10**(variance_db/10), split between a fixed
    line-of-sight component carrying K/(K+1) of it and a circularly
    symmetric scattered component carrying the rest, K = 10**(rician_k_db/10).
    """

    rician_k_db: float
    variance_db: float = 0.0

    @property
    def total_power(self) -> float:
        return 10.0 ** (self.variance_db / 10.0)

    @property
    def k_factor(self) -> float:
        return 10.0 ** (self.rician_k_db / 10.0)

    @property
    def los_amplitude(self) -> float:
        k = self.k_factor
        return math.sqrt(self.total_power * k / (k + 1.0))

    @property
    def scatter_power(self) -> float:
        return self.total_power / (self.k_factor + 1.0)


def rician_samples(model: ChannelModel, rng: np.random.Generator, n: int) -> np.ndarray:
    scale = math.sqrt(model.scatter_power / 2.0)
    scatter = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return model.los_amplitude + scatter


def rician_sample(model: ChannelModel, rng: np.random.Generator) -> complex:
    """One Rician gain draw: fixed line-of-sight plus complex Gaussian scatter."""
    return complex(rician_samples(model, rng, 1)[0])


@dataclass(frozen=True)
class SimConfig:
    snr_db_list: tuple[float, ...]
    frames: int
    frame_len_bits: int = 256
    scheme: Scheme = Scheme.ADAPTIVE
    seed: int = 0

    def validate(self) -> None:
        if not self.snr_db_list:
            raise ConfigError("snr_db_list must not be empty")
        if self.frames <= 0:
            raise ConfigError(f"frames must be positive, got {self.frames}")
        if self.frame_len_bits <= 0 or self.frame_len_bits % BITS_PER_SYMBOL != 0:
            raise ConfigError(
                f"frame_len_bits must be a positive multiple of {BITS_PER_SYMBOL}, "
                f"got {self.frame_len_bits}"
            )
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")


@dataclass(frozen=True)
class BerRecord:
    snr_db: float
    node: Node
    bit_errors: int
    bits_total: int

    def __post_init__(self) -> None:
        if not 0 <= self.bit_errors <= self.bits_total:
            raise ValueError("bit_errors must lie in [0, bits_total]")

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_total if self.bits_total else 0.0


def noise_sigma(snr_db: float) -> float:
    """Std dev per complex noise sample at unit symbol energy; 0 for inf SNR."""
    if math.isinf(snr_db) and snr_db > 0:
        return 0.0
    return math.sqrt(10.0 ** (-snr_db / 10.0))


def ma_phase_ml(y_r: complex, h: FadeState) -> tuple[int, int, int]:
    """Joint ML estimate of the transmitted triple from one relay sample.

    Exhaustive over the 64 candidates; ties resolve to the smallest index
    triple.
    """
    dists = np.abs(y_r - effective_constellation(h))
    a, rest = divmod(int(np.argmin(dists)), SIDE * SIDE)
    return (a, *divmod(rest, SIDE))


def bc_modulate(label: int, t: int) -> complex:
    """Unit-energy t-PSK point for a cluster label."""
    if not 0 <= label < t:
        raise ValueError(f"label {label} out of range for t={t}")
    return complex(np.exp(2j * np.pi * label / t))


def node_decode(
    y: complex, h_bc: complex, m: RelayMap, node: Node, own: int
) -> tuple[int, int]:
    """ML label detection restricted to the node's own-symbol slice, inverted.

    The slice holds 16 distinct labels whatever t is, so the restricted
    search always inverts; it also never errs toward a label the relay
    could not have produced for this own symbol.
    """
    labels = m.slice_labels(node, own)
    points = h_bc * np.exp(2j * np.pi * labels / m.t)
    best = int(np.argmin(np.abs(y - points)))
    return tuple(divmod(best, SIDE))


def _slice_points(m: RelayMap) -> np.ndarray:
    """t-PSK points of every node's own-symbol slice labels, shape (3, 4, 16)."""
    labels = np.stack(
        [
            np.stack([m.slice_labels(node, own) for own in range(SIDE)])
            for node in Node
        ]
    )
    return np.exp(2j * np.pi * labels / m.t)


def run_sim(config: SimConfig, catalog: MapCatalog, model: ChannelModel) -> list[BerRecord]:
    """Simulate all SNR points and return per-SNR, per-node error counts.

    One RNG stream per frame index keeps results reproducible and lets the
    SNR points share channel and (scaled) noise realizations.
    """
    config.validate()
    nsym = config.frame_len_bits // BITS_PER_SYMBOL
    n_snr = len(config.snr_db_list)
    sigmas = [noise_sigma(s) for s in config.snr_db_list]
    errors = np.zeros((n_snr, 3), dtype=np.int64)
    slice_cache: dict[int, np.ndarray] = {}

    for frame in range(config.frames):
        rng = np.random.default_rng([config.seed, frame])
        gains = rician_samples(model, rng, 6)
        h_ma, h_bc = gains[:3], gains[3:]
        syms = rng.integers(0, SIDE, size=(3, nsym))
        z_r = (rng.standard_normal(nsym) + 1j * rng.standard_normal(nsym)) / math.sqrt(2)
        z_bc = (rng.standard_normal((3, nsym)) + 1j * rng.standard_normal((3, nsym))) / math.sqrt(2)

        if config.scheme is Scheme.ADAPTIVE:
            m = select_map(catalog, FadeState(*h_ma))
        else:
            m = catalog.non_adaptive
        key = id(m)
        if key not in slice_cache:
            slice_cache[key] = _slice_points(m)
        slice_points = slice_cache[key]

        eff = SYMBOL_TRIPLES @ h_ma
        triple_idx = (syms[0] * SIDE + syms[1]) * SIDE + syms[2]
        tx = eff[triple_idx]
        flat_labels = m.cells.reshape(-1)

        for si, sigma in enumerate(sigmas):
            y_r = tx + sigma * z_r
            ml_idx = np.argmin(np.abs(y_r[:, None] - eff[None, :]), axis=1)
            labels = flat_labels[ml_idx]
            x_r = np.exp(2j * np.pi * labels / m.t)

            for node in Node:
                own = syms[node]
                y = h_bc[node] * x_r + sigma * z_bc[node]
                cand = h_bc[node] * slice_points[node, own]  # (nsym, 16)
                pos = np.argmin(np.abs(y[:, None] - cand), axis=1)
                first = pos // SIDE
                second = pos % SIDE
                others = [n for n in Node if n != node]
                errors[si, node] += int(
                    _BITCOUNT[first ^ syms[others[0]]].sum()
                    + _BITCOUNT[second ^ syms[others[1]]].sum()
                )

    bits_per_node = 2 * BITS_PER_SYMBOL * nsym * config.frames
    return [
        BerRecord(
            snr_db=config.snr_db_list[si],
            node=node,
            bit_errors=int(errors[si, node]),
            bits_total=bits_per_node,
        )
        for si in range(n_snr)
        for node in Node
    ]
