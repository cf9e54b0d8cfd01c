"""4-PSK signal set, bit mapping, and the exact difference constellation.

Everything here is integer arithmetic on Gaussian integers so that
difference-vector comparisons downstream are exact (no tolerances).
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache


@dataclass(frozen=True, order=True)
class GaussianInt:
    """Complex number with integer real and imaginary parts."""

    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm2(self) -> int:
        """Squared magnitude, exact."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}j"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}j"


N_SYMBOLS = 4

# Symbol index k carries the point j**k: 1, j, -1, -j.
PSK_POINTS: tuple[GaussianInt, ...] = (
    GaussianInt(1, 0),
    GaussianInt(0, 1),
    GaussianInt(-1, 0),
    GaussianInt(0, -1),
)

# Units of the Gaussian integers; multiplying by these permutes each
# difference-magnitude class onto itself.
UNITS: tuple[GaussianInt, ...] = (
    GaussianInt(1, 0),
    GaussianInt(-1, 0),
    GaussianInt(0, 1),
    GaussianInt(0, -1),
)


def psk_point(index: int) -> GaussianInt:
    """Constellation point for a symbol index in 0..3."""
    return PSK_POINTS[index]


def mu(bits: tuple[int, int]) -> int:
    """Map a 2-bit tuple to a symbol index (natural binary order).

    The mapping is (b1, b0) -> 2*b1 + b0, so 00->1, 01->j, 10->-1, 11->-j.
    """
    b1, b0 = bits
    if b1 not in (0, 1) or b0 not in (0, 1):
        raise ValueError(f"bits must be 0/1, got {bits!r}")
    return 2 * b1 + b0


def mu_inv(index: int) -> tuple[int, int]:
    """Inverse of mu: symbol index back to its 2-bit tuple."""
    if index not in range(N_SYMBOLS):
        raise ValueError(f"symbol index out of range: {index!r}")
    return (index >> 1, index & 1)


class DiffClass(Enum):
    """Magnitude class of a point difference.

    ADJACENT differences (+-1 +-j) have squared magnitude 2 and arise from
    two ordered point pairs each; ANTIPODAL differences (+-2, +-2j) have
    squared magnitude 4 and arise from exactly one ordered pair.
    """

    ZERO = 0
    ADJACENT = 1
    ANTIPODAL = 2


@lru_cache(maxsize=1)
def diff_set() -> frozenset[GaussianInt]:
    """All differences of two 4-PSK points: 0, the 4 adjacent, the 4 antipodal."""
    return frozenset(p - q for p in PSK_POINTS for q in PSK_POINTS)


def classify_diff(d: GaussianInt) -> DiffClass:
    """Classify a difference by squared magnitude 0 / 2 / 4."""
    if d not in diff_set():
        raise ValueError(f"not a 4-PSK difference: {d}")
    return {0: DiffClass.ZERO, 2: DiffClass.ADJACENT, 4: DiffClass.ANTIPODAL}[d.norm2()]


@lru_cache(maxsize=None)
def diff_realizations(d: GaussianInt) -> tuple[tuple[int, int], ...]:
    """Ordered symbol-index pairs (x, x') with point(x) - point(x') = d."""
    return tuple(
        (x, xp)
        for x in range(N_SYMBOLS)
        for xp in range(N_SYMBOLS)
        if psk_point(x) - psk_point(xp) == d
    )
