"""Finite-window model of the Vilenkin group G and its dual G*.

A time-side element keeps the digits ``x_j`` for ``j = -m+1, ..., n`` and a
dual-side element keeps ``w_j`` for ``j = 1-n, ..., m``.  Digits outside the
window are zero.  Both sides are stored most-significant digit first, so the
linear index of an element is just its digit string read in base ``p`` and
index order coincides with ``lambda`` (resp. ``lambda*``) order:

    lambda(x)  = index(x) / p**n
    lambda*(w) = index(w) / p**m

Addition is digit-wise modulo ``p`` with no carries.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionError, TruncationError, WindowOverflowError


class Side(enum.Enum):
    TIME = "time"
    DUAL = "dual"


@dataclass(frozen=True)
class ModelConfig:
    """Window description ``(p, m, n)``.

    ``m`` integer-side digits and ``n`` fractional-side digits on the time
    side; the dual window mirrors them.  ``tol_zero`` is the relative
    threshold used whenever a sampled quantity has to be classified as zero.
    """

    p: int
    m: int
    n: int
    tol_zero: float = 1e-10

    def __post_init__(self):
        for name in ("p", "m", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"m and n must be >= 1, got m={self.m}, n={self.n}")
        if not self.tol_zero >= 0:
            raise ValueError(f"tol_zero must be nonnegative, got {self.tol_zero}")
        if self.p ** (self.m + self.n) > np.iinfo(np.intp).max:
            raise WindowOverflowError("p**(m+n) exceeds the platform index range")

    @property
    def length(self) -> int:
        """Number of digit slots, ``m + n``."""
        return self.m + self.n

    @property
    def size(self) -> int:
        return self.p ** (self.m + self.n)

    @property
    def h_count(self) -> int:
        """Points in the H-window (= U*-samples)."""
        return self.p**self.m

    @property
    def hperp_count(self) -> int:
        """Points in the H-perp window (= U-samples)."""
        return self.p**self.n

    @property
    def time_weight(self) -> float:
        return float(self.p) ** -self.n

    @property
    def dual_weight(self) -> float:
        return float(self.p) ** -self.m

    def positions(self, side: Side) -> range:
        """Digit positions ``j`` in storage order."""
        if side is Side.TIME:
            return range(-self.m + 1, self.n + 1)
        return range(1 - self.n, self.m + 1)

    def same_window(self, other: "ModelConfig") -> bool:
        return (self.p, self.m, self.n) == (other.p, other.m, other.n)


@functools.lru_cache(maxsize=64)
def _digit_table(p: int, length: int) -> np.ndarray:
    idx = np.arange(p**length, dtype=np.int64)
    powers = p ** np.arange(length - 1, -1, -1, dtype=np.int64)
    table = (idx[:, None] // powers[None, :]) % p
    table.setflags(write=False)
    return table


def digit_table(cfg: ModelConfig) -> np.ndarray:
    """``(size, m+n)`` array; row ``i`` holds the digits of index ``i``."""
    return _digit_table(cfg.p, cfg.length)


def digits_to_indices(digits: np.ndarray, p: int) -> np.ndarray:
    length = digits.shape[-1]
    powers = p ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return digits @ powers


@dataclass(frozen=True)
class DigitVector:
    """Element of the time window (``Side.TIME``) or dual window."""

    digits: tuple
    side: Side
    cfg: ModelConfig = field(repr=False)

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if len(digits) != self.cfg.length:
            raise DimensionError(
                f"expected {self.cfg.length} digits, got {len(digits)}"
            )
        if any(d < 0 or d >= self.cfg.p for d in digits):
            raise WindowOverflowError(f"digits must lie in [0, {self.cfg.p})")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def zero(cls, side: Side, cfg: ModelConfig) -> "DigitVector":
        return cls((0,) * cfg.length, side, cfg)

    @classmethod
    def from_positions(cls, values: dict, side: Side, cfg: ModelConfig) -> "DigitVector":
        """Build from ``{j: digit}``; unspecified positions are zero."""
        positions = list(cfg.positions(side))
        digits = [0] * cfg.length
        for j, d in values.items():
            if j not in positions:
                raise WindowOverflowError(f"position {j} is outside the {side.value} window")
            digits[positions.index(j)] = d
        return cls(tuple(digits), side, cfg)

    def digit(self, j: int) -> int:
        """Digit at position ``j`` (zero outside the window)."""
        positions = self.cfg.positions(self.side)
        if j in positions:
            return self.digits[j - positions.start]
        return 0

    @property
    def index(self) -> int:
        return index_of(self)

    def _zero_on(self, predicate) -> bool:
        return all(
            d == 0 for j, d in zip(self.cfg.positions(self.side), self.digits) if predicate(j)
        )

    @property
    def in_H(self) -> bool:
        return self.side is Side.TIME and self._zero_on(lambda j: j >= 1)

    @property
    def in_U(self) -> bool:
        return self.side is Side.TIME and self._zero_on(lambda j: j <= 0)

    @property
    def in_Hperp(self) -> bool:
        return self.side is Side.DUAL and self._zero_on(lambda j: j >= 1)

    @property
    def in_Ustar(self) -> bool:
        return self.side is Side.DUAL and self._zero_on(lambda j: j <= 0)

    def __add__(self, other: "DigitVector") -> "DigitVector":
        return add(self, other)

    def __sub__(self, other: "DigitVector") -> "DigitVector":
        return sub(self, other)

    def __neg__(self) -> "DigitVector":
        return DigitVector(tuple((-d) % self.cfg.p for d in self.digits), self.side, self.cfg)


def _check_compatible(x: DigitVector, y: DigitVector) -> None:
    if x.side is not y.side:
        raise DimensionError(f"side mismatch: {x.side.value} vs {y.side.value}")
    if not x.cfg.same_window(y.cfg):
        raise DimensionError("elements belong to different windows")


def add(x: DigitVector, y: DigitVector) -> DigitVector:
    """Carry-free digit-wise sum modulo p."""
    _check_compatible(x, y)
    p = x.cfg.p
    return DigitVector(tuple((a + b) % p for a, b in zip(x.digits, y.digits)), x.side, x.cfg)


def sub(x: DigitVector, y: DigitVector) -> DigitVector:
    _check_compatible(x, y)
    p = x.cfg.p
    return DigitVector(tuple((a - b) % p for a, b in zip(x.digits, y.digits)), x.side, x.cfg)


def index_of(x: DigitVector) -> int:
    i = 0
    for d in x.digits:
        i = i * x.cfg.p + d
    return i


def from_index(i: int, side: Side, cfg: ModelConfig) -> DigitVector:
    if not 0 <= i < cfg.size:
        raise WindowOverflowError(f"index {i} outside [0, {cfg.size})")
    digits = []
    for _ in range(cfg.length):
        i, d = divmod(i, cfg.p)
        digits.append(d)
    return DigitVector(tuple(reversed(digits)), side, cfg)


def lambda_map(x: DigitVector) -> Fraction:
    """Exact ``sum_j x_j p**(-j)`` for a time-side element."""
    if x.side is not Side.TIME:
        raise DimensionError("lambda_map expects a time-side element")
    return Fraction(index_of(x), x.cfg.p**x.cfg.n)


def lambda_star(w: DigitVector) -> Fraction:
    if w.side is not Side.DUAL:
        raise DimensionError("lambda_star expects a dual-side element")
    return Fraction(index_of(w), w.cfg.p**w.cfg.m)


def h_of_alpha(alpha: int, cfg: ModelConfig) -> DigitVector:
    """The element ``h`` of the H-window with ``lambda(h) == alpha``."""
    if not 0 <= alpha < cfg.h_count:
        raise WindowOverflowError(f"alpha={alpha} does not fit in {cfg.m} integer digits")
    return from_index(alpha * cfg.hperp_count, Side.TIME, cfg)


def omega_of_alpha(alpha: int, cfg: ModelConfig) -> DigitVector:
    """The element of the H-perp window with ``lambda*(w) == alpha``."""
    if not 0 <= alpha < cfg.hperp_count:
        raise WindowOverflowError(f"alpha={alpha} does not fit in {cfg.n} dual digits")
    return from_index(alpha * cfg.h_count, Side.DUAL, cfg)


def enumerate_H(cfg: ModelConfig) -> list[DigitVector]:
    return [h_of_alpha(a, cfg) for a in range(cfg.h_count)]


def enumerate_Hperp(cfg: ModelConfig) -> list[DigitVector]:
    return [omega_of_alpha(a, cfg) for a in range(cfg.hperp_count)]


def enumerate_U(cfg: ModelConfig) -> list[DigitVector]:
    return [from_index(i, Side.TIME, cfg) for i in range(cfg.hperp_count)]


def enumerate_Ustar(cfg: ModelConfig) -> list[DigitVector]:
    return [from_index(i, Side.DUAL, cfg) for i in range(cfg.h_count)]


def shift_automorphism(x: DigitVector, l: int) -> DigitVector:
    """Apply ``A**l`` (time side) or ``B**l`` (dual side): ``(A x)_j = x_{j+1}``.

    Vacated slots are filled with zero.  A nonzero digit leaving the window
    raises :class:`TruncationError`.
    """
    digits = x.digits
    length = len(digits)
    if l == 0:
        return x
    if l > 0:
        lost, kept = digits[:l], digits[l:]
        shifted = kept + (0,) * min(l, length)
    else:
        lost, kept = digits[length + l:], digits[: max(length + l, 0)]
        shifted = (0,) * min(-l, length) + kept
    if any(lost):
        raise TruncationError(
            f"shift by {l} moves a nonzero digit out of the {x.side.value} window"
        )
    return DigitVector(shifted[:length], x.side, x.cfg)


def shifted_indices(cfg: ModelConfig, l: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised digit shift over the whole window.

    Returns ``(target, lost)`` where ``target[i]`` is the index of the shifted
    element with lost digits discarded and ``lost[i]`` flags whether any
    nonzero digit left the window.  Same rule for A and B.
    """
    table = digit_table(cfg)
    length = cfg.length
    shifted = np.zeros_like(table)
    if l >= 0:
        k = min(l, length)
        shifted[:, : length - k] = table[:, k:]
        lost = table[:, :k].any(axis=1)
    else:
        k = min(-l, length)
        shifted[:, k:] = table[:, : length - k]
        lost = table[:, length - k:].any(axis=1)
    return digits_to_indices(shifted, cfg.p), lost
