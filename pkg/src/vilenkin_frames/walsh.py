"""Characters, generalized Walsh functions and the Vilenkin-Chrestenson transform.

Time samples carry Haar weight ``p**-n`` and dual samples ``p**-m`` so that
both ``U`` and ``U*`` have unit measure.  The transform pair is

    forward:  F(w) = p**-n * sum_x f(x) * conj(chi(x, w))
    inverse:  f(x) = p**-m * sum_w F(w) * chi(x, w)

and is unitary between the two weighted spaces.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import DimensionError, WindowOverflowError
from .group import DigitVector, ModelConfig, Side, digit_table, omega_of_alpha


@functools.lru_cache(maxsize=32)
def roots_of_unity(p: int) -> np.ndarray:
    """``exp(2*pi*i*k/p)`` for ``k < p`` with quarter turns made exact."""
    k = np.arange(p)
    roots = np.exp(2j * np.pi * k / p)
    exact = {0: 1.0, 1: 1.0j, 2: -1.0, 3: -1.0j}
    for kk in range(p):
        if (4 * kk) % p == 0:
            roots[kk] = exact[(4 * kk) // p]
    roots.setflags(write=False)
    return roots


def _as_values(values, cfg: ModelConfig) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).reshape(-1)
    if arr.shape[0] != cfg.size:
        raise DimensionError(f"expected {cfg.size} samples, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("signal values must be finite")
    arr.setflags(write=False)
    return arr


class _Sampled:
    side: Side
    weight_attr: str

    def __init__(self, cfg: ModelConfig, values):
        self.cfg = cfg
        self.values = _as_values(values, cfg)

    def __repr__(self):
        c = self.cfg
        return f"{type(self).__name__}(p={c.p}, m={c.m}, n={c.n}, values={self.values!r})"

    @property
    def weight(self) -> float:
        return getattr(self.cfg, self.weight_attr)

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise DimensionError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if not self.cfg.same_window(other.cfg):
            raise DimensionError("signals live on different windows")

    def inner(self, other) -> complex:
        """Weighted inner product, linear in the first argument."""
        self._check(other)
        return complex(self.weight * np.vdot(other.values, self.values))

    def norm(self) -> float:
        return float(np.sqrt(self.weight) * np.linalg.norm(self.values))

    def __add__(self, other):
        self._check(other)
        return type(self)(self.cfg, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.cfg, self.values - other.values)

    def __mul__(self, scalar):
        return type(self)(self.cfg, self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(self.cfg, -self.values)

    def allclose(self, other, atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.values - other.values), initial=0.0) <= atol)


class Signal(_Sampled):
    """Function on the time window, sampled in ``index_of`` order.

    ``fibres()`` reshapes to ``(p**m, p**n)``: row = H-translate (lambda order),
    column = U-sample.
    """

    side = Side.TIME
    weight_attr = "time_weight"

    def fibres(self) -> np.ndarray:
        return self.values.reshape(self.cfg.h_count, self.cfg.hperp_count)

    @classmethod
    def zeros(cls, cfg: ModelConfig) -> "Signal":
        return cls(cfg, np.zeros(cfg.size))

    @classmethod
    def indicator_U(cls, cfg: ModelConfig) -> "Signal":
        values = np.zeros(cfg.size)
        values[: cfg.hperp_count] = 1.0
        return cls(cfg, values)

    @classmethod
    def point_mass(cls, cfg: ModelConfig, index: int = 0, value: complex = 1.0) -> "Signal":
        values = np.zeros(cfg.size, dtype=np.complex128)
        values[index] = value
        return cls(cfg, values)


class SpectralSignal(_Sampled):
    """Function on the dual window, sampled in dual ``index_of`` order.

    ``fibres()`` reshapes to ``(p**n, p**m)``: row = H-perp element,
    column = U*-sample.  Row ``a`` column ``b`` is the point ``b (+) w_[a]``.
    """

    side = Side.DUAL
    weight_attr = "dual_weight"

    def fibres(self) -> np.ndarray:
        return self.values.reshape(self.cfg.hperp_count, self.cfg.h_count)


def character(x: DigitVector, w: DigitVector) -> complex:
    """``chi(x, w) = exp(2*pi*i/p * sum_j x_j w_{1-j})``."""
    if x.side is not Side.TIME or w.side is not Side.DUAL:
        raise DimensionError("character expects (time, dual) arguments")
    if not x.cfg.same_window(w.cfg):
        raise DimensionError("arguments belong to different windows")
    p = x.cfg.p
    # time slot k pairs with dual slot (m+n-1-k)
    phase = sum(a * b for a, b in zip(x.digits, reversed(w.digits))) % p
    return complex(roots_of_unity(p)[phase])


def character_matrix(cfg: ModelConfig) -> np.ndarray:
    """Dense ``chi[x, w]`` over the whole window, from integer digit arithmetic."""
    table = digit_table(cfg)
    phases = (table @ table[:, ::-1].T) % cfg.p
    return roots_of_unity(cfg.p)[phases]


def walsh_function(alpha: int, cfg: ModelConfig) -> Signal:
    """``W_alpha(x) = chi(x, w_[alpha])`` sampled on the time window."""
    if not 0 <= alpha < cfg.hperp_count:
        raise WindowOverflowError(f"alpha={alpha} outside [0, {cfg.hperp_count})")
    w = np.array(omega_of_alpha(alpha, cfg).digits)
    phases = (digit_table(cfg) @ w[::-1]) % cfg.p
    return Signal(cfg, roots_of_unity(cfg.p)[phases])


def char_sum(values: np.ndarray, p: int, k: int, conjugate: bool) -> np.ndarray:
    """Unnormalised transform over ``Z_p**k`` with digit-reversed pairing.

    Computes ``out[b] = sum_a values[a] * chi_k(a, b)`` (or its conjugate),
    where ``chi_k`` pairs digit ``i`` of ``a`` with digit ``k-1-i`` of ``b``.
    One p-point DFT stage per digit, then the axis order is reversed.
    """
    if k == 0:
        return np.array(values, dtype=np.complex128)
    tensor = np.asarray(values, dtype=np.complex128).reshape((p,) * k)
    if conjugate:
        out = np.fft.fftn(tensor)
    else:
        out = np.fft.ifftn(tensor) * float(p) ** k
    return np.ascontiguousarray(out.transpose(tuple(range(k - 1, -1, -1)))).reshape(-1)


def forward(f: Signal) -> SpectralSignal:
    cfg = f.cfg
    values = char_sum(f.values, cfg.p, cfg.length, conjugate=True) * cfg.time_weight
    return SpectralSignal(cfg, values)


def inverse(F: SpectralSignal) -> Signal:
    cfg = F.cfg
    values = char_sum(F.values, cfg.p, cfg.length, conjugate=False) * cfg.dual_weight
    return Signal(cfg, values)


def forward_naive(f: Signal) -> SpectralSignal:
    """Reference O(N**2) summation; shares no code with :func:`forward`."""
    cfg = f.cfg
    chi = character_matrix(cfg)
    values = cfg.time_weight * (chi.conj().T @ f.values)
    return SpectralSignal(cfg, values)


def inverse_naive(F: SpectralSignal) -> Signal:
    cfg = F.cfg
    chi = character_matrix(cfg)
    return Signal(cfg, cfg.dual_weight * (chi @ F.values))


def translate(f: Signal, h) -> Signal:
    """``(T_h f)(x) = f(x (-) h)`` for ``h`` in the H-window.

    ``h`` may be a :class:`DigitVector` or its lambda value.
    """
    cfg = f.cfg
    if isinstance(h, DigitVector):
        if not h.in_H or not h.cfg.same_window(cfg):
            raise DimensionError("translations are only defined for H-window elements")
        hdigits = h.digits[: cfg.m]
    else:
        alpha = int(h)
        if not 0 <= alpha < cfg.h_count:
            raise WindowOverflowError(f"translate index {alpha} outside the H-window")
        hdigits = np.unravel_index(alpha, (cfg.p,) * cfg.m)
    tensor = f.values.reshape((cfg.p,) * cfg.m + (cfg.hperp_count,))
    shifted = np.roll(tensor, tuple(int(d) for d in hdigits), axis=tuple(range(cfg.m)))
    return Signal(cfg, shifted.reshape(-1))


def translate_indices(cfg: ModelConfig) -> np.ndarray:
    """``idx[a, x]`` = index of ``x (-) h_[a]``, so ``T_{h_a} f = f.values[idx[a]]``."""
    table = digit_table(cfg)
    h_digits = table[:: cfg.hperp_count]
    diff = (table[None, :, :] - h_digits[:, None, :]) % cfg.p
    powers = cfg.p ** np.arange(cfg.length - 1, -1, -1, dtype=np.int64)
    return diff @ powers


def embed(f: Signal, big: ModelConfig) -> Signal:
    """Place ``f`` into a larger window with the same ``p``.

    ``f`` is extended by zero on the new integer digits and kept constant
    along the new fractional digits, which is exactly how an element of the
    smaller model sits inside the larger one.
    """
    cfg = f.cfg
    if big.p != cfg.p or big.m < cfg.m or big.n < cfg.n:
        raise DimensionError("target window must contain the source window")
    values = np.zeros((big.p ** (big.m - cfg.m), cfg.size, big.p ** (big.n - cfg.n)), dtype=np.complex128)
    values[0] = f.values[:, None]
    return Signal(big, values.reshape(-1))
