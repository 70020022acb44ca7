"""C-bracket, periodization and the support sets derived from them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeneratorError, DimensionError
from .group import DigitVector, ModelConfig, Side
from .walsh import Signal, SpectralSignal, forward


@dataclass(frozen=True)
class BracketTable:
    """A periodic function stored on its fundamental domain.

    ``side=Side.TIME`` tables are H-periodic and hold ``p**n`` values on the
    U-samples; ``side=Side.DUAL`` tables are H-perp-periodic and hold
    ``p**m`` values on the U*-samples.
    """

    cfg: ModelConfig
    side: Side
    values: np.ndarray

    def __post_init__(self):
        expected = self.cfg.hperp_count if self.side is Side.TIME else self.cfg.h_count
        arr = np.array(self.values)
        if arr.shape != (expected,):
            raise DimensionError(f"bracket table needs {expected} values, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def at(self, point: DigitVector):
        """Evaluate at any window point using periodicity."""
        if point.side is not self.side:
            raise DimensionError("point lies on the wrong side")
        return self.values[point.index % self.values.shape[0]]

    def extend(self) -> np.ndarray:
        """Periodic extension to the full window (index order)."""
        return np.tile(self.values, self.cfg.size // self.values.shape[0])


@dataclass(frozen=True)
class SupportSets:
    """Boolean masks describing where a generator lives spectrally.

    ``omega``, ``n_phi``, ``v_phi`` and ``eta`` are indexed by U*-samples;
    ``e_phi`` covers the whole dual window.
    """

    omega: np.ndarray
    n_phi: np.ndarray
    e_phi: np.ndarray
    v_phi: np.ndarray
    eta: np.ndarray
    threshold: float

    @property
    def full(self) -> bool:
        return bool(self.omega.all())


def _same_cfg(a, b) -> None:
    if not a.cfg.same_window(b.cfg):
        raise DimensionError("operands live on different windows")


def c_bracket(f: Signal, g: Signal) -> BracketTable:
    """``[f, g](x) = sum_h f(x (+) h) * conj(g(x (+) h))`` on the U-samples."""
    _same_cfg(f, g)
    values = np.einsum("hx,hx->x", f.fibres(), g.fibres().conj())
    return BracketTable(f.cfg, Side.TIME, values)


def mixed_periodization(Fhat: SpectralSignal, Ghat: SpectralSignal) -> BracketTable:
    """``sum_{h in H-perp} F(w (+) h) * conj(G(w (+) h))`` on the U*-samples."""
    _same_cfg(Fhat, Ghat)
    values = np.einsum("hw,hw->w", Fhat.fibres(), Ghat.fibres().conj())
    return BracketTable(Fhat.cfg, Side.DUAL, values)


def periodization(Fhat: SpectralSignal) -> BracketTable:
    """``P(w) = sum_{h in H-perp} |F(w (+) h)|**2``; real and nonnegative."""
    fib = Fhat.fibres()
    values = np.einsum("hw,hw->w", fib.real, fib.real) + np.einsum("hw,hw->w", fib.imag, fib.imag)
    return BracketTable(Fhat.cfg, Side.DUAL, values)


def zero_threshold(values: np.ndarray, tol: float) -> float:
    return tol * float(np.max(np.abs(values), initial=0.0))


def support_sets(P: BracketTable, tol: float | None = None, fhat: SpectralSignal | None = None) -> SupportSets:
    """Classify the U*-samples of a self-bracket.

    A sample is zero iff ``P <= tol * max(P)``.  When the spectrum ``fhat``
    is supplied, ``v_phi`` is recomputed from the fibre vectors themselves
    and must agree with ``omega``.
    """
    cfg = P.cfg
    tol = cfg.tol_zero if tol is None else tol
    values = np.asarray(P.values)
    if np.iscomplexobj(values):
        if np.max(np.abs(values.imag), initial=0.0) > 1e-12 * max(np.max(np.abs(values)), 1e-300):
            raise ValueError("support_sets expects a self-bracket (real, >= 0)")
        values = values.real
    peak = float(np.max(values, initial=0.0))
    if peak <= 0.0:
        raise DegenerateGeneratorError("periodization vanishes identically")
    threshold = tol * peak
    omega = values > threshold
    if fhat is not None:
        fib = np.abs(fhat.fibres()) ** 2
        v_phi = fib.sum(axis=0) > threshold
    else:
        v_phi = omega.copy()
    e_phi = np.tile(omega, cfg.hperp_count)
    eta = v_phi.copy()
    return SupportSets(omega=omega, n_phi=~omega, e_phi=e_phi, v_phi=v_phi, eta=eta, threshold=threshold)


def minimal_filter(f: Signal, phi: Signal, tol: float | None = None) -> np.ndarray:
    """Filter ``m`` on the U*-samples with ``f^ = m * phi^`` that vanishes off Omega.

    Equals ``[f^, phi^] / P_phi`` on Omega; in the Parseval case this is the
    plain bracket ``[f^, phi^]``.
    """
    _same_cfg(f, phi)
    phat = forward(phi)
    P = periodization(phat)
    supp = support_sets(P, tol)
    mixed = mixed_periodization(forward(f), phat).values
    out = np.zeros(phi.cfg.h_count, dtype=np.complex128)
    out[supp.omega] = mixed[supp.omega] / P.values[supp.omega]
    return out
