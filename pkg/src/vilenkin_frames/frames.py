"""Frame properties of a single system of translates ``{T_h phi}``.

Every construction works fibre-wise on the dual window: multipliers are
H-perp-periodic functions stored on the ``p**m`` U*-samples and broadcast
over the ``p**n`` H-perp translates of each sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bracket import SupportSets, minimal_filter, mixed_periodization, periodization, support_sets
from .errors import DimensionError
from .group import ModelConfig
from .walsh import Signal, SpectralSignal, char_sum, forward, inverse

FLAG_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients ``(c_h)`` indexed by ``lambda(h)``.

    Identified with the filter ``m(w) = sum_h c_h conj(chi(h, w))`` on U*;
    the identification is unitary (counting norm vs. ``mu*`` norm).
    """

    cfg: ModelConfig
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128).reshape(-1)
        if arr.shape[0] != self.cfg.h_count:
            raise DimensionError(f"expected {self.cfg.h_count} coefficients, got {arr.shape[0]}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def filter(self) -> np.ndarray:
        return char_sum(self.entries, self.cfg.p, self.cfg.m, conjugate=True)

    @classmethod
    def from_filter(cls, m: np.ndarray, cfg: ModelConfig) -> "CoefficientVector":
        m = np.asarray(m, dtype=np.complex128).reshape(-1)
        if m.shape[0] != cfg.h_count:
            raise DimensionError(f"filter needs {cfg.h_count} samples, got {m.shape[0]}")
        return cls(cfg, cfg.dual_weight * char_sum(m, cfg.p, cfg.m, conjugate=False))

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))


@dataclass(frozen=True)
class FrameReport:
    bessel_bound: float
    lower_bound: float
    is_bessel: bool
    is_frame_sequence: bool
    is_tight: bool
    is_parseval: bool
    is_onb: bool
    has_canonical_dual_in_span: bool
    periodization: np.ndarray
    support: SupportSets
    residuals: dict = field(default_factory=dict)

    @property
    def C(self) -> float:
        return self.lower_bound

    @property
    def D(self) -> float:
        return self.bessel_bound


def _extend(m: np.ndarray, cfg: ModelConfig) -> np.ndarray:
    """H-perp-periodic extension of a U*-sample table to the dual window."""
    return np.tile(m, cfg.hperp_count)


def _same_cfg(f: Signal, phi: Signal) -> None:
    if not f.cfg.same_window(phi.cfg):
        raise DimensionError("signals live on different windows")


def analyze(phi: Signal, tol: float | None = None, flag_tol: float = FLAG_TOL) -> FrameReport:
    """Classify ``{T_h phi}`` from its periodization.

    In the finite model every system is Bessel and every nonzero generator
    spans a frame sequence; the sharp bounds are ``D = max P`` and
    ``C = min P`` over the support.
    """
    phat = forward(phi)
    P = periodization(phat)
    supp = support_sets(P, tol, fhat=phat)
    values = P.values
    on = values[supp.omega]
    D = float(values.max())
    C = float(on.min())
    parseval_defect = float(np.max(np.abs(on - 1.0)))
    onb_defect = float(np.max(np.abs(values - 1.0)))
    norm2 = phi.norm() ** 2
    plancherel = abs(phi.cfg.dual_weight * float(values.sum()) - norm2) / norm2
    residuals = {
        "parseval_defect": parseval_defect,
        "onb_defect": onb_defect,
        "tightness": (D - C) / D,
        "plancherel": plancherel,
    }
    return FrameReport(
        bessel_bound=D,
        lower_bound=C,
        is_bessel=True,
        is_frame_sequence=C > 0.0,
        is_tight=(D - C) <= flag_tol * D,
        is_parseval=parseval_defect <= flag_tol,
        is_onb=onb_defect <= flag_tol,
        has_canonical_dual_in_span=supp.full,
        periodization=values,
        support=supp,
        residuals=residuals,
    )


def analysis_operator(f: Signal, phi: Signal) -> CoefficientVector:
    """``(<f, T_h phi>)_h`` via the bracket ``[f^, phi^]``."""
    _same_cfg(f, phi)
    mixed = mixed_periodization(forward(f), forward(phi)).values
    return CoefficientVector.from_filter(mixed, phi.cfg)


def synthesis_operator(c: CoefficientVector, phi: Signal) -> Signal:
    """``sum_h c_h T_h phi``, computed as ``(m * phi^)``-inverse."""
    if not c.cfg.same_window(phi.cfg):
        raise DimensionError("coefficients and generator live on different windows")
    return filter_to_function(c.filter(), phi)


def frame_operator_apply(f: Signal, phi: Signal) -> Signal:
    """``S f = sum_h <f, T_h phi> T_h phi``; spectrally ``phi^ * [f^, phi^]``."""
    _same_cfg(f, phi)
    phat = forward(phi)
    mixed = mixed_periodization(forward(f), phat).values
    return inverse(SpectralSignal(phi.cfg, phat.values * _extend(mixed, phi.cfg)))


def filter_to_function(m: np.ndarray, phi: Signal) -> Signal:
    """``J m = (m * phi^)``-inverse with ``m`` extended H-perp-periodically."""
    cfg = phi.cfg
    m = np.asarray(m, dtype=np.complex128).reshape(-1)
    if m.shape[0] != cfg.h_count:
        raise DimensionError(f"filter needs {cfg.h_count} samples, got {m.shape[0]}")
    phat = forward(phi)
    return inverse(SpectralSignal(cfg, phat.values * _extend(m, cfg)))


def _spectral_multiplier(phi: Signal, tol: float | None, power: float):
    phat = forward(phi)
    P = periodization(phat)
    supp = support_sets(P, tol)
    scale = np.zeros(phi.cfg.h_count)
    scale[supp.omega] = P.values[supp.omega] ** power
    return phat, scale


def canonical_dual(phi: Signal, tol: float | None = None) -> Signal:
    """``theta^ = phi^ / P_phi`` on Omega and zero elsewhere (``theta = S^-1 phi``)."""
    phat, scale = _spectral_multiplier(phi, tol, -1.0)
    return inverse(SpectralSignal(phi.cfg, phat.values * _extend(scale, phi.cfg)))


def tight_generator(phi: Signal, tol: float | None = None) -> Signal:
    """``phi*^ = phi^ * P_phi**-1/2`` on the support; its translates are Parseval."""
    phat, scale = _spectral_multiplier(phi, tol, -0.5)
    return inverse(SpectralSignal(phi.cfg, phat.values * _extend(scale, phi.cfg)))


class Membership(NamedTuple):
    filter: np.ndarray
    residual: float
    member: bool


def membership(f: Signal, phi: Signal, tol: float | None = None, threshold: float = MEMBERSHIP_TOL) -> Membership:
    """Test ``f`` in span of the translates via ``f^ = m_f * phi^``.

    ``residual = ||f^ - m_f phi^|| / ||f^||`` with the minimal filter ``m_f``;
    a zero ``f`` has residual 0.
    """
    _same_cfg(f, phi)
    fhat = forward(f)
    m = minimal_filter(f, phi, tol)
    defect = SpectralSignal(phi.cfg, fhat.values - _extend(m, phi.cfg) * forward(phi).values)
    fnorm = fhat.norm()
    residual = defect.norm() / fnorm if fnorm > 0 else 0.0
    return Membership(m, residual, residual <= threshold)
