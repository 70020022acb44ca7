"""Dual pairs, generalized dual frames and dilation families.

Reconstruction batteries are drawn from the span of the translates with the
oracle projector and reconstructed with explicit translate matrices, so the
spectral conditions checked here are always compared against a time-domain
computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import oracle
from .bracket import mixed_periodization, periodization, support_sets
from .errors import DegenerateGeneratorError, DimensionError, TruncationError, WindowOverflowError
from .group import ModelConfig, digit_table, digits_to_indices, shifted_indices
from .walsh import Signal, embed, forward

DUAL_TOL = 1e-9
BATTERY_SIZE = 100
BATTERY_SEED = 20240917
# relative tolerance when checking that a function ignores a digit
CONSTANCY_TOL = 1e-12


@dataclass(frozen=True)
class GeneratorFamily:
    generators: tuple
    duals: tuple | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a generator family needs at least one generator")
        cfg = gens[0].cfg
        duals = None if self.duals is None else tuple(self.duals)
        for g in gens + (duals or ()):
            if not isinstance(g, Signal) or not g.cfg.same_window(cfg):
                raise DimensionError("all generators must be signals on the same window")
        if duals is not None and len(duals) != len(gens):
            raise DimensionError(f"{len(gens)} generators but {len(duals)} duals")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "duals", duals)

    @property
    def cfg(self) -> ModelConfig:
        return self.generators[0].cfg

    def require_duals(self) -> tuple:
        if self.duals is None:
            raise ValueError("this check needs a dual family")
        return self.duals


@dataclass(frozen=True)
class DualVerdict:
    condition_residual: float
    reconstruction_residual: float
    holds: bool


def battery(generators: Sequence[Signal], count: int = BATTERY_SIZE, seed: int = BATTERY_SEED) -> np.ndarray:
    """``count`` random elements of the span, one per row, unit norm."""
    cfg = generators[0].cfg
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, cfg.size)) + 1j * rng.standard_normal((count, cfg.size))
    fs = raw @ oracle.projector_onto_span(list(generators)).T
    norms = np.sqrt(cfg.time_weight) * np.linalg.norm(fs, axis=1)
    return fs / np.where(norms > 0, norms, 1.0)[:, None]


def reconstruct(fs: np.ndarray, generators: Sequence[Signal], duals: Sequence[Signal]) -> np.ndarray:
    """Rows ``sum_l sum_h <f, T_h dual_l> T_h gen_l`` for each row ``f``."""
    T = oracle.translates_matrix(list(generators))
    Td = oracle.translates_matrix(list(duals))
    coeffs = generators[0].cfg.time_weight * (fs @ Td.conj())
    return coeffs @ T.T


def reconstruction_residual(generators, duals, count=BATTERY_SIZE, seed=BATTERY_SEED) -> float:
    fs = battery(generators, count, seed)
    err = fs - reconstruct(fs, generators, duals)
    norms = np.linalg.norm(fs, axis=1)
    ok = norms > 0
    if not ok.any():
        return 0.0
    return float(np.max(np.linalg.norm(err[ok], axis=1) / norms[ok]))


def check_pair_dual(phi: Signal, phit: Signal, tol: float | None = None, threshold: float = DUAL_TOL) -> DualVerdict:
    """Test ``[phi^, phit^] == 1`` on Omega and reconstruction on the span of ``phi``."""
    if not phi.cfg.same_window(phit.cfg):
        raise DimensionError("generator and dual live on different windows")
    phat = forward(phi)
    supp = support_sets(periodization(phat), tol)
    mixed = mixed_periodization(phat, forward(phit)).values
    cond = float(np.max(np.abs(mixed[supp.omega] - 1.0)))
    recon = reconstruction_residual([phi], [phit])
    return DualVerdict(cond, recon, cond <= threshold and recon <= threshold)


def multi_dual_defects(fam: GeneratorFamily) -> list[np.ndarray]:
    """Per generator ``n``: ``phi_n^ - sum_l phi_l^ * [phi_n^, phit_l^]`` on the dual window."""
    duals = fam.require_duals()
    cfg = fam.cfg
    ghat = [forward(g) for g in fam.generators]
    dhat = [forward(d) for d in duals]
    out = []
    for gn in ghat:
        acc = np.zeros(cfg.size, dtype=np.complex128)
        for gl, dl in zip(ghat, dhat):
            acc += gl.values * np.tile(mixed_periodization(gn, dl).values, cfg.hperp_count)
        out.append(gn.values - acc)
    return out


def check_multi_dual(fam: GeneratorFamily, tol: float | None = None, threshold: float = DUAL_TOL) -> DualVerdict:
    """Generalized dual-frame test for ``{T_h phi_l}`` and ``{T_h phit_l}``.

    The condition residual is measured fibre by fibre and normalised by the
    fibre norm of ``phi_n^``, which makes it scale-free and equal to the
    pair residual when the family has one member.
    """
    duals = fam.require_duals()
    cfg = fam.cfg
    tol = cfg.tol_zero if tol is None else tol
    defects = multi_dual_defects(fam)
    cond = 0.0
    nonzero = False
    for g, d in zip(fam.generators, defects):
        fib = forward(g).fibres()
        energy = np.sum(np.abs(fib) ** 2, axis=0)
        peak = energy.max(initial=0.0)
        if peak == 0.0:
            continue
        nonzero = True
        on = energy > tol * peak
        ratio = np.linalg.norm(d.reshape(fib.shape)[:, on], axis=0) / np.sqrt(energy[on])
        cond = max(cond, float(ratio.max()))
    if not nonzero:
        raise DegenerateGeneratorError("every generator in the family vanishes")
    recon = reconstruction_residual(fam.generators, duals)
    return DualVerdict(cond, recon, cond <= threshold and recon <= threshold)


@dataclass(frozen=True)
class CrossCondition:
    """``lhs[a, w] = sum_l phi_l^(w) * conj(phit_l^(w (+) w_[a]))``."""

    lhs: np.ndarray
    mask: np.ndarray
    residual: float
    holds: bool


def hperp_shift_indices(cfg: ModelConfig) -> np.ndarray:
    """``idx[a, w]`` = dual index of ``w (+) w_[a]`` for every H-perp element."""
    table = digit_table(cfg)
    h = table[:: cfg.h_count]
    summed = (table[None, :, :] + h[:, None, :]) % cfg.p
    return digits_to_indices(summed, cfg.p)


def check_cross_condition(fam: GeneratorFamily, tol: float | None = None, threshold: float = DUAL_TOL) -> CrossCondition:
    """Sufficient condition ``sum_l phi_l^(w) conj(phit_l^(w (+) h)) = delta_{h,0}``.

    Checked on the set where ``sum_l |phi_l^(w)|**2`` is nonzero.
    """
    duals = fam.require_duals()
    cfg = fam.cfg
    tol = cfg.tol_zero if tol is None else tol
    idx = hperp_shift_indices(cfg)
    lhs = np.zeros((cfg.hperp_count, cfg.size), dtype=np.complex128)
    energy = np.zeros(cfg.size)
    for g, d in zip(fam.generators, duals):
        gv, dv = forward(g).values, forward(d).values
        lhs += gv[None, :] * dv[idx].conj()
        energy += np.abs(gv) ** 2
    peak = energy.max(initial=0.0)
    if peak == 0.0:
        raise DegenerateGeneratorError("every generator in the family vanishes")
    mask = energy > tol * peak
    target = np.zeros_like(lhs)
    target[0] = 1.0
    residual = float(np.max(np.abs(lhs - target)[:, mask]))
    return CrossCondition(lhs, mask, residual, residual <= threshold)


def convergence_bound(fam: GeneratorFamily) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the Cauchy-Schwarz bound behind unconditional convergence.

    Returns ``(lhs, rhs)`` with ``lhs[n, w] = sum_l sum_h |phi_l^(w) phi_n^(w+h) phit_l^(w+h)|``
    and ``rhs[w] = sqrt(D * Dt) * sum_l |phi_l^(w)|``.
    """
    duals = fam.require_duals()
    cfg = fam.cfg
    ghat = [np.abs(forward(g).fibres()) for g in fam.generators]
    dhat = [np.abs(forward(d).fibres()) for d in duals]
    D = max(float(np.max(np.sum(g**2, axis=0))) for g in ghat)
    Dt = max(float(np.max(np.sum(d**2, axis=0))) for d in dhat)
    lhs = np.zeros((len(ghat), cfg.size))
    for n, gn in enumerate(ghat):
        for gl, dl in zip(ghat, dhat):
            lhs[n] += gl.reshape(-1) * np.tile(np.sum(gn * dl, axis=0), cfg.hperp_count)
    rhs = math.sqrt(D * Dt) * sum(g.reshape(-1) for g in ghat)
    return lhs, rhs


def _ignores_last_digits(values: np.ndarray, p: int, k: int) -> bool:
    grid = values.reshape(-1, p**k)
    scale = float(np.max(np.abs(values), initial=0.0))
    return bool(np.max(np.abs(grid - grid[:, :1]), initial=0.0) <= CONSTANCY_TOL * scale)


def _vanishes_on_top_digits(values: np.ndarray, p: int, k: int) -> bool:
    grid = values.reshape(p**k, -1)
    scale = float(np.max(np.abs(values), initial=0.0))
    return bool(np.max(np.abs(grid[1:]), initial=0.0) <= CONSTANCY_TOL * scale)


def dilate(phi: Signal, l: int, big_cfg: ModelConfig | None = None) -> Signal:
    """Unitary dilation ``(D^l phi)(x) = p**(l/2) * phi(A^l x)``.

    ``phi`` is embedded into ``big_cfg`` first when given.  The result must be
    exactly representable: for ``l > 0`` ``phi`` may not depend on its last
    ``l`` fractional digits, for ``l < 0`` it must vanish wherever one of its
    top ``|l|`` integer digits is nonzero.  Otherwise :class:`TruncationError`.
    """
    if big_cfg is not None and not big_cfg.same_window(phi.cfg):
        phi = embed(phi, big_cfg)
    cfg = phi.cfg
    if l == 0:
        return phi
    if abs(l) >= cfg.length:
        raise TruncationError(f"dilation by {l} leaves a window of {cfg.length} digits")
    target, lost = shifted_indices(cfg, l)
    if l > 0:
        if not _ignores_last_digits(phi.values, cfg.p, l):
            raise TruncationError(f"phi depends on its last {l} fractional digits; enlarge n")
        values = np.where(lost, 0.0, phi.values[target])
    else:
        if not _vanishes_on_top_digits(phi.values, cfg.p, -l):
            raise TruncationError(f"phi is supported beyond lambda < p**{cfg.m + l}; enlarge m")
        values = phi.values[target]
    return Signal(cfg, float(cfg.p) ** (l / 2) * values)


def _lambda_hull(values: np.ndarray, cfg: ModelConfig, tol: float):
    mag = np.abs(values)
    peak = mag.max(initial=0.0)
    if peak == 0.0:
        return None
    idx = np.nonzero(mag > tol * peak)[0]
    scale = cfg.p**cfg.m
    return Fraction(int(idx.min()), scale), Fraction(int(idx.max()) + 1, scale)


def required_dilations(phi: Signal, phit: Signal, tol: float | None = None) -> list[int] | None:
    """Dilation indices whose terms can be nonzero in the dilation condition.

    Uses the lambda*-hulls ``[a, b)`` of the two spectra: term ``m`` needs
    ``p**-m [a, b)`` to meet ``[a~, b~)``.  Returns ``None`` when a hull
    touches the origin (infinitely many terms survive).
    """
    cfg = phi.cfg
    tol = cfg.tol_zero if tol is None else tol
    hull = _lambda_hull(forward(phi).values, cfg, tol)
    hull_t = _lambda_hull(forward(phit).values, cfg, tol)
    if hull is None or hull_t is None:
        return []
    (a, b), (at, bt) = hull, hull_t
    if a == 0 or at == 0:
        return None
    p = cfg.p
    # p**-m * a < bt  and  p**-m * b > at
    lo = 0
    while Fraction(p) ** lo <= a / bt:
        lo += 1
    while Fraction(p) ** (lo - 1) > a / bt:
        lo -= 1
    hi = 0
    while Fraction(p) ** hi >= b / at:
        hi -= 1
    while Fraction(p) ** (hi + 1) < b / at:
        hi += 1
    return list(range(lo, hi + 1))


@dataclass(frozen=True)
class DilationReport:
    residuals: dict
    l_range: tuple
    required: list | None
    exact: bool
    holds: bool | None


def check_dilation_condition(
    phi: Signal,
    phit: Signal,
    n_range: Iterable[int],
    l_range: Iterable[int],
    big_cfg: ModelConfig | None = None,
    threshold: float = DUAL_TOL,
) -> DilationReport:
    """Residuals of the dilation-family duality condition, one per ``n``.

    For each ``n`` the residual is ``max_w |phi^(w) - R_n(w)|`` with

        R_n(w) = sum_{h in H-perp} sum_{m in l_range} p**-(m+n) phi^(B^-m w)
                 conj(phit^(B^-m (w (+) B^-n h))) phi^(w (+) B^-n h).

    The inner sum is truncated to ``l_range``.  ``holds`` is only set when
    the truncation is provably exact (see :func:`required_dilations`).
    """
    n_range = sorted(set(int(n) for n in n_range))
    l_range = tuple(sorted(set(int(l) for l in l_range)))
    if not n_range or not l_range:
        raise ValueError("n_range and l_range must be nonempty")
    if big_cfg is not None:
        phi = phi if big_cfg.same_window(phi.cfg) else embed(phi, big_cfg)
        phit = phit if big_cfg.same_window(phit.cfg) else embed(phit, big_cfg)
    elif not phi.cfg.same_window(phit.cfg):
        raise DimensionError("generator and dual live on different windows")
    cfg = phi.cfg
    p, L = cfg.p, cfg.length
    phat = forward(phi).values
    # p**(m/2) phi_m^ = phi^ o B^-m, so each term carries p**-n only
    dilates = [(forward(dilate(phi, m)).values, forward(dilate(phit, m)).values) for m in l_range]

    residuals = {}
    for n in n_range:
        if n > cfg.m:
            raise WindowOverflowError(f"n={n} exceeds the dual window (m={cfg.m})")
        # B^-n H-perp frees the dual digits at positions j <= n
        r = min(max(n + cfg.n, 0), L)
        acc = np.zeros(cfg.size, dtype=np.complex128)
        for gm, dm in dilates:
            folded = (dm.conj() * phat).reshape(p**r, -1).sum(axis=0)
            acc += gm * np.tile(folded, p**r)
        rhs = float(p) ** (-n) * acc
        residuals[n] = float(np.max(np.abs(phat - rhs)))

    required = required_dilations(phi, phit)
    exact = required is not None and set(required) <= set(l_range)
    holds = all(v <= threshold for v in residuals.values()) if exact else None
    return DilationReport(residuals, l_range, required, exact, holds)
