import numpy as np
import pytest

from conftest import SWEEP, random_signal, sparse_spectrum_signal
from vilenkin_frames import oracle
from vilenkin_frames.bracket import (
    BracketTable,
    c_bracket,
    minimal_filter,
    mixed_periodization,
    periodization,
    support_sets,
)
from vilenkin_frames.errors import DegenerateGeneratorError, DimensionError
from vilenkin_frames.frames import canonical_dual, tight_generator
from vilenkin_frames.group import ModelConfig, Side, enumerate_Hperp, enumerate_H, from_index
from vilenkin_frames.walsh import Signal, SpectralSignal, character_matrix, forward, inverse, translate


def naive_c_bracket(f, g):
    cfg = f.cfg
    out = np.zeros(cfg.hperp_count, dtype=complex)
    for i in range(cfg.hperp_count):
        x = from_index(i, Side.TIME, cfg)
        for h in enumerate_H(cfg):
            k = (x + h).index
            out[i] += f.values[k] * np.conj(g.values[k])
    return out


def naive_dual_bracket(F, G):
    cfg = F.cfg
    out = np.zeros(cfg.h_count, dtype=complex)
    for i in range(cfg.h_count):
        w = from_index(i, Side.DUAL, cfg)
        for h in enumerate_Hperp(cfg):
            k = (w + h).index
            out[i] += F.values[k] * np.conj(G.values[k])
    return out


def test_c_bracket_examples(rng, example_cfg):
    u = Signal.indicator_U(example_cfg)
    assert np.array_equal(c_bracket(u, u).values, [1, 1])
    cfg = ModelConfig(3, 2, 1)
    f, g = random_signal(cfg, rng), random_signal(cfg, rng)
    assert np.allclose(c_bracket(f, g).values, naive_c_bracket(f, g), atol=1e-12)
    ff = c_bracket(f, f).values
    assert np.all(ff.real >= 0) and np.all(ff.imag == 0)
    with pytest.raises(DimensionError):
        c_bracket(f, random_signal(ModelConfig(3, 1, 2), rng))


def test_periodization_examples(example_cfg, example_phi):
    assert np.array_equal(periodization(forward(Signal.indicator_U(example_cfg))).values, [1, 1])
    assert np.allclose(periodization(forward(Signal.point_mass(example_cfg))).values, 0.5, atol=1e-15)
    assert np.allclose(periodization(forward(example_phi)).values, [9 / 8, 1 / 8], atol=1e-15)


@pytest.mark.parametrize("p,m,n", [(2, 2, 2), (3, 1, 2), (5, 2, 1)])
def test_periodization_matches_naive_dual_sum(p, m, n, rng):
    cfg = ModelConfig(p, m, n)
    F = forward(random_signal(cfg, rng))
    G = forward(random_signal(cfg, rng))
    assert np.max(np.abs(periodization(F).values - naive_dual_bracket(F, F).real)) <= 1e-12
    assert np.max(np.abs(mixed_periodization(F, G).values - naive_dual_bracket(F, G))) <= 1e-12
    assert np.allclose(mixed_periodization(F, F).values, periodization(F).values, atol=1e-13)
    zero = SpectralSignal(cfg, np.zeros(cfg.size))
    assert np.all(mixed_periodization(F, zero).values == 0)


def test_hperp_periodicity(rng):
    cfg = ModelConfig(3, 2, 1)
    P = periodization(forward(random_signal(cfg, rng)))
    for i in range(cfg.size):
        w = from_index(i, Side.DUAL, cfg)
        for h in enumerate_Hperp(cfg):
            assert P.at(w + h) == P.at(w)
    assert np.array_equal(P.extend()[: cfg.h_count], P.values)
    with pytest.raises(DimensionError):
        BracketTable(cfg, Side.DUAL, np.zeros(3))


@pytest.mark.parametrize("p,m,n", SWEEP)
def test_parseval_sum_identity(p, m, n, rng):
    cfg = ModelConfig(p, m, n)
    phi = random_signal(cfg, rng)
    total = cfg.dual_weight * periodization(forward(phi)).values.sum()
    assert abs(total - phi.norm() ** 2) <= 1e-11 * phi.norm() ** 2


def test_support_sets(example_cfg, example_phi, rng):
    s = support_sets(periodization(forward(Signal.indicator_U(example_cfg))))
    assert s.omega.all() and not s.n_phi.any() and s.full
    s = support_sets(periodization(forward(example_phi)))
    assert s.omega.all()
    # spectrum only on the omega_1 = 0 fibre
    fhat = SpectralSignal(example_cfg, [1.0, 0.0, 0.3, 0.0])
    s = support_sets(periodization(fhat), fhat=fhat)
    assert s.omega.tolist() == [True, False]
    assert np.array_equal(s.v_phi, s.omega) and np.array_equal(s.eta, s.v_phi)
    assert np.array_equal(s.e_phi[: example_cfg.h_count], s.v_phi)
    with pytest.raises(DegenerateGeneratorError):
        support_sets(periodization(forward(Signal.zeros(example_cfg))))


def test_support_masks_scale_invariant(rng):
    cfg = ModelConfig(2, 3, 1)
    phi = sparse_spectrum_signal(cfg, rng)
    base = support_sets(periodization(forward(phi))).omega
    for c in (1e-8, 3.0, 1e6):
        assert np.array_equal(support_sets(periodization(forward(c * phi))).omega, base)


def test_minimal_filter_parseval_cases(rng):
    cfg = ModelConfig(2, 2, 2)
    phi = tight_generator(sparse_spectrum_signal(cfg, rng))
    omega = support_sets(periodization(forward(phi))).omega
    assert np.allclose(minimal_filter(phi, phi), omega.astype(float), atol=1e-12)
    chi = character_matrix(cfg)
    for h in enumerate_H(cfg):
        expect = chi[h.index, : cfg.h_count].conj() * omega
        assert np.allclose(minimal_filter(translate(phi, h), phi), expect, atol=1e-12)


def test_minimal_filter_orthogonal_complement(rng):
    cfg = ModelConfig(3, 1, 2)
    phi = sparse_spectrum_signal(cfg, rng)
    proj = oracle.projector_onto_span(phi)
    g = random_signal(cfg, rng)
    f = Signal(cfg, g.values - proj @ g.values)
    assert np.max(np.abs(minimal_filter(f, phi))) <= 1e-12


def test_minimal_filter_general_frame(rng):
    cfg = ModelConfig(2, 2, 1)
    phi = sparse_spectrum_signal(cfg, rng)
    m = np.where(rng.random(cfg.h_count) < 0.5, 0, 1) * (rng.standard_normal(cfg.h_count) + 1j)
    f = inverse(SpectralSignal(cfg, np.tile(m, cfg.hperp_count) * forward(phi).values))
    mf = minimal_filter(f, phi)
    omega = support_sets(periodization(forward(phi))).omega
    assert np.all(mf[~omega] == 0)
    assert np.allclose(mf[omega], m[omega], atol=1e-12)


def _parseval_family_orthonormal(cfg, rng, fibre_dims):
    """Per U*-fibre: an orthonormal basis of a random subspace, spread over generators."""
    k = max(fibre_dims)
    fibres = [np.zeros((cfg.hperp_count, cfg.h_count), dtype=complex) for _ in range(k)]
    bases = []
    for w, d in enumerate(fibre_dims):
        raw = rng.standard_normal((cfg.hperp_count, d)) + 1j * rng.standard_normal((cfg.hperp_count, d))
        q, _ = np.linalg.qr(raw)
        bases.append(q)
        for i in range(d):
            fibres[i][:, w] = q[:, i]
    return fibres, bases


def test_equal_span_bracket_sum(rng):
    cfg = ModelConfig(3, 1, 2)
    dims = [2, 0, 1]
    fibres, bases = _parseval_family_orthonormal(cfg, rng, dims)
    family_a = [inverse(SpectralSignal(cfg, f.reshape(-1))) for f in fibres]
    # second family: a 3-vector Parseval frame of the same fibre subspaces
    angles = 2 * np.pi * np.arange(3) / 3
    mercedes = np.sqrt(2 / 3) * np.stack([np.cos(angles), np.sin(angles)])
    other = [np.zeros((cfg.hperp_count, cfg.h_count), dtype=complex) for _ in range(3)]
    for w, d in enumerate(dims):
        if d == 2:
            vecs = bases[w] @ mercedes
        elif d == 1:
            vecs = np.concatenate([bases[w], np.zeros((cfg.hperp_count, 2))], axis=1)
        else:
            continue
        for j in range(3):
            other[j][:, w] = vecs[:, j]
    family_b = [inverse(SpectralSignal(cfg, f.reshape(-1))) for f in other]
    proj_a = oracle.projector_onto_span(family_a)
    proj_b = oracle.projector_onto_span(family_b)
    assert np.max(np.abs(proj_a - proj_b)) <= 1e-10
    sum_a = sum(periodization(forward(g)).values for g in family_a)
    sum_b = sum(periodization(forward(g)).values for g in family_b)
    assert np.max(np.abs(sum_a - sum_b)) <= 1e-10
    assert np.allclose(sum_a, dims, atol=1e-12)


def test_canonical_pair_mixed_bracket(rng):
    cfg = ModelConfig(2, 2, 2)
    phi = sparse_spectrum_signal(cfg, rng)
    theta = canonical_dual(phi)
    omega = support_sets(periodization(forward(phi))).omega
    mixed = mixed_periodization(forward(phi), forward(theta)).values
    assert np.allclose(mixed, omega.astype(float), atol=1e-12)
