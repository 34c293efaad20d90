"""Monte Carlo engine: sampling, overlaps, classification, Schur route, perturbations."""

import numpy as np
import pytest

from ginibre_overlaps import mc, theory
from ginibre_overlaps.errors import (ClassificationError, DomainError,
                                     SampleRejected, TrackingError)


def _config(kind="ginoe", n=6, samples=3, seed=42, **kw):
    return mc.EnsembleConfig(kind=kind, n=n, samples=samples, master_seed=seed, **kw)


class TestSampling:
    def test_determinism(self):
        cfg = _config(n=30)
        a = mc.sample_matrix(cfg, 5)
        b = mc.sample_matrix(cfg, 5)
        assert a.tobytes() == b.tobytes()
        c = mc.sample_matrix(cfg, 6)
        assert a.tobytes() != c.tobytes()

    def test_ginoe_entry_moments(self):
        cfg = _config(n=1000, samples=1, seed=7)
        g = mc.sample_matrix(cfg, 0)
        assert g.dtype == np.float64
        assert abs(g.mean()) <= 4.0 / 1000.0          # 4 sigma of the mean of n^2 entries
        assert abs(g.var() - 1.0) <= 0.02

    def test_ginue_entry_moments(self):
        cfg = _config(kind="ginue", n=1000, samples=1, seed=7)
        g = mc.sample_matrix(cfg, 0)
        assert g.dtype == np.complex128
        assert abs(np.mean(np.abs(g) ** 2) - 1.0) <= 0.02
        # real and imaginary parts each carry half the variance
        assert abs(g.real.var() - 0.5) <= 0.02
        assert abs(g.imag.var() - 0.5) <= 0.02

    def test_config_validation(self):
        with pytest.raises(DomainError):
            _config(n=1)
        with pytest.raises(DomainError):
            _config(samples=0)
        with pytest.raises(DomainError):
            mc.EnsembleConfig(kind="gse", n=4, samples=1, master_seed=0)


class TestEigenOverlaps:
    def test_normal_matrix_has_unit_overlaps(self):
        rng = np.random.default_rng(3)
        a = rng.standard_normal((12, 12))
        sym = (a + a.T) / 2.0
        _, overlaps, _ = mc.eigen_overlaps(sym)
        assert np.allclose(overlaps, 1.0, atol=1e-10)

    def test_two_by_two_shear(self):
        # [[d, a], [0, -d]]: both overlaps equal 1 + a^2/(4 d^2)
        a, d = 0.8, 0.05
        g = np.array([[d, a], [0.0, -d]])
        _, overlaps, _ = mc.eigen_overlaps(g)
        assert np.allclose(overlaps, 1.0 + a * a / (4 * d * d), rtol=1e-10)

    def test_overlap_lower_bound(self):
        for seed in range(5):
            g = mc.sample_matrix(_config(n=40, seed=seed), 0)
            _, overlaps, _ = mc.eigen_overlaps(g)
            assert np.all(overlaps >= 1.0 - 1e-10)

    def test_row_sums_are_one(self):
        g = mc.sample_matrix(_config(n=50, seed=11), 0)
        _, omat = mc.overlap_matrix(g)
        sums = omat.sum(axis=1)
        assert np.allclose(sums, 1.0, atol=1e-8)

    def test_near_defective_rejection(self):
        g = mc.sample_matrix(_config(n=10, seed=1), 0)
        with pytest.raises(SampleRejected):
            mc.eigen_overlaps(g, reject_threshold=1.0)


class TestClassification:
    def test_counting_identity(self):
        g = mc.sample_matrix(_config(n=100, seed=5), 0)
        w, overlaps, _ = mc.eigen_overlaps(g)
        is_real, partner = mc.classify_eigenvalues(w, overlaps, 100)
        n_real = int(is_real.sum())
        n_pairs = int((partner >= 0).sum()) // 2
        assert n_real + 2 * n_pairs == 100
        # partner is an involution on complex indices
        cplx = np.flatnonzero(~is_real)
        assert np.all(partner[partner[cplx]] == cplx)

    def test_symmetrized_sample_all_real(self):
        g = mc.sample_matrix(_config(n=30, seed=2), 0)
        sym = (g + g.T) / 2.0
        w, overlaps, _ = mc.eigen_overlaps(sym)
        is_real, _ = mc.classify_eigenvalues(w, overlaps, 30)
        assert is_real.all()

    def test_pair_overlap_agreement(self):
        g = mc.sample_matrix(_config(n=60, seed=9), 0)
        w, overlaps, _ = mc.eigen_overlaps(g)
        is_real, partner = mc.classify_eigenvalues(w, overlaps, 60)
        cplx = np.flatnonzero(~is_real)
        rel = np.abs(overlaps[cplx] - overlaps[partner[cplx]]) / overlaps[cplx]
        assert rel.max() <= 1e-6

    def test_unpairable_raises(self):
        w = np.array([1.0 + 1j, 2.0 - 0.5j, 3.0])
        overlaps = np.ones(3)
        with pytest.raises(ClassificationError):
            mc.classify_eigenvalues(w, overlaps, 3)

    def test_greedy_path_on_shuffled_pairs(self):
        # ordering that defeats the adjacency fast path
        w = np.array([1 + 1j, 2 + 2j, 1 - 1j, 2 - 2j, 0.5])
        overlaps = np.array([3.0, 4.0, 3.0, 4.0, 1.0])
        is_real, partner = mc.classify_eigenvalues(w, overlaps, 5)
        assert list(partner) == [2, 3, 0, 1, -1]
        assert is_real[4]


class TestSchurRoute:
    def test_constructed_block(self):
        # known 2x2 block with b = 2, c = 0.5 and no coupling: O = 1.5625
        rng = np.random.default_rng(0)
        g = np.zeros((6, 6))
        g[:2, :2] = [[0.3, 2.0], [-0.5, 0.3]]
        g[2:, 2:] = rng.standard_normal((4, 4)) * 0.1
        w, _, _ = mc.eigen_overlaps(g)
        z = w[np.argmax(w.imag)]
        o_schur, o_direct = mc.schur_cross_check(g, z)
        assert o_schur == pytest.approx(1.5625, rel=1e-12)
        assert o_direct == pytest.approx(1.5625, rel=1e-10)

    def test_frame_invariants(self):
        cfg = _config(n=10, seed=21)
        g = mc.sample_matrix(cfg, 0)
        w, _, _ = mc.eigen_overlaps(g)
        z = w[np.argmax(w.imag)]
        frame = mc.incomplete_schur(g, z)
        assert frame.b >= frame.c > 0
        assert frame.y**2 == pytest.approx(frame.b * frame.c, rel=1e-10)
        assert frame.delta_schur == pytest.approx(frame.b - frame.c, rel=1e-12)
        # (y, delta) variables reproduce b^2 + c^2
        assert frame.b**2 + frame.c**2 == pytest.approx(
            frame.delta_schur**2 + 2 * frame.y**2, rel=1e-10)
        # the orthogonal similarity preserves the spectrum
        gt = frame.q.T @ g @ frame.q
        wt = np.sort_complex(np.linalg.eigvals(gt))
        assert np.allclose(wt, np.sort_complex(w), atol=1e-8)
        # block triangular: coupling below the 2x2 block is eliminated
        assert np.abs(gt[2:, :2]).max() <= 1e-10
        # top 2x2 block is standardized
        assert gt[0, 0] == pytest.approx(frame.x, abs=1e-10)
        assert gt[1, 1] == pytest.approx(frame.x, abs=1e-10)
        assert gt[0, 1] == pytest.approx(frame.b, rel=1e-8)
        assert gt[1, 0] == pytest.approx(-frame.c, rel=1e-8)

    @pytest.mark.parametrize("n", [4, 6, 10])
    def test_routes_agree_on_random_samples(self, n):
        hits = 0
        seed = 0
        while hits < 8:
            seed += 1
            g = mc.sample_matrix(_config(n=n, seed=seed), 0)
            w, _, _ = mc.eigen_overlaps(g)
            cplx = w[w.imag > 1e-8 * np.sqrt(n)]
            if cplx.size == 0:
                continue
            z = cplx[np.argmax(np.abs(cplx.imag))]
            o_schur, o_direct = mc.schur_cross_check(g, z)
            assert abs(o_schur - o_direct) / o_direct <= 1e-8
            hits += 1

    def test_real_target_rejected(self):
        g = mc.sample_matrix(_config(n=8, seed=4), 0)
        w, _, _ = mc.eigen_overlaps(g)
        real = w[np.abs(w.imag) <= 1e-8 * np.sqrt(8)]
        if real.size:
            with pytest.raises(DomainError):
                mc.incomplete_schur(g, complex(real[0]))
        with pytest.raises(DomainError):
            mc.incomplete_schur(g, 1e6 + 1e6j)  # not an eigenvalue


class TestPerturbation:
    def test_identity_perturbation_gives_one(self):
        g = mc.sample_matrix(_config(n=12, seed=3), 0)
        p = np.eye(12)
        for k in (0, 5, 11):
            res = mc.perturbation_experiment(g, k, p, 1e-7)
            assert res.derivative == pytest.approx(1.0, rel=1e-9)

    def test_bound_never_violated(self):
        g = mc.sample_matrix(_config(n=20, seed=8), 0)
        rng = np.random.default_rng(123)
        for _ in range(25):
            p = rng.standard_normal((20, 20))
            p /= np.linalg.norm(p, 2)
            k = int(rng.integers(20))
            res = mc.perturbation_experiment(g, k, p, 1e-7)
            assert abs(res.derivative) <= res.bound * (1.0 + 1e-8)

    def test_finite_difference_matches_derivative(self):
        g = mc.sample_matrix(_config(n=20, seed=15), 0)
        rng = np.random.default_rng(7)
        p = rng.standard_normal((20, 20))
        p /= np.linalg.norm(p, 2)
        res = mc.perturbation_experiment(g, 3, p, 1e-7)
        assert abs(res.fd_estimate - res.derivative) <= 1e-6 * (1.0 + abs(res.derivative))

    def test_epsilon_and_norm_validation(self):
        g = mc.sample_matrix(_config(n=5, seed=1), 0)
        p = np.eye(5)
        with pytest.raises(DomainError):
            mc.perturbation_experiment(g, 0, p, 1e-3)
        with pytest.raises(DomainError):
            mc.perturbation_experiment(g, 0, 2.0 * p, 1e-7)

    def test_tracking_ambiguity_raises(self):
        # spectral gap 2e-6 around +-1e-6; the perturbation moves eigenvalues
        # by ~3e-3, far beyond half the gap
        g = np.array([[0.0, 1.0], [1e-12, 0.0]])
        p = np.array([[0.0, 0.0], [1.0, 0.0]])
        with pytest.raises(TrackingError):
            mc.perturbation_experiment(g, 0, p, 1e-5)


class TestCampaign:
    def test_determinism_and_worker_independence(self):
        cfg = _config(n=8, samples=12, seed=101)
        r1 = mc.run_campaign(cfg, workers=1)
        r2 = mc.run_campaign(cfg, workers=1)
        assert r1.records.tobytes() == r2.records.tobytes()
        r3 = mc.run_campaign(cfg, workers=2)
        assert r1.records.tobytes() == r3.records.tobytes()

    def test_record_counts_and_partition(self):
        cfg = _config(n=50, samples=20, seed=33)
        res = mc.run_campaign(cfg, workers=1)
        assert res.records.size == 50 * 20 - sum(50 for _ in res.rejections)
        n_real = res.real_records().size
        n_cplx = res.complex_records().size
        assert n_real + n_cplx == res.records.size
        assert n_cplx % 2 == 0
        assert res.summary["rejected"] == len(res.rejections)

    def test_ginue_has_no_real_records(self):
        cfg = _config(kind="ginue", n=20, samples=5, seed=3)
        res = mc.run_campaign(cfg, workers=1)
        assert res.records.size == 100
        assert not res.records["is_real"].any()

    def test_rejection_logging(self):
        cfg = _config(n=10, samples=5, seed=2, reject_threshold=1.0)
        res = mc.run_campaign(cfg, workers=1)
        assert res.records.size == 0
        assert len(res.rejections) == 5
        assert res.summary["rejection_warning"]
        assert all(reason == "near-defective" for _, reason in res.rejections)

    def test_sorted_stream(self):
        cfg = _config(n=6, samples=7, seed=9)
        res = mc.run_campaign(cfg, workers=2)
        keys = list(zip(res.records["sample_index"], res.records["eigen_index"]))
        assert keys == sorted(keys)

    def test_data_view(self):
        cfg = _config(n=4, samples=2, seed=1)
        res = mc.run_campaign(cfg, workers=1)
        data = res.data()
        assert len(data) == res.records.size
        assert data[0].self_overlap >= 1.0 - 1e-10
