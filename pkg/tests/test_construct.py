import json
import math

import numpy as np
import pytest

from polarpunct.bitops import covers
from polarpunct.construct import (
    DEFAULT_PW_BETA,
    bec_bhattacharyya,
    ga_reliability,
    pw_reliability,
    select_information_set,
)

# frozen from the exact recursion starting at Z = 0.5 (all values dyadic)
BEC_HALF_N3 = [0.99609375, 0.87890625, 0.80859375, 0.31640625,
               0.68359375, 0.19140625, 0.12109375, 0.00390625]


class TestBecBhattacharyya:
    def test_exact_table_n3_half(self):
        prof = bec_bhattacharyya(3, 0.5)
        assert prof.metric.tolist() == BEC_HALF_N3
        assert prof.error_prob.tolist() == [z / 2 for z in BEC_HALF_N3]

    def test_descending_quality_order_n3_half(self):
        prof = bec_bhattacharyya(3, 0.5)
        assert prof.best_first().tolist() == [7, 6, 5, 3, 4, 2, 1, 0]

    def test_perfect_channel(self):
        assert bec_bhattacharyya(2, 0.0).metric.tolist() == [0, 0, 0, 0]

    def test_useless_channel(self):
        assert bec_bhattacharyya(1, 1.0).metric.tolist() == [1, 1]

    def test_epsilon_validated(self):
        with pytest.raises(ValueError):
            bec_bhattacharyya(3, -0.1)
        with pytest.raises(ValueError):
            bec_bhattacharyya(3, 1.5)

    def test_capacity_conservation(self):
        # sum of (1 - Z) stays N * (1 - eps) at every block length
        for n in range(1, 13):
            for eps in (0.1, 0.37, 0.5, 0.9):
                prof = bec_bhattacharyya(n, eps)
                total = np.sum(1.0 - prof.metric)
                assert total == pytest.approx((1 << n) * (1.0 - eps), rel=1e-12)

    def test_covering_monotone(self):
        for n in range(1, 7):
            for eps in (0.2, 0.5, 0.8):
                z = bec_bhattacharyya(n, eps).metric
                for i in range(1 << n):
                    for j in range(1 << n):
                        if covers(i, j, n):
                            assert z[j] >= z[i] - 1e-15


def _ref_phi(x):
    if x == 0:
        return 1.0
    if x < 10:
        return math.exp(-0.4527 * x ** 0.86 + 0.0218)
    return math.sqrt(math.pi / x) * math.exp(-x / 4) * (1 - 10 / (7 * x))


class TestGaReliability:
    def test_single_channel_mean(self):
        prof = ga_reliability(0, 2.0)
        sigma2 = 1.0 / (2.0 * 10 ** 0.2)
        assert prof.metric[0] == pytest.approx(2.0 / sigma2, rel=1e-12)

    def test_one_level_split(self):
        # design with m0 = 2: sigma^2 = 1 -> Es/N0 = 1/2
        snr_db = 10 * math.log10(0.5)
        prof = ga_reliability(1, snr_db)
        m0 = 2.0
        assert prof.metric[1] == pytest.approx(2.0 * m0, rel=1e-12)
        # the upper mean must satisfy phi(m) = 1 - (1 - phi(m0))^2
        target = 1.0 - (1.0 - _ref_phi(m0)) ** 2
        assert _ref_phi(prof.metric[0]) == pytest.approx(target, rel=1e-6)
        assert prof.metric[0] < m0

    def test_lower_branch_doubles_exactly(self):
        for n in (2, 4, 6):
            big = ga_reliability(n, 1.0).metric
            small = ga_reliability(n - 1, 1.0).metric
            assert np.array_equal(big[1::2], 2.0 * small)

    def test_high_design_snr_drives_error_to_zero(self):
        prof = ga_reliability(4, 20.0)
        assert prof.error_prob.max() < 1e-12

    def test_error_prob_decreasing_in_mean(self):
        prof = ga_reliability(6, 0.0)
        order = np.argsort(prof.metric)
        ep = prof.error_prob[order]
        assert np.all(np.diff(ep) <= 1e-18)

    def test_covering_monotone_within_tolerance(self):
        for snr in (-1.0, 1.0, 3.0):
            prof = ga_reliability(6, snr)
            m = prof.metric
            for i in range(64):
                for j in range(64):
                    if covers(i, j, 6):
                        assert m[j] <= m[i] * (1 + 1e-6)

    def test_design_snr_must_be_finite(self):
        with pytest.raises(ValueError):
            ga_reliability(3, float("inf"))


def _genie_leaf_llrs(w_llr):
    """Per-bit-channel decision LLRs for the all-zero input with genie
    partial sums. Written from the combine rules directly; independent of
    the package decoders."""
    N = w_llr.shape[-1]
    if N == 1:
        return w_llr
    a, b = w_llr[..., : N // 2], w_llr[..., N // 2:]
    t = np.tanh(np.clip(a, -38, 38) / 2) * np.tanh(np.clip(b, -38, 38) / 2)
    f = 2 * np.arctanh(np.clip(t, -1 + 1e-16, 1 - 1e-16))
    left = _genie_leaf_llrs(f)
    right = _genie_leaf_llrs(b + a)  # true partial sums are all zero
    return np.concatenate([left, right], axis=-1)


class TestGaAgainstMonteCarlo:
    def test_selection_agrees_with_genie_simulation(self):
        """Monte-Carlo density-evolution oracle: simulate the all-zero
        codeword, estimate per-bit-channel error rates with genie-aided
        priors, and compare the selected information set."""
        n, N, count = 8, 256, 128
        esn0_db = 0.0
        sigma2 = 1.0 / (2.0 * 10 ** (esn0_db / 10))
        rng = np.random.default_rng(2024)
        trials, chunk = 120_000, 20_000
        errors = np.zeros(N)
        for _ in range(trials // chunk):
            y = 1.0 + math.sqrt(sigma2) * rng.standard_normal((chunk, N))
            llr = 2.0 * y / sigma2
            leaf = _genie_leaf_llrs(llr)
            errors += (leaf < 0).sum(axis=0)
        pe_mc = errors / trials
        mc_best = set(np.lexsort((np.arange(N), pe_mc))[:count].tolist())

        ga_best = set(select_information_set(ga_reliability(n, esn0_db), count).info_set)
        agreement = N - len(mc_best.symmetric_difference(ga_best))
        assert agreement >= 250


class TestPwReliability:
    def test_weights_n3(self):
        b = DEFAULT_PW_BETA
        prof = pw_reliability(3)
        expected = [0.0, 1.0, b, 1 + b, b * b, 1 + b * b, b + b * b, 1 + b + b * b]
        assert prof.metric.tolist() == pytest.approx(expected, rel=1e-12)

    def test_descending_order_matches_bec_half(self):
        prof = pw_reliability(3)
        assert prof.best_first().tolist() == [7, 6, 5, 3, 4, 2, 1, 0]

    def test_extremes(self):
        prof = pw_reliability(5, 1.3)
        assert prof.metric[0] == 0.0
        assert prof.metric[-1] == pytest.approx(sum(1.3 ** j for j in range(5)))
        assert prof.metric.argmax() == 31

    def test_no_error_prob(self):
        assert pw_reliability(3).error_prob is None

    def test_beta_validated(self):
        with pytest.raises(ValueError):
            pw_reliability(3, 0.0)

    def test_covering_monotone(self):
        prof = pw_reliability(6)
        w = prof.metric
        for i in range(64):
            for j in range(64):
                if covers(i, j, 6):
                    assert w[j] <= w[i] + 1e-12


class TestSelectInformationSet:
    def test_bec_half_k4(self):
        spec = select_information_set(bec_bhattacharyya(3, 0.5), 4)
        assert spec.info_set == (3, 5, 6, 7)
        assert spec.frozen_set == (0, 1, 2, 4)

    def test_pw_k4(self):
        spec = select_information_set(pw_reliability(3), 4)
        assert spec.info_set == (3, 5, 6, 7)

    def test_full_rate(self):
        spec = select_information_set(bec_bhattacharyya(3, 0.5), 8)
        assert spec.info_set == tuple(range(8))
        assert spec.frozen_set == ()

    def test_crc_accounting(self):
        spec = select_information_set(ga_reliability(5, 1.0), 20, crc_bits=8)
        assert spec.k == 12
        assert spec.crc_bits == 8
        assert len(spec.info_set) == 20

    def test_deterministic(self):
        a = select_information_set(ga_reliability(7, 1.5), 70)
        b = select_information_set(ga_reliability(7, 1.5), 70)
        assert a == b

    def test_count_validated(self):
        prof = bec_bhattacharyya(3, 0.5)
        with pytest.raises(ValueError):
            select_information_set(prof, 0)
        with pytest.raises(ValueError):
            select_information_set(prof, 9)

    def test_degenerate_ties_keep_info_set_upward_closed(self):
        # erasure probability 0 makes every metric equal; the selection must
        # still never freeze a channel that covers a selected one
        for count in (3, 4, 6):
            spec = select_information_set(bec_bhattacharyya(3, 0.0), count)
            info = set(spec.info_set)
            for j in info:
                for i in range(8):
                    if covers(i, j, 3):
                        assert i in info

    def test_json_round_trip_shapes(self):
        prof = bec_bhattacharyya(3, 0.5)
        spec = select_information_set(prof, 4)
        blob = json.dumps({**prof.to_json_dict(), **spec.to_json_dict()})
        back = json.loads(blob)
        assert back["metric"] == BEC_HALF_N3
        assert back["I"] == [3, 5, 6, 7]
        assert back["F"] == [0, 1, 2, 4]
