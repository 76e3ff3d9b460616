import math

import numpy as np
import pytest

from vncap.qmat import DensityMatrix
from vncap.channel import ChannelTranscript, identity_channel, run_channel
from vncap.depolarizing import DepolParams, analytic_transcript, build_dilation
from vncap.analysis import (
    AuditReport,
    CapacityResult,
    HammingQuery,
    RatePoint,
    asymptotic_consistency,
    audit_axioms,
    audit_inequalities,
    hamming_holds,
    inequality_slacks,
    maximize_capacity,
    maximize_scalar_on_unit_interval,
    mixture_axiom_slacks,
    rate_bound,
    search_coherent_info_violations,
)

EXPECTED_SLACK_KEYS = {
    "single:loss_nonneg",
    "single:loss_le_2s_in",
    "single:loss_le_2s_env",
    "single:schumacher_fano",
    "chain:loss_nonneg",
    "chain:loss_le_2s_in",
    "chain:loss_le_2s_env",
    "chain:schumacher_fano",
    "parallel:loss_nonneg",
    "parallel:loss_le_2s_in",
    "parallel:loss_le_2s_env",
    "parallel:schumacher_fano",
    "forward_dpi",
    "forward_dpi_cap",
    "loss_chaining",
    "code_fano",
    "reverse_dpi",
    "reverse_dpi_cap",
    "subadditivity",
}


class TestScalarMaximizer:
    def test_smooth_interior_peak(self):
        result = maximize_scalar_on_unit_interval(lambda q: -((q - 0.37) ** 2))
        assert result.value == pytest.approx(0.0, abs=1e-12)
        assert result.argmax_q == pytest.approx(0.37, abs=1e-6)

    def test_boundary_peak(self):
        result = maximize_scalar_on_unit_interval(lambda q: -q)
        assert result.value == pytest.approx(0.0, abs=1e-12)
        assert result.argmax_q == pytest.approx(0.0, abs=1e-6)

    def test_flat_objective_reports_center(self):
        result = maximize_scalar_on_unit_interval(lambda q: 0.0)
        assert result.value == 0.0
        assert result.argmax_q == 0.5
        assert result.evaluations >= 101

    def test_tie_breaks_toward_center(self):
        result = maximize_scalar_on_unit_interval(
            lambda q: -abs(q - 0.45) * abs(q - 0.7)
        )
        assert result.argmax_q == pytest.approx(0.45, abs=1e-6)

    def test_rejects_non_finite_objective(self):
        with pytest.raises(ValueError, match="non-finite"):
            maximize_scalar_on_unit_interval(
                lambda q: float("nan") if q > 0.5 else q
            )

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError, match="tolerance"):
            maximize_scalar_on_unit_interval(lambda q: q, tol=0.0)

    def test_counts_evaluations(self):
        calls = []

        def f(q):
            calls.append(q)
            return -((q - 0.5) ** 2)

        result = maximize_scalar_on_unit_interval(f)
        assert result.evaluations == len(calls)


class TestMaximizeCapacity:
    def test_closed_form_family(self):
        result = maximize_capacity(lambda q: analytic_transcript(DepolParams(0.1, q)))
        assert result.value == pytest.approx(1.372508156338603, abs=1e-9)
        assert result.argmax_q == pytest.approx(0.5, abs=1e-6)

    def test_noiseless_family(self):
        result = maximize_capacity(lambda q: analytic_transcript(DepolParams(0.0, q)))
        assert result.value == pytest.approx(2.0, abs=1e-12)
        assert result.argmax_q == pytest.approx(0.5, abs=1e-6)

    def test_fully_noisy_family_is_flat_zero(self):
        result = maximize_capacity(lambda q: analytic_transcript(DepolParams(0.75, q)))
        assert result.value == pytest.approx(0.0, abs=1e-12)

    def test_simulated_family_matches_closed_form(self):
        def family(q):
            dil, entangled = build_dilation(DepolParams(0.3, q))
            from vncap.qmat import pure_marginal

            return run_channel(dil, pure_marginal(entangled, (0,)))

        result = maximize_capacity(family)
        assert result.value == pytest.approx(0.6432203505529606, abs=1e-9)
        assert result.argmax_q == pytest.approx(0.5, abs=1e-6)
        assert isinstance(result, CapacityResult)


class TestInequalitySlacks:
    def test_identity_channel_slacks(self):
        ident = identity_channel(2)
        rho = DensityMatrix(np.diag([0.3, 0.7]).astype(complex))
        product_pair = DensityMatrix(
            np.diag(np.kron([0.3, 0.7], [0.3, 0.7])).astype(complex), (2, 2)
        )
        slacks = inequality_slacks(ident, ident, rho, product_pair)
        assert set(slacks) == EXPECTED_SLACK_KEYS
        for name in (
            "single:loss_nonneg",
            "chain:loss_nonneg",
            "forward_dpi",
            "forward_dpi_cap",
            "loss_chaining",
            "code_fano",
            "reverse_dpi",
            "subadditivity",
        ):
            assert slacks[name] == pytest.approx(0.0, abs=1e-9), name

    def test_correlated_pair_makes_subadditivity_strict(self):
        ident = identity_channel(2)
        rho = DensityMatrix(np.diag([0.3, 0.7]).astype(complex))
        correlated = DensityMatrix(
            np.diag([0.2, 0.3, 0.1, 0.4]).astype(complex), (2, 2)
        )
        slacks = inequality_slacks(ident, ident, rho, correlated)
        # I(Q1 Q2) < I(Q1) + I(Q2) strictly once the halves are correlated.
        assert slacks["subadditivity"] > 1e-3

    def test_random_draw_is_clean(self):
        rng = np.random.default_rng(404)
        from vncap.analysis import _random_diagonal, _random_dilation

        ch1 = _random_dilation(rng)
        ch2 = _random_dilation(rng)
        rho = _random_diagonal(rng, (2,))
        rho_pair = _random_diagonal(rng, (2, 2))
        slacks = inequality_slacks(ch1, ch2, rho, rho_pair)
        assert set(slacks) == EXPECTED_SLACK_KEYS
        for name, value in slacks.items():
            assert value >= -1e-9, (name, value)


class TestAuditInequalities:
    def test_clean_audit(self):
        report = audit_inequalities(seed=11, trials=25)
        assert report.trials == 25
        assert report.violations == ()
        assert report.max_negative_slack == 0.0

    def test_deterministic_per_seed(self):
        a = audit_inequalities(seed=5, trials=10)
        b = audit_inequalities(seed=5, trials=10)
        assert a == b

    def test_rejects_bad_trials(self):
        with pytest.raises(ValueError, match="trials"):
            audit_inequalities(seed=1, trials=0)

    def test_flags_corrupted_transcript(self):
        bad = ChannelTranscript(
            s_in=1.0,
            s_out=1.0,
            s_env=0.0,
            loss=-0.5,
            mutual_entanglement=2.5,
            coherent_info=1.5,
            fidelity=1.0,
        )
        report = audit_inequalities(seed=3, trials=2, extra_transcripts=(bad,))
        ids = {v[0] for v in report.violations}
        assert ids == {"injected:loss_nonneg"}
        assert report.violations[0][1] == {"transcript": 0}
        assert report.max_negative_slack == pytest.approx(-0.5, abs=1e-12)


class TestAuditAxioms:
    def test_clean_audit(self):
        report = audit_axioms(seed=7, trials=40)
        assert report.violations == ()
        assert report.max_negative_slack == 0.0

    def test_deterministic_per_seed(self):
        assert audit_axioms(seed=2, trials=10) == audit_axioms(seed=2, trials=10)

    def test_rejects_bad_trials(self):
        with pytest.raises(ValueError, match="trials"):
            audit_axioms(seed=1, trials=-5)

    def test_slack_structure(self):
        rng = np.random.default_rng(606)
        from vncap.analysis import _random_density, _random_dilation

        slacks = mixture_axiom_slacks(
            _random_dilation(rng),
            _random_dilation(rng),
            _random_density(rng, 2),
            _random_density(rng, 2),
            0.3,
        )
        assert set(slacks) == {"concavity_input", "convexity_channel"}
        assert all(v >= -1e-9 for v in slacks.values())


class TestCoherentInfoSearch:
    def test_finds_witnesses(self):
        found = search_coherent_info_violations(seed=7, trials=50)
        assert len(found) > 0
        for trial, weight, slack in found:
            assert 0 <= trial < 50
            assert 0.05 <= weight <= 0.95
            assert slack < -1e-9

    def test_deterministic_per_seed(self):
        a = search_coherent_info_violations(seed=9, trials=20)
        b = search_coherent_info_violations(seed=9, trials=20)
        assert a == b


class TestHammingHolds:
    def test_classical_perfect_code_point(self):
        holds, slack = hamming_holds(HammingQuery(7, 4, 1, "classical"))
        assert holds
        assert slack == 0.0

    def test_quantum_perfect_code_point(self):
        holds, slack = hamming_holds(HammingQuery(5, 1, 1, "quantum"))
        assert holds
        assert slack == 0.0

    def test_entanglement_exhausts_doubled_space(self):
        holds, slack = hamming_holds(HammingQuery(5, 6, 1, "entanglement"))
        assert holds
        assert slack == 0.0

    def test_quantum_short_block_fails(self):
        holds, slack = hamming_holds(HammingQuery(4, 1, 1, "quantum"))
        assert not holds
        assert slack == pytest.approx(3 - math.log2(13), abs=1e-12)

    def test_exact_boundary_at_long_blocks(self):
        assert hamming_holds(HammingQuery(200, 109, 20, "classical"))[0]
        assert not hamming_holds(HammingQuery(200, 110, 20, "classical"))[0]
        assert hamming_holds(HammingQuery(200, 77, 20, "quantum"))[0]
        assert not hamming_holds(HammingQuery(200, 78, 20, "quantum"))[0]

    def test_rejects_invalid_queries(self):
        with pytest.raises(ValueError, match="invalid query"):
            HammingQuery(7, 4, 1, "postal")
        with pytest.raises(ValueError, match="invalid query"):
            HammingQuery(7, 4, 9, "classical")
        with pytest.raises(ValueError, match="invalid query"):
            HammingQuery(7, 0, 1, "classical")


class TestRateBound:
    def test_classical_reference_value(self):
        assert rate_bound(0.1, "classical") == pytest.approx(
            0.5310044064107189, abs=1e-12
        )

    def test_quantum_reference_value(self):
        assert rate_bound(0.1, "quantum") == pytest.approx(
            0.3725081563386032, abs=1e-12
        )

    def test_entanglement_reference_value(self):
        assert rate_bound(0.1, "entanglement") == pytest.approx(
            1.3725081563386032, abs=1e-12
        )

    def test_entanglement_exceeds_quantum_by_exactly_one(self):
        for p in (0.05, 0.1, 0.2, 0.3):
            gap = rate_bound(p, "entanglement") - rate_bound(p, "quantum")
            assert gap == 1.0

    def test_quantum_bound_can_go_negative(self):
        assert rate_bound(0.4, "quantum") < 0.0

    def test_classical_vanishes_at_coin_flip(self):
        assert rate_bound(0.5, "classical") == pytest.approx(0.0, abs=1e-12)

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError, match="invalid query"):
            rate_bound(0.1, "postal")


class TestAsymptoticConsistency:
    def test_reference_table_at_long_blocks(self):
        rows = {
            mode: asymptotic_consistency(0.1, [200], mode)[0]
            for mode in ("classical", "quantum", "entanglement")
        }
        assert rows["classical"] == RatePoint(n=200, t=20, k_max=109, rate=0.545)
        assert rows["quantum"] == RatePoint(n=200, t=20, k_max=77, rate=0.385)
        assert rows["entanglement"] == RatePoint(n=200, t=20, k_max=277, rate=1.385)

    def test_rates_settle_onto_bound_from_above(self):
        for mode in ("classical", "quantum", "entanglement"):
            bound = rate_bound(0.1, mode)
            rows = asymptotic_consistency(0.1, [25, 50, 100, 200], mode)
            diffs = [abs(row.rate - bound) for row in rows]
            # Finite-block rates sit above the limit and the gap shrinks
            # monotonically as the block length doubles.
            assert all(row.rate >= bound for row in rows)
            assert all(a > b for a, b in zip(diffs, diffs[1:]))
            assert diffs[-1] < 0.05

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError, match="strictly inside"):
            asymptotic_consistency(0.0, [100], "classical")
        with pytest.raises(ValueError, match="block length"):
            asymptotic_consistency(0.1, [5], "classical")
        with pytest.raises(ValueError, match="invalid query"):
            asymptotic_consistency(0.1, [100], "postal")


class TestAuditReportShape:
    def test_fields(self):
        report = audit_inequalities(seed=1, trials=1)
        assert isinstance(report, AuditReport)
        assert report.trials == 1
        assert isinstance(report.violations, tuple)
        assert report.max_negative_slack <= 0.0
