import numpy as np
import pytest

from gauss_cis.errors import (
    BadParameterError,
    EmptyWindowError,
    NonIncreasingError,
    WindowTooSmallError,
)
from gauss_cis.lattice import (
    AffineGrid,
    ExplicitWindow,
    GaussianParam,
    PeriodicPerturbation,
    avdonin_verdict,
    beurling_densities,
    build_sequence,
    canonical_enumeration,
    check_separation,
    sequence_to_json,
    window_average_sup,
)


class TestGaussianParam:
    def test_valid(self):
        p = GaussianParam(0.5, -2.0)
        assert p.c == complex(0.5, -2.0)

    @pytest.mark.parametrize("a", [0.0, -1.0, np.nan, np.inf])
    def test_bad_decay(self, a):
        with pytest.raises(BadParameterError):
            GaussianParam(a)

    def test_bad_b(self):
        with pytest.raises(BadParameterError):
            GaussianParam(1.0, np.nan)


class TestBuildSequence:
    def test_affine(self):
        seq = build_sequence({"kind": "affine", "alpha": 1.0, "beta": 0.0})
        assert np.allclose(seq.positions((0, 3)), [0, 1, 2, 3])

    def test_periodic_non_increasing(self):
        # offsets (0.7, -0.7): lambda_0 = 0.7 > lambda_1 = 0.3
        with pytest.raises(NonIncreasingError):
            build_sequence({"kind": "periodic", "offsets": [0.7, -0.7]})

    def test_periodic_valid(self):
        seq = build_sequence({"kind": "periodic", "offsets": [0.3, -0.3]})
        assert np.allclose(seq.positions((0, 2)), [0.3, 0.7, 2.3])

    def test_explicit_duplicate_rejected(self):
        with pytest.raises(NonIncreasingError):
            build_sequence({"kind": "explicit", "nodes": [0.0, 0.0, 1.0]})

    def test_period_mismatch(self):
        with pytest.raises(BadParameterError):
            build_sequence({"kind": "periodic", "offsets": [0.1], "period": 2})

    def test_unknown_kind(self):
        with pytest.raises(BadParameterError):
            build_sequence({"kind": "random"})

    def test_bad_alpha(self):
        with pytest.raises(BadParameterError):
            build_sequence({"kind": "affine", "alpha": -2.0})

    @pytest.mark.parametrize(
        "spec",
        [
            {"kind": "affine", "alpha": 0.9, "beta": 0.25},
            {"kind": "periodic", "period": 2, "offsets": [0.3, -0.3]},
            {"kind": "explicit", "nodes": [0.0, 1.5, 2.0], "index_range": [-1, 1]},
        ],
    )
    def test_json_round_trip(self, spec):
        seq = build_sequence(spec)
        again = build_sequence(sequence_to_json(seq))
        assert sequence_to_json(again) == sequence_to_json(seq)


class TestSeparation:
    def test_integer_lattice(self):
        assert check_separation(AffineGrid(1.0)) == (1.0, True)

    def test_periodic_gap(self):
        gap, separated = check_separation(PeriodicPerturbation((0.3, -0.3)))
        assert separated
        assert gap == pytest.approx(0.4)

    def test_explicit_window(self):
        seq = ExplicitWindow((0.0, 0.05, 1.0))
        gap, separated = check_separation(seq)
        assert gap == pytest.approx(0.05)
        assert separated

    def test_single_node_rejected(self):
        with pytest.raises(EmptyWindowError):
            check_separation(ExplicitWindow((1.0,)))


class TestCanonicalEnumeration:
    def test_shifted_lattice(self):
        enum = canonical_enumeration(AffineGrid(1.0, 0.25), bound=1.0)
        assert enum.offset == 0
        assert np.allclose(enum.deltas, 0.25)

    def test_streched_grid_fails(self):
        enum = canonical_enumeration(AffineGrid(2.0), bound=10.0, window=(-50, 50))
        assert enum is None

    def test_periodic_already_canonical(self):
        enum = canonical_enumeration(PeriodicPerturbation((0.3, -0.3)), bound=1.0)
        assert enum.offset == 0
        assert np.allclose(enum.deltas, [0.3, -0.3])

    def test_reindexing_reduces_sup(self):
        # nodes n + 0.75 re-enumerate as (n+1) - 0.25
        nodes = tuple(n + 0.75 for n in range(12))
        enum = canonical_enumeration(ExplicitWindow(nodes), bound=0.3)
        assert enum.offset == 1
        assert np.allclose(enum.deltas, -0.25)

    def test_idempotent(self):
        nodes = tuple(n + d for n, d in zip(range(8), [0.1, -0.2, 0.3, 0.0, -0.1, 0.2, -0.3, 0.1]))
        first = canonical_enumeration(ExplicitWindow(nodes), bound=1.0)
        rebuilt = ExplicitWindow(
            tuple(n + d for n, d in zip(
                range(first.start_index, first.start_index + len(first.deltas)),
                first.deltas)),
            first.start_index,
        )
        second = canonical_enumeration(rebuilt, bound=1.0)
        assert second.offset == 0
        assert np.allclose(second.deltas, first.deltas)

    def test_bound_must_be_positive(self):
        with pytest.raises(BadParameterError):
            canonical_enumeration(AffineGrid(1.0), bound=0.0)


class TestBeurlingDensities:
    def test_affine_exact(self):
        est = beurling_densities(AffineGrid(0.9), [10])
        assert est.method == "exact_formula"
        assert est.d_plus == pytest.approx(1.0 / 0.9)
        assert est.d_minus == pytest.approx(1.0 / 0.9)

    def test_periodic_exact(self):
        est = beurling_densities(PeriodicPerturbation((0.45, -0.35)), [10])
        assert est.d_plus == est.d_minus == 1.0

    def test_punctured_lattice_sweep(self):
        nodes = tuple(n for n in range(-100, 101) if n != 0)
        est = beurling_densities(ExplicitWindow(nodes, -100), [50.0, 100.0])
        assert est.method == "window_sweep"
        by_r = {r: (up, down) for r, up, down in est.sweep}
        assert by_r[50.0] == pytest.approx((51 / 50, 49 / 50))
        assert by_r[100.0] == pytest.approx((100 / 100, 99 / 100))
        # one missing point washes out as r grows
        assert est.d_minus > by_r[50.0][1]
        assert est.monotone

    def test_removal_changes_at_most_count_over_r(self):
        full = tuple(range(-60, 61))
        holed = tuple(n for n in full if n not in (0, 7, -13))
        for r in (20.0, 30.0):
            e_full = beurling_densities(ExplicitWindow(full, -60), [r])
            e_holed = beurling_densities(ExplicitWindow(holed, -60), [r])
            assert abs(e_full.d_plus - e_holed.d_plus) <= 3 / r + 1e-12
            assert abs(e_full.d_minus - e_holed.d_minus) <= 3 / r + 1e-12

    def test_radius_too_large(self):
        with pytest.raises(WindowTooSmallError):
            beurling_densities(ExplicitWindow(tuple(range(10))), [6.0])


class TestAvdoninVerdict:
    def test_integer_lattice_passes(self):
        v = avdonin_verdict(AffineGrid(1.0))
        assert v.passes and v.delta_star == 0.0 and v.caveat == "exact"

    def test_half_shift_fails_exactly(self):
        v = avdonin_verdict(AffineGrid(1.0, 0.5))
        assert not v.passes
        assert v.delta_star == pytest.approx(0.5, abs=1e-15)
        v2 = avdonin_verdict(PeriodicPerturbation((0.5,)))
        assert not v2.passes
        assert v2.delta_star == pytest.approx(0.5, abs=1e-15)

    def test_three_quarter_shift_reduces(self):
        # {n + 3/4} = {m - 1/4} after re-enumeration
        v = avdonin_verdict(AffineGrid(1.0, 0.75))
        assert v.passes
        assert v.delta_star == pytest.approx(0.25, abs=1e-15)

    def test_periodic_passes_with_period_window(self):
        v = avdonin_verdict(PeriodicPerturbation((0.45, -0.35)))
        assert v.passes
        assert v.window_len == 2
        assert v.delta_star == pytest.approx(0.05, abs=1e-15)

    def test_streched_grid_not_enumerable(self):
        v = avdonin_verdict(AffineGrid(2.0))
        assert not v.enumerable and not v.passes

    def test_large_alternating_period_four(self):
        v = avdonin_verdict(PeriodicPerturbation((0.7, -0.1, -0.7, 0.1)))
        assert v.passes
        assert v.delta_star == pytest.approx(0.0, abs=1e-15)
        assert v.delta_sup == pytest.approx(0.7)

    def test_periodic_mean_equals_bruteforce_window_sweep(self):
        rng = np.random.default_rng(2024)
        for _ in range(25):
            p = int(rng.integers(1, 5))
            offs = rng.uniform(-0.2, 0.2, p)
            offs = offs - offs.mean() + rng.uniform(-0.3, 0.3)
            try:
                seq = PeriodicPerturbation(tuple(offs))
            except NonIncreasingError:
                continue
            v = avdonin_verdict(seq)
            deltas = np.asarray(seq.offsets * 8)  # long tiled window
            mean = abs(float(np.mean(offs)))
            assert v.delta_star == pytest.approx(mean, abs=1e-14)
            # no window length does better than the period mean
            for n in range(1, 4 * p + 1):
                assert window_average_sup(deltas, n) >= mean - 1e-12

    def test_shift_property(self):
        base = np.array([0.12, -0.07, 0.02, -0.05])
        for s in (-0.2, 0.1, 0.3):
            v = avdonin_verdict(PeriodicPerturbation(tuple(base + s)))
            assert v.delta_star == pytest.approx(abs(base.mean() + s), abs=1e-14)

    def test_explicit_window_heuristic(self):
        rng = np.random.default_rng(5)
        deltas = rng.uniform(-0.3, 0.3, 64)
        nodes = tuple(np.arange(64) + deltas)
        v = avdonin_verdict(ExplicitWindow(nodes), n_max=8)
        assert v.caveat == "finite_window_heuristic"
        assert v.enumerable
        # oracle: sweep window averages directly
        best = min(
            max(abs(deltas[i : i + n].mean()) for i in range(64 - n + 1))
            for n in range(1, 9)
        )
        assert v.delta_star == pytest.approx(best, abs=1e-14)

    def test_verdict_json_fields(self):
        v = avdonin_verdict(PeriodicPerturbation((0.45, -0.35)))
        data = v.to_json()
        assert set(data) == {
            "separated", "min_gap", "enumerable", "delta_sup", "best_window",
            "passes", "caveat",
        }
        assert data["best_window"]["N"] == 2


def test_window_average_sup_against_loops():
    deltas = np.array([0.4, -0.1, 0.3, 0.2, -0.5, 0.0, 0.1])
    for n in range(1, 8):
        expected = max(
            abs(sum(deltas[i : i + n]) / n) for i in range(len(deltas) - n + 1)
        )
        assert window_average_sup(deltas, n) == pytest.approx(expected, abs=1e-15)
