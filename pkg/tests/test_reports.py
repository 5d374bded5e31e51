import json

from arcperp.reports import (
    dimension_chain,
    dimension_series,
    run_verification,
)


class TestDimensionSeries:
    def test_n1(self):
        rows = dimension_series(1, 3)
        assert [r.dimension for r in rows] == [2, 4, 8, 16]
        assert all(r.match for r in rows)

    def test_n2(self):
        rows = dimension_series(2, 2)
        assert [r.dimension for r in rows] == [3, 9, 27]
        assert all(r.match for r in rows)

    def test_h_max_zero(self):
        rows = dimension_series(1, 0)
        assert [r.dimension for r in rows] == [2]

    def test_closed_form_column(self):
        rows = dimension_series(3, 1)
        assert [(r.h, r.closed_form) for r in rows] == [(0, 4), (1, 16)]

    def test_totals_are_sums_of_graded_dimensions(self):
        from arcperp.perp import truncated_perp_basis

        for n, h in [(1, 2), (2, 1)]:
            graded = truncated_perp_basis(n, h).graded_dimensions
            row = dimension_series(n, h)[-1]
            assert row.dimension == sum(graded.values())


class TestDimensionChain:
    def test_n1_h1(self):
        chain = dimension_chain(1, 1)
        assert (chain.triangular, chain.scaled, chain.scaled_augmented) == (4, 4, 4)
        assert chain.equal
        assert chain.bijection_lands_in_scaled

    def test_n1_h2(self):
        chain = dimension_chain(1, 2)
        assert (chain.triangular, chain.scaled, chain.scaled_augmented) == (8, 8, 8)
        assert chain.equal

    def test_n2_h0(self):
        chain = dimension_chain(2, 0)
        assert (chain.triangular, chain.scaled, chain.scaled_augmented) == (3, 3, 3)
        assert chain.equal


class TestRunVerification:
    def test_n1_h2_all_pass(self):
        report = run_verification(1, 2)
        assert report.passed
        names = [c.name for c in report.checks]
        assert "kernel_equals_hankel_minor_span" in names
        assert "restriction_matches_truncated_minors" in names
        series_check = next(
            c for c in report.checks if c.name == "dimension_series_matches_closed_form"
        )
        assert series_check.dimensions["2"] == 8

    def test_n2_h1_all_pass(self):
        report = run_verification(2, 1)
        assert report.passed
        elim = next(
            c for c in report.checks if c.name == "restriction_matches_truncated_minors"
        )
        assert elim.dimensions["total"] == 9

    def test_n1_h0(self):
        report = run_verification(1, 0)
        assert report.passed
        series_check = next(
            c for c in report.checks if c.name == "dimension_series_matches_closed_form"
        )
        assert series_check.dimensions == {"0": 2}

    def test_deterministic_without_timings(self):
        a = run_verification(1, 1, seed=5).to_dict(include_timings=False)
        b = run_verification(1, 1, seed=5).to_dict(include_timings=False)
        assert a == b
        assert json.dumps(a) == json.dumps(b)

    def test_json_round_trip(self):
        report = run_verification(1, 1)
        parsed = json.loads(report.to_json())
        assert parsed["passed"] is True
        assert parsed["version"] == report.version
        assert all("elapsed_ms" in c for c in parsed["checks"])

    def test_seed_changes_only_sampling_instance(self):
        a = run_verification(1, 1, seed=1).to_dict(include_timings=False)
        b = run_verification(1, 1, seed=2).to_dict(include_timings=False)
        a_names = [c["name"] for c in a["checks"]]
        b_names = [c["name"] for c in b["checks"]]
        assert a_names == b_names
        assert a["passed"] and b["passed"]
