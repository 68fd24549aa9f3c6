import math

import numpy as np
import pytest

from streamkc.cli import main
from streamkc.experiment import (
    ExperimentConfig,
    estimate_diameter,
    generate_ball_stream,
    ingest,
    inject_outliers,
    injection_prob,
    read_metrics,
    run_experiment,
    write_points,
    TIMING_COLUMNS,
)


class TestIngest:
    def test_two_points(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1.0,2.0\n3.0,4.0\n")
        pts = list(ingest(f))
        assert [p.coords for p in pts] == [(1.0, 2.0), (3.0, 4.0)]
        assert [p.arrival for p in pts] == [1, 2]

    def test_whitespace_separated(self, tmp_path):
        f = tmp_path / "d.txt"
        f.write_text("1 2\n3\t4\n")
        assert [p.coords for p in ingest(f)] == [(1.0, 2.0), (3.0, 4.0)]

    def test_empty_file(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("")
        assert list(ingest(f)) == []

    def test_header_skipped(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("x,y\n1.0,2.0\n")
        assert [p.coords for p in ingest(f)] == [(1.0, 2.0)]

    def test_nan_rejected_with_line_number(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1.0,2.0\nnan,3.0\n")
        with pytest.raises(ValueError, match=":2"):
            list(ingest(f))

    def test_ragged_row_rejected(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(ValueError, match=":2"):
            list(ingest(f))

    def test_non_numeric_mid_file_rejected(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1.0,2.0\noops,3.0\n")
        with pytest.raises(ValueError, match=":2"):
            list(ingest(f))


class TestInjectOutliers:
    def _stream(self, n=50, dim=3, seed=1):
        rng = np.random.default_rng(seed)
        from streamkc.core import Point

        return [
            Point(i + 1, tuple(map(float, rng.random(dim)))) for i in range(n)
        ]

    def test_prob_zero_identity(self):
        pts = self._stream()
        out = list(inject_outliers(pts, 0.0, 100.0, seed=3, diameter=1.0))
        assert out == pts

    def test_prob_one_doubles(self):
        pts = self._stream(n=20)
        out = list(inject_outliers(pts, 1.0, 100.0, seed=3, diameter=1.0))
        assert len(out) == 40
        assert [p.arrival for p in out] == list(range(1, 41))

    def test_injected_norms(self):
        pts = self._stream(n=30)
        diameter = 2.5
        out = list(inject_outliers(pts, 1.0, 100.0, seed=5, diameter=diameter))
        injected = out[1::2]
        for q in injected:
            assert math.hypot(*q.coords) == pytest.approx(100.0 * diameter)

    def test_expected_rate_helper(self):
        assert injection_prob(10, 10_000) == pytest.approx(0.0005)
        assert injection_prob(10**9, 10) == 1.0


def test_estimate_diameter_symmetric_set():
    pts_coords = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
    from streamkc.core import Point

    pts = [Point(i + 1, c) for i, c in enumerate(pts_coords)]
    assert estimate_diameter(pts) == pytest.approx(2.0)


class TestRunExperiment:
    def _dataset(self, tmp_path, n=60, dim=2, seed=0):
        coords = generate_ball_stream(n, dim=dim, seed=seed)
        path = tmp_path / "data.csv"
        write_points(coords, path)
        return path

    def _cfg(self, tmp_path, **kw):
        data = kw.pop("input_path", None) or self._dataset(tmp_path)
        out = tmp_path / kw.pop("output_name", "metrics.csv")
        base = dict(
            input_path=str(data),
            output_path=str(out),
            algorithm="sliding",
            window_len=20,
            k=2,
            z=2,
            query_every=10,
            seed=3,
        )
        base.update(kw)
        return ExperimentConfig(**base)

    def test_query_schedule(self, tmp_path):
        # stream of 60, window 20, every 10: queries at 30, 40, 50, 60
        cfg = self._cfg(tmp_path)
        rows = read_metrics(run_experiment(cfg))
        assert [int(r["timestep"]) for r in rows] == [30, 40, 50, 60]

    def test_gon_memory_is_window_times_dim(self, tmp_path):
        cfg = self._cfg(tmp_path, algorithm="gon")
        rows = read_metrics(run_experiment(cfg))
        assert all(int(r["memory_floats"]) == 20 * 2 for r in rows)

    def test_determinism_modulo_timing(self, tmp_path):
        cfg_a = self._cfg(tmp_path, output_name="a.csv", algorithm="samp-charikar",
                          sample_size=5)
        cfg_b = self._cfg(tmp_path, output_name="b.csv", algorithm="samp-charikar",
                          sample_size=5)
        rows_a = read_metrics(run_experiment(cfg_a))
        rows_b = read_metrics(run_experiment(cfg_b))
        strip = lambda rows: [
            {k: v for k, v in r.items() if k not in TIMING_COLUMNS} for r in rows
        ]
        assert strip(rows_a) == strip(rows_b)

    def test_sliding_rows_have_radius_and_memory(self, tmp_path):
        cfg = self._cfg(tmp_path)
        rows = read_metrics(run_experiment(cfg))
        for r in rows:
            assert float(r["radius"]) >= 0.0
            assert int(r["uncovered"]) <= cfg.z
            assert int(r["memory_floats"]) > 0

    def test_eff_sliding_and_sequential_agree_roughly(self, tmp_path):
        data = self._dataset(tmp_path, n=80, dim=2, seed=5)
        rows_sl = read_metrics(
            run_experiment(
                self._cfg(tmp_path, input_path=data, output_name="sl.csv",
                          algorithm="eff-sliding", alpha=0.9, eps=0.9, eta=0.3,
                          window_len=30, query_every=25)
            )
        )
        rows_sq = read_metrics(
            run_experiment(
                self._cfg(tmp_path, input_path=data, output_name="sq.csv",
                          algorithm="eff-sequential", alpha=0.9,
                          window_len=30, query_every=25)
            )
        )
        assert len(rows_sl) == len(rows_sq) > 0
        for a, b in zip(rows_sl, rows_sq):
            if a["saturated"] == "1":
                continue
            lo, hi = float(a["eff_lower"]), float(a["eff_upper"])
            val = float(b["eff_lower"])
            assert lo <= val * 1.01 and val <= hi * 1.01

    def test_config_errors_reported_before_streaming(self, tmp_path):
        with pytest.raises(ValueError):
            self._cfg(tmp_path, algorithm="wat").validate()
        with pytest.raises(ValueError):
            self._cfg(tmp_path, mode="fixed").validate()  # missing d bounds
        cfg = self._cfg(tmp_path, window_len=4, k=5, z=0)
        with pytest.raises(ValueError):
            cfg.validate()

    def test_injection_in_pipeline(self, tmp_path):
        cfg = self._cfg(tmp_path, inject_prob=1.0, outlier_scale=10.0)
        rows = read_metrics(run_experiment(cfg))
        # stream doubled: queries now reach timestep 120
        assert [int(r["timestep"]) for r in rows][-1] == 120


class TestCli:
    def test_synth_and_run(self, tmp_path, capsys):
        data = tmp_path / "ball.csv"
        metrics = tmp_path / "m.csv"
        assert main([
            "synth", "--output", str(data), "--n", "50", "--dim", "2",
            "--seed", "1",
        ]) == 0
        assert main([
            "run", "--input", str(data), "--output", str(metrics),
            "--algorithm", "sliding", "--window", "20", "--k", "2", "--z", "1",
            "--query-every", "10",
        ]) == 0
        rows = read_metrics(metrics)
        assert rows and all(r["radius"] for r in rows)

    def test_bad_config_exits_nonzero(self, tmp_path, capsys):
        rc = main([
            "run", "--input", str(tmp_path / "missing.csv"), "--output",
            str(tmp_path / "m.csv"), "--algorithm", "sliding", "--window", "20",
        ])
        assert rc == 1
        assert "error:" in capsys.readouterr().err
