"""FRED-MD parsing, transform codes, and dataset alignment."""

import math
from datetime import date

import numpy as np
import pytest
from conftest import toy_fredmd_text

from oospred.exceptions import DataError, FormatError
from oospred.fredmd import (
    apply_tcode,
    build_dataset,
    dump_dataset_csv,
    parse_fredmd,
)

TOY = """sasdate,ALPHA,BETA,GAMMA
Transform:,1,5,2
1/1/1960,1.0,1.0,10.0
2/1/1960,2.0,2.718281828459045,11.5
3/1/1960,3.0,7.38905609893065,13.0
4/1/1960,4.0,20.085536923187668,14.5
"""


class TestParse:
    def test_toy_panel(self):
        panel = parse_fredmd(TOY)
        assert panel.names == ("ALPHA", "BETA", "GAMMA")
        assert panel.tcodes == {"ALPHA": 1, "BETA": 5, "GAMMA": 2}
        assert panel.dates[0] == date(1960, 1, 1)
        assert len(panel.dates) == 4
        np.testing.assert_allclose(panel.series["ALPHA"], [1.0, 2.0, 3.0, 4.0])

    def test_blank_cell_becomes_missing(self):
        text = TOY.replace("2/1/1960,2.0", "2/1/1960,")
        panel = parse_fredmd(text)
        assert math.isnan(panel.series["ALPHA"][1])
        assert np.isnan(panel.series["ALPHA"]).sum() == 1
        assert not np.isnan(panel.series["BETA"]).any()

    def test_bytes_input(self):
        assert parse_fredmd(TOY.encode()).names == ("ALPHA", "BETA", "GAMMA")

    def test_missing_transform_row(self):
        lines = TOY.splitlines()
        del lines[1]
        with pytest.raises(FormatError, match="Transform"):
            parse_fredmd("\n".join(lines))

    def test_ragged_row_located(self):
        text = TOY + "5/1/1960,5.0,1.0\n"
        with pytest.raises(FormatError, match="row 7"):
            parse_fredmd(text)

    def test_bad_date_located(self):
        text = TOY.replace("3/1/1960", "not-a-date")
        with pytest.raises(FormatError, match="row 5"):
            parse_fredmd(text)

    def test_bad_value_located(self):
        text = TOY.replace("11.5", "eleven")
        with pytest.raises(FormatError, match="GAMMA"):
            parse_fredmd(text)

    def test_bad_tcode(self):
        with pytest.raises(FormatError, match="transform code"):
            parse_fredmd(TOY.replace("Transform:,1,5,2", "Transform:,1,5,9"))

    def test_roundtrip_full_precision(self, rng):
        text, _ = toy_fredmd_text(n_months=30, p=2, seed=4)
        panel = parse_fredmd(text)
        again = parse_fredmd(panel.to_csv_text())
        assert again.dates == panel.dates
        assert again.tcodes == panel.tcodes
        for name in panel.names:
            np.testing.assert_array_equal(again.series[name], panel.series[name])


class TestApplyTcode:
    def test_identity(self):
        x = np.array([1.0, 2.0, np.nan, 4.0])
        np.testing.assert_array_equal(apply_tcode(x, 1), x)

    def test_first_difference(self):
        out = apply_tcode(np.array([1.0, 3.0, 6.0]), 2)
        assert math.isnan(out[0])
        np.testing.assert_allclose(out[1:], [2.0, 3.0])

    def test_second_difference(self):
        out = apply_tcode(np.array([1.0, 3.0, 6.0, 10.0]), 3)
        assert np.isnan(out[:2]).all()
        np.testing.assert_allclose(out[2:], [1.0, 1.0])

    def test_log_growth(self):
        out = apply_tcode(np.array([1.0, math.e, math.e**2]), 5)
        assert math.isnan(out[0])
        np.testing.assert_allclose(out[1:], [1.0, 1.0], rtol=1e-12)

    def test_double_log_difference_lags(self):
        out = apply_tcode(np.exp([0.0, 1.0, 3.0, 6.0]), 6)
        assert np.isnan(out[:2]).all()
        np.testing.assert_allclose(out[2:], [1.0, 1.0], rtol=1e-12)

    def test_growth_rate_difference(self):
        x = np.array([100.0, 110.0, 121.0, 133.1])
        out = apply_tcode(x, 7)
        assert np.isnan(out[:2]).all()
        np.testing.assert_allclose(out[2:], [0.0, 0.0], atol=1e-12)

    def test_log_rejects_nonpositive(self):
        with pytest.raises(DataError, match="INDPRO"):
            apply_tcode(np.array([1.0, -2.0, 3.0]), 5, name="INDPRO")

    def test_level_shift_invariance_of_differences(self, rng):
        x = rng.uniform(1, 5, size=20)
        base = apply_tcode(x, 2)
        shifted = apply_tcode(x + 100.0, 2)
        observed = ~np.isnan(base)
        np.testing.assert_allclose(shifted[observed], base[observed], atol=1e-10)


class TestBuildDataset:
    def test_alignment_arithmetic_on_toy_panel(self):
        # all tcodes consume at most maxlag = 1 leading month here; a fully
        # observed panel of T months yields T - maxlag - 1 rows
        text, names = toy_fredmd_text(n_months=20, p=2, seed=1, tcodes=[2, 1, 2])
        panel = parse_fredmd(text)
        sample, report = build_dataset(panel, "TARGET", ["PRED1", "PRED2"])
        assert sample.n == 20 - 1 - 1
        assert report.n == sample.n
        assert report.months[0] == date(1980, 2, 1)

    def test_one_missing_predictor_cell_drops_one_row(self):
        text, _ = toy_fredmd_text(n_months=30, p=2, seed=2)
        lines = text.splitlines()
        cells = lines[12].split(",")
        cells[2] = ""  # PRED1 missing in one month
        lines[12] = ",".join(cells)
        full_panel = parse_fredmd(text)
        holed_panel = parse_fredmd("\n".join(lines))
        full, _ = build_dataset(full_panel, "TARGET", ["PRED1", "PRED2"])
        holed, report = build_dataset(holed_panel, "TARGET", ["PRED1", "PRED2"])
        assert holed.n == full.n - 1
        assert any("PRED1" in reason for _, reason in report.dropped)

    def test_output_complete_and_ordered(self):
        text, _ = toy_fredmd_text(n_months=40, p=3, seed=3, tcodes=[5, 2, 1, 5])
        # make the level series positive for the log codes
        text = text.replace("-", "")
        panel = parse_fredmd(text)
        sample, report = build_dataset(panel, "TARGET", ["PRED1", "PRED2", "PRED3"])
        assert np.isfinite(sample.y).all() and np.isfinite(sample.X).all()
        assert list(report.months) == sorted(report.months)

    def test_no_transform_passthrough(self):
        text, _ = toy_fredmd_text(n_months=20, p=1, seed=5, tcodes=[5, 5])
        text = text.replace("-", "")
        panel = parse_fredmd(text)
        raw_sample, _ = build_dataset(panel, "TARGET", ["PRED1"], transform=False)
        # level values pass through untouched
        assert raw_sample.y[0] == panel.series["TARGET"][0]

    def test_unknown_series(self):
        panel = parse_fredmd(TOY)
        with pytest.raises(DataError, match="NOPE"):
            build_dataset(panel, "NOPE", ["ALPHA"])
        with pytest.raises(DataError, match="NOPE"):
            build_dataset(panel, "ALPHA", ["NOPE"])

    def test_too_few_rows(self):
        panel = parse_fredmd(TOY)
        with pytest.raises(DataError, match="complete rows"):
            build_dataset(panel, "ALPHA", ["GAMMA"])

    def test_dump_csv(self):
        text, _ = toy_fredmd_text(n_months=25, p=2, seed=6)
        sample, report = build_dataset(parse_fredmd(text), "TARGET", ["PRED1", "PRED2"])
        dump = dump_dataset_csv(sample, report)
        lines = dump.splitlines()
        assert lines[0] == "date,y,PRED1,PRED2"
        assert len(lines) == sample.n + 1
        got = float(lines[1].split(",")[1])
        assert got == sample.y[0]
