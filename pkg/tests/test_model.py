import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import grid_fraction, grid_fraction_brute
from spectrum_dsa.model import (
    Region,
    Scenario,
    Transmitter,
    coverage_correction,
    disk_rect_area,
    overlaps,
)


def tx(i, x, y, r, b=1):
    return Transmitter(i, float(x), float(y), b, float(r))


class TestOverlaps:
    def test_coincident_centers(self):
        assert overlaps(tx(1, 0, 0, 5), tx(2, 0, 0, 5))

    def test_tangent_disks_do_not_overlap(self):
        assert not overlaps(tx(1, 0, 0, 5), tx(2, 10, 0, 5))

    def test_distance_13_against_16(self):
        assert overlaps(tx(1, 0, 0, 8), tx(2, 12, 5, 8))

    @given(
        st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 30),
        st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 30),
    )
    def test_symmetric(self, x1, y1, r1, x2, y2, r2):
        a, b = tx(1, x1, y1, r1), tx(2, x2, y2, r2)
        assert overlaps(a, b) == overlaps(b, a)

    @given(
        st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 30),
        st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 30), st.floats(0, 20),
    )
    def test_growing_radius_keeps_overlap(self, x1, y1, r1, x2, y2, r2, grow):
        a, b = tx(1, x1, y1, r1), tx(2, x2, y2, r2)
        if overlaps(a, b):
            assert overlaps(tx(1, x1, y1, r1 + grow), b)


class TestValidation:
    def test_region_needs_positive_extent(self):
        with pytest.raises(ValueError):
            Region(0, 0, 0, 1)

    def test_region_must_be_finite(self):
        with pytest.raises(ValueError):
            Region(0, math.inf, 0, 1)

    @pytest.mark.parametrize("b", [0, -1])
    def test_bandwidth_at_least_one(self, b):
        with pytest.raises(ValueError):
            Transmitter(1, 0.0, 0.0, b, 1.0)

    def test_bandwidth_is_integral(self):
        with pytest.raises(TypeError):
            Transmitter(1, 0.0, 0.0, 1.5, 1.0)

    @pytest.mark.parametrize("r", [0.0, -2.0, math.inf, math.nan])
    def test_radius_positive_finite(self, r):
        with pytest.raises(ValueError):
            Transmitter(1, 0.0, 0.0, 1, r)

    def test_ids_contiguous(self):
        with pytest.raises(ValueError):
            Scenario(Region.square(10), (tx(1, 1, 1, 1), tx(3, 2, 2, 1)), 5)

    def test_center_inside_region(self):
        with pytest.raises(ValueError):
            Scenario(Region.square(10), (tx(1, 11, 1, 1),), 5)

    def test_total_bandwidth_positive(self):
        with pytest.raises(ValueError):
            Scenario(Region.square(10), (tx(1, 1, 1, 1),), 0)


class TestCoverageCorrection:
    region = Region.square(100)

    def test_inside(self):
        assert coverage_correction(tx(1, 50, 50, 10), self.region) == 1.0

    def test_edge_half(self):
        assert coverage_correction(tx(1, 50, 0, 10), self.region) == pytest.approx(0.5, abs=1e-9)

    def test_corner_quarter(self):
        assert coverage_correction(tx(1, 0, 0, 10), self.region) == pytest.approx(0.25, abs=1e-9)

    def test_far_corner_quarter(self):
        assert coverage_correction(tx(1, 100, 100, 30), self.region) == pytest.approx(0.25, abs=1e-9)

    def test_disk_covering_small_region(self):
        small = Region.square(1.0)
        c = coverage_correction(tx(1, 0.5, 0.5, 10), small)
        assert c == pytest.approx(1.0 / (math.pi * 100), rel=1e-12)

    def test_rejects_center_outside(self):
        with pytest.raises(ValueError):
            coverage_correction(tx(1, -1, 50, 10), self.region)

    def test_grid_oracle_1e7_cells(self):
        rng = np.random.default_rng(20261016)
        for _ in range(5):
            reg = (0.0, 100.0, 0.0, 100.0)
            cx, cy = rng.uniform(0, 100, 2)
            r = rng.uniform(8, 40)
            got = coverage_correction(tx(1, cx, cy, r), self.region)
            assert got == pytest.approx(grid_fraction(cx, cy, r, reg), abs=1e-4)

    def test_row_tally_matches_cellwise_count(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            reg = (0.0, 30.0, 0.0, 20.0)
            cx, cy = rng.uniform(0, 30), rng.uniform(0, 20)
            r = rng.uniform(1, 25)
            assert grid_fraction(cx, cy, r, reg, 500) == grid_fraction_brute(cx, cy, r, reg, 500)

    @given(
        st.floats(0, 1), st.floats(0, 1), st.floats(0.01, 3), st.floats(0.1, 3),
        st.floats(1e-3, 1e3),
    )
    def test_scale_invariant_and_bounded(self, u, v, r, aspect, k):
        reg = Region(0.0, 1.0, 0.0, aspect)
        t = tx(1, u, v * aspect, r)
        c = coverage_correction(t, reg)
        assert 0.0 < c <= 1.0
        scaled = coverage_correction(
            tx(1, u * k, v * aspect * k, r * k), Region(0.0, k, 0.0, aspect * k)
        )
        assert scaled == pytest.approx(c, abs=1e-9)

    def test_area_outside_rectangle_is_zero(self):
        assert disk_rect_area(0, 0, 1, 5, 6, 5, 6) == 0.0

    def test_full_disk_area(self):
        assert disk_rect_area(0, 0, 2, -5, 5, -5, 5) == pytest.approx(4 * math.pi, rel=1e-12)


class TestSerialization:
    def test_round_trip(self, fig2_like):
        again = Scenario.from_json(fig2_like.to_json())
        assert again == fig2_like
        assert again.to_json() == fig2_like.to_json()

    def test_document_shape(self, fig2_like):
        doc = fig2_like.to_dict()
        assert set(doc) == {"region", "total_bandwidth", "transmitters"}
        assert set(doc["region"]) == {"x_min", "x_max", "y_min", "y_max"}
        assert set(doc["transmitters"][0]) == {"id", "x", "y", "bandwidth", "radius"}

    def test_malformed(self):
        with pytest.raises(ValueError):
            Scenario.from_json("{not json")
        with pytest.raises(ValueError):
            Scenario.from_json('{"region": {}}')

    def test_digest_tracks_content(self, fig2_like):
        assert fig2_like.digest() == Scenario.from_json(fig2_like.to_json()).digest()
        other = Scenario(fig2_like.region, fig2_like.transmitters, 11)
        assert other.digest() != fig2_like.digest()
