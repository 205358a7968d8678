"""Deterministic stream semantics."""

import numpy as np
import pytest

from riesz_mmd import RngStream


class TestRngStream:
    def test_same_stream_same_draw(self):
        a = RngStream(42).generator().standard_normal(16)
        b = RngStream(42).generator().standard_normal(16)
        np.testing.assert_array_equal(a, b)

    def test_streams_are_values_not_state(self):
        s = RngStream(7, 3)
        first = s.generator().standard_normal(8)
        second = s.generator().standard_normal(8)
        np.testing.assert_array_equal(first, second)

    def test_distinct_seeds_differ(self):
        a = RngStream(1).generator().standard_normal(16)
        b = RngStream(2).generator().standard_normal(16)
        assert not np.array_equal(a, b)

    def test_split_is_deterministic(self):
        s = RngStream(9)
        assert s.split(5) == s.split(5)
        assert s.split(5) != s.split(6)

    def test_split_children_are_distinct_from_parent(self):
        s = RngStream(0)
        ids = {s.stream_id}
        for k in range(1000):
            ids.add(s.split(k).stream_id)
        assert len(ids) == 1001

    def test_nested_splits_do_not_collide(self):
        s = RngStream(123)
        ids = set()
        for k in range(50):
            child = s.split(k)
            ids.add(child.stream_id)
            for j in range(50):
                ids.add(child.split(j).stream_id)
        assert len(ids) == 50 + 50 * 50

    def test_split_streams_look_independent(self):
        # Crude independence check: correlations across 200 substreams
        # stay within CLT range.
        s = RngStream(77)
        draws = np.stack([s.split(k).generator().standard_normal(256) for k in range(200)])
        corr = draws @ draws.T / 256
        off_diag = corr[~np.eye(200, dtype=bool)]
        assert np.max(np.abs(off_diag)) < 5.0 / np.sqrt(256)

    def test_negative_split_index_rejected(self):
        with pytest.raises(ValueError):
            RngStream(0).split(-1)

    def test_seeds_reduced_modulo_64_bits(self):
        assert RngStream(2**64 + 5).seed == 5
        assert RngStream(-1).seed == 2**64 - 1
