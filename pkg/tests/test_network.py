"""Similarity metrics against high-precision references; network construction."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import networkx as nx

from topikrank.errors import ValidationError
from topikrank.network import (
    build_network,
    cosine,
    load_network,
    pearson,
    save_graphml,
    save_network,
)

finite_floats = st.floats(min_value=0.0, max_value=1e6, allow_nan=False)


def cosine_reference(u, v):
    """Naive formula in 80-bit extended precision."""
    u = np.asarray(u, dtype=np.longdouble)
    v = np.asarray(v, dtype=np.longdouble)
    return float((u * v).sum() / (np.sqrt((u * u).sum()) * np.sqrt((v * v).sum())))


def pearson_reference(u, v):
    u = np.asarray(u, dtype=np.longdouble)
    v = np.asarray(v, dtype=np.longdouble)
    du = u - u.mean()
    dv = v - v.mean()
    su = (du * du).sum()
    sv = (dv * dv).sum()
    if su == 0 or sv == 0:
        return None
    return float((du * dv).sum() / (np.sqrt(su) * np.sqrt(sv)))


def mpmath_cosine(u, v):
    import mpmath

    with mpmath.workdps(50):
        dot = mpmath.fsum(mpmath.mpf(a) * mpmath.mpf(b) for a, b in zip(u, v))
        nu = mpmath.sqrt(mpmath.fsum(mpmath.mpf(a) ** 2 for a in u))
        nv = mpmath.sqrt(mpmath.fsum(mpmath.mpf(b) ** 2 for b in v))
        return float(dot / (nu * nv))


class TestCosine:
    def test_identical_vectors(self):
        assert cosine([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == pytest.approx(1.0, abs=1e-15)

    def test_orthogonal(self):
        assert cosine([1.0, 0.0], [0.0, 1.0]) == 0.0

    def test_hand_example(self):
        assert cosine([1.0, 1.0], [1.0, 0.0]) == pytest.approx(1.0 / math.sqrt(2), abs=1e-15)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValidationError):
            cosine([0.0, 0.0], [1.0, 0.0])

    def test_negative_entries_rejected(self):
        with pytest.raises(ValidationError):
            cosine([-1.0, 1.0], [1.0, 1.0])

    @given(
        st.lists(finite_floats, min_size=2, max_size=20),
        st.floats(min_value=1e-3, max_value=1e3),
    )
    @settings(max_examples=100)
    def test_symmetry_and_scale_invariance(self, values, c):
        u = np.array(values) + 0.001  # keep away from the zero vector
        v = (u[::-1]).copy()
        assert cosine(u, v) == cosine(v, u)
        assert cosine(c * u, v) == pytest.approx(cosine(u, v), abs=1e-12)
        assert 0.0 <= cosine(u, v) <= 1.0

    def test_matches_longdouble_reference(self):
        rng = np.random.default_rng(5)
        for length in (3, 100, 19_320):
            for _ in range(20):
                u = rng.random(length)
                v = rng.random(length)
                assert cosine(u, v) == pytest.approx(cosine_reference(u, v), abs=1e-12)

    def test_matches_mpmath_reference(self):
        rng = np.random.default_rng(6)
        for length in (3, 100, 2000):
            u = rng.random(length)
            v = rng.random(length)
            assert cosine(u, v) == pytest.approx(mpmath_cosine(u, v), abs=1e-13)


class TestPearson:
    def test_perfect_positive(self):
        assert pearson([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]) == pytest.approx(1.0, abs=1e-15)

    def test_perfect_negative(self):
        assert pearson([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == pytest.approx(-1.0, abs=1e-15)

    def test_hand_example(self):
        # u-mean=(-1,0,1), v-mean=(-1,1,0): num=1, den=sqrt(2)*sqrt(2)
        assert pearson([1.0, 2.0, 3.0], [1.0, 3.0, 2.0]) == pytest.approx(0.5, abs=1e-15)

    def test_constant_vector_is_undefined_not_zero(self):
        assert pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) is None
        assert pearson([1.0, 2.0, 3.0], [5.0, 5.0, 5.0]) is None

    def test_too_short_rejected(self):
        with pytest.raises(ValidationError):
            pearson([1.0], [2.0])

    @given(
        st.lists(st.floats(min_value=-100, max_value=100, allow_nan=False), min_size=3, max_size=20),
        st.floats(min_value=1e-2, max_value=1e2),
        st.floats(min_value=-10, max_value=10),
    )
    @settings(max_examples=100)
    def test_affine_invariance_and_range(self, values, a, b):
        u = np.round(np.array(values), 2)
        if u.max() - u.min() < 0.05:
            return  # shift would erase the variance in float64
        v = np.sin(u) + np.linspace(0, 1, len(u))  # arbitrary companion
        r = pearson(u, v)
        if r is None:
            return
        assert -1.0 <= r <= 1.0
        assert pearson(v, u) == r
        r2 = pearson(a * u + b, v)
        assert r2 == pytest.approx(r, abs=1e-9)

    def test_matches_longdouble_reference(self):
        rng = np.random.default_rng(7)
        for length in (3, 100, 19_320):
            for _ in range(20):
                u = rng.uniform(-1, 1, length)
                v = rng.uniform(-1, 1, length)
                assert pearson(u, v) == pytest.approx(pearson_reference(u, v), abs=1e-12)


class TestBuildNetwork:
    def test_positive_features_cosine_complete(self):
        rng = np.random.default_rng(1)
        features = rng.random((6, 9)) + 0.01
        net = build_network(features, "cosine")
        assert net.edge_count == 6 * 5 // 2
        assert net.metric == "cosine"

    def test_pearson_prunes_nonpositive(self):
        features = np.array(
            [
                [1.0, 2.0, 3.0],
                [3.0, 2.0, 1.0],  # correlation -1 with row 0
                [1.0, 2.0, 2.9],  # strongly positive with row 0
            ]
        )
        net = build_network(features, "pearson")
        pairs = {(i, j) for i, j, _ in net.edges}
        assert (0, 1) not in pairs and (1, 2) not in pairs
        assert (0, 2) in pairs
        assert all(w > 0 for _, _, w in net.edges)

    def test_identical_and_orthogonal_rows(self):
        features = np.array(
            [
                [1.0, 1.0, 0.0, 0.0],
                [1.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 1.0],
            ]
        )
        net = build_network(features, "cosine")
        assert [(i, j) for i, j, _ in net.edges] == [(0, 1)]
        assert net.edges[0][2] == pytest.approx(1.0, abs=1e-15)

    def test_undefined_pearson_pair_contributes_no_edge(self):
        features = np.array(
            [
                [0.5, 0.5, 0.5],  # constant: undefined against everything
                [1.0, 2.0, 3.0],
                [1.0, 2.0, 3.5],
            ]
        )
        net = build_network(features, "pearson")
        assert {(i, j) for i, j, _ in net.edges} == {(1, 2)}

    def test_unknown_metric_names_valid_ones(self):
        with pytest.raises(ValidationError, match="cosine.*pearson"):
            build_network(np.ones((2, 2)), "jaccard")

    def test_order_independent(self):
        rng = np.random.default_rng(2)
        features = rng.random((5, 7)) + 0.01
        net = build_network(features, "pearson")
        for i, j, w in net.edges:
            assert pearson(features[i], features[j]) == w
            assert pearson(features[j], features[i]) == w


class TestNetworkFiles:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(3)
        net = build_network(rng.random((5, 8)) + 0.01, "cosine", corpus_hash="abc123")
        path = tmp_path / "net.tsv"
        save_network(net, path)
        loaded = load_network(path)
        assert loaded.metric == "cosine"
        assert loaded.node_count == 5
        assert loaded.corpus_hash == "abc123"
        assert loaded.edges == net.edges  # exact float round-trip

    def test_missing_header_rejected(self, tmp_path):
        path = tmp_path / "net.tsv"
        path.write_text("0\t1\t0.5\n")
        with pytest.raises(ValidationError):
            load_network(path)

    def test_graphml_export(self, tmp_path):
        net = build_network(np.random.default_rng(4).random((4, 6)) + 0.01, "cosine")
        path = tmp_path / "net.graphml"
        save_graphml(net, path)
        g = nx.read_graphml(path)
        assert g.number_of_nodes() == 4
        assert g.number_of_edges() == net.edge_count
