"""Label ingestion and per-topic document rankings."""

import numpy as np
import pytest

from topikrank.errors import ValidationError
from topikrank.ranking import document_ranking, label_for, load_labels


class TestLoadLabels:
    def test_basic_line(self, tmp_path):
        f = tmp_path / "labels.tsv"
        f.write_text("0\tGood times\n")
        assert load_labels(f, k=10) == {0: "Good times"}

    def test_empty_file_means_all_defaults(self, tmp_path):
        f = tmp_path / "labels.tsv"
        f.write_text("")
        labels = load_labels(f, k=3)
        assert labels == {}
        assert label_for(labels, 2) == "Topic-2"

    def test_mixed_is_a_legal_label(self, tmp_path):
        f = tmp_path / "labels.tsv"
        f.write_text("4\tMixed\n")
        assert load_labels(f, k=5)[4] == "Mixed"

    def test_id_out_of_range_with_line_number(self, tmp_path):
        f = tmp_path / "labels.tsv"
        f.write_text("0\tfine\n150\tx\n")
        with pytest.raises(ValidationError, match=":2:"):
            load_labels(f, k=100)

    def test_duplicate_id_rejected(self, tmp_path):
        f = tmp_path / "labels.tsv"
        f.write_text("3\ta\n3\tb\n")
        with pytest.raises(ValidationError, match="duplicate"):
            load_labels(f, k=5)

    def test_non_integer_id_rejected(self, tmp_path):
        f = tmp_path / "labels.tsv"
        f.write_text("abc\tx\n")
        with pytest.raises(ValidationError):
            load_labels(f, k=5)


class TestDocumentRanking:
    FEATURES = np.array([[0.1, 0.9, 0.5], [0.3, 0.3, 0.4]])

    def test_sort_and_truncate(self):
        assert document_ranking(self.FEATURES, 0, limit=2) == [(1, 0.9), (2, 0.5)]

    def test_limit_beyond_d_returns_all(self):
        assert len(document_ranking(self.FEATURES, 0, limit=50)) == 3

    def test_tie_broken_by_doc_id(self):
        features = np.array([[0.5, 0.5]])
        assert document_ranking(features, 0, limit=2) == [(0, 0.5), (1, 0.5)]

    def test_topic_out_of_range(self):
        with pytest.raises(ValidationError):
            document_ranking(self.FEATURES, 7)

    def test_bad_limit(self):
        with pytest.raises(ValidationError):
            document_ranking(self.FEATURES, 0, limit=0)
