"""Corpus ingestion: parsing, tokenization, stop words, indexing, serialization."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topikrank.corpus import (
    build_corpus,
    document_offsets,
    load_corpus,
    load_stoplist,
    parse_blog_file,
    parse_corpus,
    read_document_text,
    remove_stopwords,
    save_corpus,
    serialize_corpus,
    tokenize,
)
from topikrank.errors import ValidationError


class TestParseBlogFile:
    def test_minimal_well_formed(self):
        raw = parse_blog_file(
            b"<Blog><date>01,May,2004</date><post> hello world </post></Blog>",
            "123.male.24.Arts.Aries.xml",
        )
        assert raw.author_id == "123"
        assert raw.post_texts == ["hello world"]

    def test_empty_blog(self):
        assert parse_blog_file(b"<Blog></Blog>", "9.f.x.y.z.xml").post_texts == []

    def test_post_order_preserved(self):
        raw = parse_blog_file(b"<Blog><post>a b</post><post>c</post></Blog>", "1.xml")
        assert raw.post_texts == ["a b", "c"]

    def test_residual_tags_stripped(self):
        raw = parse_blog_file(b"<Blog><post>one <br> two <em>three</em></post></Blog>", "1.xml")
        assert raw.post_texts == ["one  two three"]

    def test_lossy_decode_of_bad_bytes(self):
        raw = parse_blog_file(b"<Blog><post>caf\xe9 time</post></Blog>", "1.xml")
        assert raw.post_texts[0].startswith("caf")
        assert "time" in raw.post_texts[0]

    def test_author_id_up_to_first_dot(self):
        assert parse_blog_file(b"<Blog></Blog>", "42.female.30.indUnk.Leo.xml").author_id == "42"


class TestTokenize:
    def test_case_and_punctuation(self):
        assert tokenize("Hello, World!") == ["hello", "world"]

    def test_length_filter(self):
        assert tokenize("I a") == []

    def test_apostrophe_splits(self):
        assert tokenize("don't stop") == ["don", "stop"]

    def test_digits_split(self):
        assert tokenize("abc123def") == ["abc", "def"]

    @given(st.text(max_size=300))
    def test_tokens_are_lowercase_alpha_min2(self, text):
        for tok in tokenize(text):
            assert len(tok) >= 2
            assert tok == tok.lower()
            assert tok.isascii() and tok.isalpha()

    @given(st.text(max_size=300))
    def test_retokenizing_output_is_stable(self, text):
        toks = tokenize(text)
        assert tokenize(" ".join(toks)) == toks


class TestRemoveStopwords:
    def test_basic(self):
        assert remove_stopwords(["the", "cat", "sat"], {"the", "a", "an"}) == ["cat", "sat"]

    def test_empty(self):
        assert remove_stopwords([], {"the"}) == []

    def test_repeated_stopword(self):
        assert remove_stopwords(["the", "the"], {"the"}) == []


class TestStoplist:
    def test_bundled_list(self):
        stoplist = load_stoplist()
        assert len(stoplist) > 400
        assert "the" in stoplist and "and" in stoplist
        assert all(w == w.lower() for w in stoplist)
        # contraction stems are real topic words in blog text, not stop words
        assert "don" not in stoplist and "ve" not in stoplist

    def test_custom_file(self, tmp_path):
        f = tmp_path / "stop.txt"
        f.write_text("foo\nbar\n")
        assert load_stoplist(f) == {"foo", "bar"}


def _write(directory, name, posts):
    body = "".join(f"<post>{p}</post>" for p in posts)
    (directory / name).write_bytes(f"<Blog>{body}</Blog>".encode())


class TestBuildCorpus:
    def test_counts(self, tmp_path):
        _write(tmp_path, "1.male.20.Arts.Leo.xml", ["cat dog"])
        _write(tmp_path, "2.male.20.Arts.Leo.xml", ["dog bird"])
        corpus = build_corpus(tmp_path, set())
        assert corpus.num_documents == 2
        assert corpus.num_words == 3

    def test_all_stopword_file_excluded(self, tmp_path):
        _write(tmp_path, "1.xml", ["cat dog"])
        _write(tmp_path, "2.xml", ["the the"])
        corpus = build_corpus(tmp_path, {"the"})
        assert corpus.num_documents == 1
        assert corpus.documents[0].author_id == "1"

    def test_filename_order_defines_doc_ids(self, tmp_path):
        _write(tmp_path, "c.xml", ["cat"])
        _write(tmp_path, "a.xml", ["dog"])
        _write(tmp_path, "b.xml", ["bird"])
        corpus = build_corpus(tmp_path, set())
        assert [d.author_id for d in corpus.documents] == ["a", "b", "c"]
        assert [d.doc_id for d in corpus.documents] == [0, 1, 2]

    def test_empty_directory_fatal(self, tmp_path):
        with pytest.raises(ValidationError):
            build_corpus(tmp_path, set())

    def test_no_stopword_survives(self, tmp_path, mini_corpus_dir):
        stoplist = load_stoplist()
        corpus = build_corpus(mini_corpus_dir, stoplist)
        for doc in corpus.documents:
            for t in doc.tokens:
                assert corpus.vocabulary.word(t) not in stoplist

    def test_vocabulary_round_trip(self, mini_corpus_dir):
        corpus = build_corpus(mini_corpus_dir, load_stoplist())
        for i in range(corpus.num_words):
            assert corpus.vocabulary.index(corpus.vocabulary.word(i)) == i

    def test_token_count_matches_per_post_tokenization(self, tmp_path):
        posts = ["The cat sat", "on the Mat!"]
        _write(tmp_path, "1.xml", posts)
        stoplist = {"the", "on"}
        corpus = build_corpus(tmp_path, stoplist)
        expected = sum(len(remove_stopwords(tokenize(p), stoplist)) for p in posts)
        assert len(corpus.documents[0].tokens) == expected

    def test_deterministic(self, mini_corpus_dir):
        stoplist = load_stoplist()
        a = serialize_corpus(build_corpus(mini_corpus_dir, stoplist))
        b = serialize_corpus(build_corpus(mini_corpus_dir, stoplist))
        assert a == b


class TestCorpusFile:
    def test_round_trip(self, tmp_path, mini_corpus_dir):
        corpus = build_corpus(mini_corpus_dir, load_stoplist())
        path = tmp_path / "corpus.txt"
        save_corpus(corpus, path)
        loaded = load_corpus(path)
        assert serialize_corpus(loaded) == serialize_corpus(corpus)
        assert loaded.content_hash == corpus.content_hash

    def test_bad_header(self):
        with pytest.raises(ValidationError):
            parse_corpus("not a header\n")

    def test_truncated(self):
        with pytest.raises(ValidationError):
            parse_corpus("2 2\napple\nbanana\n0\tX\t0 1\n")

    def test_token_out_of_range(self):
        with pytest.raises(ValidationError):
            parse_corpus("1 2\napple\nbanana\n0\tX\t0 5\n")

    def test_offsets_and_text_reconstruction(self, tmp_path):
        _write(tmp_path, "7.xml", ["cat dog cat"])
        _write(tmp_path, "8.xml", ["bird"])
        corpus = build_corpus(tmp_path, set())
        path = tmp_path / "corpus.txt"
        save_corpus(corpus, path)
        offsets = document_offsets(path)
        assert len(offsets) == 2
        author, text = read_document_text(path, offsets[0], corpus.vocabulary)
        assert author == "7"
        assert text == "cat dog cat"
