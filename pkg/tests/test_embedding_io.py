"""EmbeddingModel invariants and the text serialization format."""

import io

import numpy as np
import pytest

from wordassoc import (
    EmbeddingModel,
    Vocabulary,
    read_embeddings,
    write_embeddings,
)
from wordassoc.errors import (
    DimensionMismatch,
    MalformedHeader,
    MalformedRecord,
    NumericError,
)


def model_of(words, matrix, **kw):
    return EmbeddingModel(words=tuple(words),
                          matrix=np.asarray(matrix, np.float32), **kw)


def test_written_text_format():
    m = model_of(["north", "wind"], [[0.25, -1.0, 1000000.0],
                                     [1.5, 0.000123456, 0.0]])
    buf = io.StringIO()
    write_embeddings(m, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "2 3"
    assert lines[1] == "north 0.25 -1 1e+06"
    assert lines[2] == "wind 1.5 0.000123456 0"


def test_round_trip_path_within_six_significant_digits(tmp_path, rng):
    mat = rng.normal(0, 2.0, (7, 5)).astype(np.float32)
    m = model_of([f"w{i}" for i in range(7)], mat)
    path = tmp_path / "m.vec"
    write_embeddings(m, path)
    back = read_embeddings(path)
    assert back.words == m.words
    assert back.kind is None and back.flavor is None and back.vocab is None
    np.testing.assert_allclose(back.matrix, mat, rtol=1e-5, atol=0)


def test_read_from_stream():
    text = "1 2\nword 0.5 -0.25\n"
    m = read_embeddings(io.StringIO(text))
    assert m.words == ("word",)
    np.testing.assert_array_equal(m.matrix, [[0.5, -0.25]])


@pytest.mark.parametrize("header", ["", "3", "a b", "2 3 4", "-1 3", "2 0"])
def test_bad_headers(header):
    with pytest.raises(MalformedHeader):
        read_embeddings(io.StringIO(header + "\nword 1 2 3\n"))


def test_row_width_mismatch():
    with pytest.raises(DimensionMismatch):
        read_embeddings(io.StringIO("1 3\nword 1 2\n"))


def test_row_count_mismatch():
    with pytest.raises(DimensionMismatch):
        read_embeddings(io.StringIO("2 2\nonly 1 2\n"))
    with pytest.raises(DimensionMismatch):
        read_embeddings(io.StringIO("1 2\na 1 2\nb 3 4\n"))


def test_duplicate_word_rejected():
    with pytest.raises(MalformedRecord):
        read_embeddings(io.StringIO("2 2\nsame 1 2\nsame 3 4\n"))


def test_non_numeric_value_rejected():
    with pytest.raises((DimensionMismatch, ValueError)):
        read_embeddings(io.StringIO("1 2\nword one 2\n"))


# ------------------------------------------------------- model checks

def test_model_rejects_nan():
    with pytest.raises(NumericError):
        model_of(["a"], [[np.nan, 1.0]])


def test_model_rejects_shape_disagreements():
    with pytest.raises(ValueError):
        model_of(["a", "b"], [[1.0, 2.0]])
    with pytest.raises(ValueError):
        EmbeddingModel(words=("a",), matrix=np.zeros(3, np.float32))
    with pytest.raises(ValueError):
        EmbeddingModel(words=("a",), matrix=np.zeros((1, 3), np.float64))


def test_model_kind_flavor_rules():
    mat = [[1.0, 2.0]]
    with pytest.raises(ValueError):
        model_of(["a"], mat, kind="glove", flavor="cbow")
    with pytest.raises(ValueError):
        model_of(["a"], mat, kind="word2vec")
    m = model_of(["a"], mat, kind="word2vec", flavor="skipgram")
    assert m.selector == "w2v-sg"
    assert model_of(["a"], mat).selector is None


def test_model_vocab_agreement():
    vocab = Vocabulary(["a", "b"], [4, 2], 1)
    mat = np.zeros((2, 3), np.float32)
    m = EmbeddingModel(words=("a", "b"), matrix=mat, vocab=vocab)
    assert m.size == 2 and m.dimension == 3
    with pytest.raises(ValueError):
        EmbeddingModel(words=("b", "a"), matrix=mat, vocab=vocab)


def test_model_lookup_helpers():
    m = model_of(["a", "b", "c"], [[1, 0], [0, 1], [1, 1]])
    assert "b" in m and "z" not in m
    np.testing.assert_array_equal(m.vector("b"), [0, 1])
    np.testing.assert_array_equal(m.rows_for(["c", "a"]), [[1, 1], [1, 0]])
    with pytest.raises(KeyError):
        m.vector("zz")


def test_model_rejects_duplicate_words():
    with pytest.raises(ValueError):
        model_of(["a", "a"], [[1, 2], [3, 4]])
