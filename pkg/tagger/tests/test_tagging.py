"""Tokenizer, lexicon, and backend behavior."""

import pytest

from wordassoc_tagger import ConfigError, RuleLexiconTagger, make_backend
from wordassoc_tagger.lexicon import classify
from wordassoc_tagger.tokenizer import split_sentences, tokenize, tokenize_document


def test_sentence_split_on_terminators_and_paragraphs():
    text = "One sails east. Two waits!\n\nThree stands alone\n"
    assert split_sentences(text) == ["One sails east.", "Two waits!",
                                     "Three stands alone"]


def test_split_joins_wrapped_lines():
    assert split_sentences("a long\nwrapped sentence.") == \
        ["a long wrapped sentence."]


def test_tokenize_separates_punctuation():
    assert tokenize("Wait, the ship's bell rang twice.") == \
        ["Wait", ",", "the", "ship's", "bell", "rang", "twice", "."]


def test_tokenize_numbers():
    assert tokenize("about 3.5 miles, 1880 maps") == \
        ["about", "3.5", "miles", ",", "1880", "maps"]


def test_tokenize_document_drops_empty():
    assert tokenize_document("  \n\n  First one.  ") == [["First", "one", "."]]


@pytest.mark.parametrize("token,initial,want", [
    ("the", False, "DET"),
    ("from", False, "ADP"),
    ("The", True, "DET"),
    ("Boston", False, "PROPN"),
    ("Boston", True, "PROPN"),
    ("cold", False, "ADJ"),
    ("walked", False, "VERB"),
    ("sailing", False, "VERB"),
    ("quickly", False, "ADV"),
    ("hopeful", False, "ADJ"),
    ("lantern", False, "NOUN"),
    ("1880", False, "NUM"),
    ("3.5", False, "NUM"),
    (",", False, "PUNCT"),
    ("!", False, "PUNCT"),
])
def test_classify(token, initial, want):
    assert classify(token, sentence_initial=initial) == want


def test_sentence_initial_known_word_is_not_proper():
    # "Walked" opening a sentence should still read as a verb
    assert classify("Walked", sentence_initial=True) == "VERB"


def test_backend_tags_per_token():
    tagger = RuleLexiconTagger()
    tags = tagger.tag([["Alice", "walked", "."], ["The", "sea", "!"]])
    assert tags == [["PROPN", "VERB", "PUNCT"], ["DET", "NOUN", "PUNCT"]]


def test_batch_size_does_not_change_tags():
    sentences = [[w, "sails"] for w in ("Alma", "Brig", "Crow", "Dory", "Elm")]
    assert RuleLexiconTagger(batch_size=1).tag(sentences) == \
        RuleLexiconTagger(batch_size=4).tag(sentences)


def test_make_backend_rejects_unknown_language():
    with pytest.raises(ConfigError, match="'fr'"):
        make_backend("fr", 32)


def test_backend_rejects_bad_batch():
    with pytest.raises(ConfigError, match="batch"):
        make_backend("en", 0)
