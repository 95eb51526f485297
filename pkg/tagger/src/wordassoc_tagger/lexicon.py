"""Closed-class lexicon and suffix heuristics for English UPOS tags.

The tag set is the 17 Universal Dependencies categories. Precedence:
punctuation and numbers by shape, then the closed-class lexicon on the
lowercased form, then capitalization (proper noun), then suffix
heuristics, then NOUN. Sentence-initial capitalization only counts as
a proper-noun signal when the word is not otherwise known.
"""

from __future__ import annotations

import re

_NUM = re.compile(r"\d+(?:\.\d+)?$")
_WORD = re.compile(r"[A-Za-z]")

CLOSED: dict[str, str] = {}
for _upos, _words in {
    "DET": "the a an this that these those each every some any no another",
    "ADP": "of in on at by from with for into over under between through "
           "against during before after above below near across behind",
    "PRON": "i you he she it we they me him her us them mine yours his hers "
            "its ours theirs myself himself herself itself themselves who whom",
    "AUX": "is are was were be been being am has have had do does did will "
           "would can could may might must shall should",
    "CCONJ": "and or but nor yet so",
    "SCONJ": "if because although while since unless whereas until whether",
    "PART": "not to n't",
    "ADV": "very never always often here there now then quite rather too "
           "also just still almost soon again once twice perhaps",
    "INTJ": "oh ah alas hello yes",
    "ADJ": "old new great small big good bad cold warm dark bright long "
           "short high low young early late strong weak full empty deep "
           "quiet heavy light grey pale distant foreign ancient broad",
    "VERB": "went came said saw told took gave stood held found left made "
            "knew thought brought kept began felt seemed walked looked "
            "turned called asked spoke carried watched opened followed",
}.items():
    for _w in _words.split():
        CLOSED[_w] = _upos

_SUFFIX_RULES = (
    ("ly", "ADV"),
    ("ing", "VERB"),
    ("ed", "VERB"),
    ("ful", "ADJ"),
    ("ous", "ADJ"),
    ("ive", "ADJ"),
    ("able", "ADJ"),
    ("ible", "ADJ"),
    ("ish", "ADJ"),
    ("less", "ADJ"),
    ("est", "ADJ"),
)


def classify(token: str, sentence_initial: bool = False) -> str:
    if not _WORD.search(token):
        return "NUM" if _NUM.match(token) else "PUNCT"
    if _NUM.match(token):
        return "NUM"
    lower = token.lower()
    if lower in CLOSED:
        return CLOSED[lower]
    if token[0].isupper() and not sentence_initial:
        return "PROPN"
    for suffix, upos in _SUFFIX_RULES:
        if len(lower) > len(suffix) + 2 and lower.endswith(suffix):
            return upos
    if token[0].isupper():
        return "PROPN"
    return "NOUN"
