import pytest

SUBJECTS = ["Alice", "Boston", "Marlowe", "the harbour", "the old captain",
            "Kestrel", "a foreign sailor", "Ashford", "the grey river",
            "Winslow"]
VERBS = ["walked", "stood", "watched", "called", "followed"]
OBJECTS = ["the bright lantern", "a distant ship", "the ancient wall",
           "a heavy rope", "the quiet market", "an empty street"]
TAILS = ["near the water", "after the storm", "before dawn",
         "with great care", "in the cold morning"]


def sample_text(n_sentences: int = 100) -> str:
    """Deterministic English-like prose, exactly n_sentences sentences."""
    lines = []
    for i in range(n_sentences):
        subject = SUBJECTS[i % len(SUBJECTS)]
        verb = VERBS[(i // 3) % len(VERBS)]
        obj = OBJECTS[(i // 7) % len(OBJECTS)]
        tail = TAILS[(i // 11) % len(TAILS)]
        sentence = f"{subject} {verb} {obj} {tail}"
        if i % 13 == 0:
            sentence += f", and they spoke of {SUBJECTS[(i + 4) % len(SUBJECTS)]}"
        end = "!" if i % 17 == 0 else "."
        lines.append(sentence[0].upper() + sentence[1:] + end)
        if i % 9 == 8:
            lines.append("")  # paragraph break
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def text_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("texts")
    (root / "sample").mkdir()
    (root / "sample" / "voyage.txt").write_text(sample_text(100),
                                                encoding="utf-8")
    return root / "sample"
