import random

import pytest


def keyword_corpus_text(n=80, senses=4, seed=0):
    """Sense-unique keyword five tokens after the target, templates otherwise shared."""
    rng = random.Random(seed)
    templates = [
        [("The", "DT"), ("bank", "NN"), ("raised", "VBD", "raise"), ("its", "PRP$")],
        [("Many", "JJ"), ("people", "NNS"), ("showed", "VBD", "show"), ("some", "DT")],
    ]
    records = []
    for i in range(n):
        sense = i % senses + 1
        tokens = list(rng.choice(templates))
        tokens += [("interest", "NN", "interest"), ("on", "IN"), ("the", "DT"), ("new", "JJ"), ("loan", "NN")]
        tokens += [(f"cue{sense}", "NN"), (".", ".")]
        lines = [f"%% id=k{i} word=interest pos=N target=4 sense={sense} morph=singular"]
        for tok in tokens:
            lines.append("\t".join(tok) if len(tok) == 3 else f"{tok[0]}\t{tok[1]}\t")
        lines.append("%NG 3 4")
        records.append("\n".join(lines) + "\n")
    return "\n".join(records)


@pytest.fixture
def corpus_text():
    return keyword_corpus_text()


@pytest.fixture
def corpus_file(tmp_path, corpus_text):
    path = tmp_path / "corpus.txt"
    path.write_text(corpus_text)
    return path
