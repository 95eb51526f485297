"""Configuration handling, both evaluation regimes, report emission."""

import json

import numpy as np
import pytest

from wordassoc import Vocabulary
from wordassoc.corpus import WordRoleSet
from wordassoc.errors import ConfigError, MissingSlice, ModelCountError
from wordassoc.metrics import DunnResult
from wordassoc.pipeline import (
    ExperimentConfig,
    emit_reports,
    load_config,
    run_evaluation_fixed_corpus,
    run_evaluation_fixed_model,
    select_cluster_words,
    summarize_dunn,
)

import synthgen

SLICE_SPECS = {
    "s1880": (240, [0.75, 0.25]),
    "s1900": (180, [0.5, 0.5]),
    "s1920": (120, [0.25, 0.75]),
}


@pytest.fixture(scope="session")
def corpus_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    synthgen.corpus_dir(root, seed=23, slice_specs=SLICE_SPECS)
    return root


def make_config(corpus_root, **overrides):
    data = {
        "corpus_dir": str(corpus_root),
        "slices": list(SLICE_SPECS),
        "models": ["w2v-cbow", "w2v-sg", "glove"],
        "dimension": 12,
        "epochs": 2,
        "min_count": 2,
        "buckets": 512,
        "k": 4,
        "seed": 5,
        "deterministic": True,
    }
    data.update(overrides)
    return ExperimentConfig.from_mapping(data)


# ------------------------------------------------------------------ config

def test_config_defaults_to_all_models(corpus_root):
    cfg = ExperimentConfig.from_mapping(
        {"corpus_dir": str(corpus_root), "slices": ["s1880"]})
    assert cfg.models == ("w2v-cbow", "w2v-sg", "glove", "ft-cbow", "ft-sg")
    assert cfg.k == 8 and cfg.cluster_cap == 10_000
    assert cfg.hyperparams.dimension == 100


@pytest.mark.parametrize("broken,match", [
    ({}, "corpus_dir"),
    ({"corpus_dir": "c"}, "slices"),
    ({"corpus_dir": "c", "slices": ["a"], "windw": 5}, "windw"),
    ({"corpus_dir": "c", "slices": ["a"], "models": ["w2v"]}, "selector"),
    ({"corpus_dir": "c", "slices": ["a", "a"]}, "duplicate"),
    ({"corpus_dir": "c", "slices": ["a"], "k": 1}, "k"),
    ({"corpus_dir": "c", "slices": ["a"], "k": 8, "cluster_cap": 3}, "cluster_cap"),
    ({"corpus_dir": "c", "slices": ["a"], "epochs": 0}, "epochs"),
], ids=["no-corpus", "no-slices", "typo-key", "bad-selector",
        "dup-slice", "small-k", "small-cap", "bad-hyper"])
def test_config_rejections(broken, match):
    with pytest.raises(ConfigError, match=match):
        ExperimentConfig.from_mapping(broken)


def test_deterministic_forces_single_worker():
    cfg = ExperimentConfig.from_mapping({
        "corpus_dir": "c", "slices": ["a"], "workers": 6, "deterministic": True,
    })
    assert cfg.hyperparams.workers == 1
    loose = ExperimentConfig.from_mapping({
        "corpus_dir": "c", "slices": ["a"], "workers": 6,
    })
    assert loose.hyperparams.workers == 6


def test_config_mapping_round_trip(corpus_root):
    cfg = make_config(corpus_root, output_dir=str(corpus_root / "out"))
    again = ExperimentConfig.from_mapping(cfg.to_mapping())
    assert again == cfg


def test_load_config(tmp_path, corpus_root):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(make_config(corpus_root).to_mapping()))
    assert load_config(path) == make_config(corpus_root)

    path.write_text("{not json")
    with pytest.raises(ConfigError, match="JSON"):
        load_config(path)
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "nope.json")


# ------------------------------------------------------------ word picking

def test_select_cluster_words_keeps_vocab_order_and_caps():
    vocab = Vocabulary(["big", "crow", "ant", "dim", "echo"],
                       [9, 7, 5, 3, 2], 1)
    roles = WordRoleSet(neutral=frozenset({"crow", "ant", "echo"}),
                        attribute=frozenset({"dim"}))
    assert select_cluster_words(vocab, roles, cap=10) == \
        ["crow", "ant", "dim", "echo"]
    assert select_cluster_words(vocab, roles, cap=2) == ["crow", "ant"]


def test_select_cluster_words_empty():
    vocab = Vocabulary(["a"], [5], 1)
    roles = WordRoleSet(neutral=frozenset(), attribute=frozenset())
    from wordassoc.errors import EmptyRoleSet
    with pytest.raises(EmptyRoleSet):
        select_cluster_words(vocab, roles, cap=10)


# --------------------------------------------------------- fixed corpus

@pytest.fixture(scope="session")
def fixed_corpus_bundle(corpus_root):
    cfg = ExperimentConfig.from_mapping({
        "corpus_dir": str(corpus_root),
        "slices": list(SLICE_SPECS),
        "models": ["w2v-cbow", "w2v-sg", "glove"],
        "dimension": 12, "epochs": 2, "min_count": 2, "buckets": 512,
        "k": 4, "seed": 5, "deterministic": True,
    })
    return cfg, run_evaluation_fixed_corpus(cfg)


def test_fixed_corpus_covers_grid(fixed_corpus_bundle):
    cfg, bundle = fixed_corpus_bundle
    grid = {(s, m) for s in cfg.slices for m in cfg.models}
    assert set(bundle.dunn) == grid
    assert set(bundle.distribution) == grid
    for res in bundle.dunn.values():
        assert res.value > 0
        assert res.value == pytest.approx(res.min_intercluster / res.max_diameter)
    for stats in bundle.distribution.values():
        assert len(stats.fractions) == cfg.k


def test_fixed_corpus_jaccard_matrix(fixed_corpus_bundle):
    cfg, bundle = fixed_corpus_bundle
    jm = bundle.jaccard
    assert jm.models == cfg.models
    assert np.array_equal(np.diag(jm.values), np.ones(3))
    assert np.allclose(jm.values, jm.values.T)
    off = jm.values[np.triu_indices(3, k=1)]
    assert ((0 < off) & (off < 1)).all()


def test_fixed_corpus_summary_and_replication(fixed_corpus_bundle):
    cfg, bundle = fixed_corpus_bundle
    for selector in cfg.models:
        values = [bundle.dunn[(s, selector)].value for s in cfg.slices]
        mean, sd = bundle.summary[selector]
        assert mean == pytest.approx(np.mean(values))
        assert sd == pytest.approx(np.std(values))
    # both w2v flavors ran, fasttext did not
    assert set(bundle.replication) == {"w2v_sg_above_cbow"}
    for sid, (count, _) in SLICE_SPECS.items():
        assert bundle.token_counts[sid] > count * 5
        assert bundle.type_counts[sid] > 8


def test_fixed_corpus_needs_two_models(corpus_root):
    cfg = make_config(corpus_root, models=["glove"], slices=["s1880", "s1900"])
    with pytest.raises(ModelCountError):
        run_evaluation_fixed_corpus(cfg)


def test_missing_slice_file(corpus_root):
    cfg = make_config(corpus_root, slices=["s1880", "s1999"])
    with pytest.raises(MissingSlice, match="s1999"):
        run_evaluation_fixed_corpus(cfg)


def test_fixed_corpus_save_embeddings(corpus_root, tmp_path):
    from wordassoc import read_embeddings
    cfg = make_config(corpus_root, slices=["s1900"],
                      models=["w2v-sg", "glove"],
                      output_dir=str(tmp_path / "out"))
    run_evaluation_fixed_corpus(cfg, save_embeddings=True)
    vec = tmp_path / "out" / "embeddings" / "s1900.glove.vec"
    assert vec.is_file()
    model = read_embeddings(vec)
    assert model.dimension == 12


# ----------------------------------------------------------- fixed model

def test_fixed_model_across_slices(corpus_root):
    cfg = make_config(corpus_root, models=["w2v-sg"])
    bundle = run_evaluation_fixed_model(cfg)
    assert bundle.jaccard is None
    assert set(bundle.dunn) == {(s, "w2v-sg") for s in cfg.slices}
    values = [bundle.dunn[(s, "w2v-sg")].value for s in cfg.slices]
    assert len(set(values)) > 1, "slices of different sizes, same Dunn everywhere"
    assert bundle.replication == {}


def test_fixed_model_count_checks(corpus_root):
    with pytest.raises(ModelCountError):
        run_evaluation_fixed_model(make_config(corpus_root))
    with pytest.raises(ModelCountError):
        run_evaluation_fixed_model(
            make_config(corpus_root, models=["glove"], slices=["s1880"]))


def test_summarize_dunn_example():
    dunn = {
        ("a", "m"): DunnResult(0.05, 1.0, 20.0),
        ("b", "m"): DunnResult(0.07, 1.4, 20.0),
    }
    summary = summarize_dunn(dunn, ("a", "b"), ("m",))
    mean, sd = summary["m"]
    assert mean == pytest.approx(0.06)
    assert sd == pytest.approx(0.01)


# -------------------------------------------------------------- reports

def test_emit_reports_layout(fixed_corpus_bundle, tmp_path):
    cfg, bundle = fixed_corpus_bundle
    out = tmp_path / "report"
    written = emit_reports(bundle, out)
    assert sorted(p.name for p in written) == sorted(
        ["dunn.csv", "distribution.csv", "jaccard.csv", "summary.csv",
         "report.json"])

    dunn_lines = (out / "dunn.csv").read_text().splitlines()
    assert dunn_lines[0] == "slice,model,dunn"
    assert len(dunn_lines) == 1 + len(cfg.slices) * len(cfg.models)
    sid, selector, value = dunn_lines[1].split(",")
    assert float(value) == pytest.approx(bundle.dunn[(sid, selector)].value,
                                         rel=1e-11)

    dist_lines = (out / "distribution.csv").read_text().splitlines()
    assert dist_lines[0] == "slice,model,cluster,fraction"
    assert len(dist_lines) == 1 + len(cfg.slices) * len(cfg.models) * cfg.k

    jac_lines = (out / "jaccard.csv").read_text().splitlines()
    assert jac_lines[0] == "model_a,model_b,avg_jaccard"
    assert len(jac_lines) == 1 + len(cfg.models) ** 2
    diag = [l for l in jac_lines[1:] if l.split(",")[0] == l.split(",")[1]]
    assert all(l.split(",")[2] == "1" for l in diag)

    summary_lines = (out / "summary.csv").read_text().splitlines()
    assert summary_lines[0] == "model,dunn_mean,dunn_sd"
    assert len(summary_lines) == 1 + len(cfg.models)

    report = json.loads((out / "report.json").read_text())
    assert report["seed"] == cfg.hyperparams.seed
    assert report["config"]["slices"] == list(cfg.slices)
    assert set(report["token_counts"]) == set(cfg.slices)
    assert report["jaccard_diagonal_by_convention"] is True
    assert "replication" in report
    assert "timestamp" not in report


def test_emit_reports_fixed_model_has_empty_jaccard(corpus_root, tmp_path):
    cfg = make_config(corpus_root, models=["glove"])
    bundle = run_evaluation_fixed_model(cfg)
    out = tmp_path / "fm"
    emit_reports(bundle, out)
    assert (out / "jaccard.csv").read_text() == "model_a,model_b,avg_jaccard\n"
    report = json.loads((out / "report.json").read_text())
    assert report["jaccard_diagonal_by_convention"] is False


def test_emitted_reports_are_deterministic(corpus_root, tmp_path):
    cfg = make_config(corpus_root, slices=["s1900", "s1920"],
                      models=["w2v-cbow", "ft-sg"])
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    emit_reports(run_evaluation_fixed_corpus(cfg), d1)
    emit_reports(run_evaluation_fixed_corpus(cfg), d2)
    for name in ("dunn.csv", "distribution.csv", "jaccard.csv",
                 "summary.csv", "report.json"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes(), name
