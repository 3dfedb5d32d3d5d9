"""Manifest handling, feature files, and the synthetic generator."""

import numpy as np
import pytest

from filread.corpus import (
    FEATURES_HEADER,
    ManifestEntry,
    SynthParams,
    generate_synthetic,
    load_corpus,
    read_features_csv,
    read_manifest,
    write_features_csv,
    write_manifest,
)
from filread.errors import InvalidParams, MalformedFeaturesRow, MissingFile
from filread.features import FEATURE_NAMES, FeatureSet, FeatureVector, build_feature_vector


def _write(path, text):
    path.write_text(text, encoding="utf-8")


class TestManifest:
    def test_round_trip(self, tmp_path):
        entries = [
            ManifestEntry(path="a.txt", level=1, format="plain"),
            ManifestEntry(path="b.txt", level=3, format="tagged"),
        ]
        manifest = tmp_path / "manifest.csv"
        write_manifest(entries, manifest)
        parsed, problems = read_manifest(manifest)
        assert problems == []
        assert parsed == entries

    def test_missing_manifest_raises(self, tmp_path):
        with pytest.raises(MissingFile):
            read_manifest(tmp_path / "nope.csv")

    def test_bad_header_raises(self, tmp_path):
        from filread.errors import MalformedManifestRow

        manifest = tmp_path / "manifest.csv"
        _write(manifest, "file,grade\na.txt,1\n")
        with pytest.raises(MalformedManifestRow):
            read_manifest(manifest)

    @pytest.mark.parametrize(
        "row",
        [
            "a.txt,7,plain",          # level outside 1-3
            "a.txt,one,plain",        # level not an integer
            "a.txt,1,pdf",            # unknown format
            ",1,plain",               # empty path
            "a.txt,1",                # wrong cell count
        ],
    )
    def test_bad_rows_are_collected(self, tmp_path, row):
        manifest = tmp_path / "manifest.csv"
        _write(manifest, f"path,level,format\n{row}\nok.txt,2,plain\n")
        entries, problems = read_manifest(manifest)
        assert [e.path for e in entries] == ["ok.txt"]
        assert len(problems) == 1
        assert "manifest.csv:2" in problems[0].location

    def test_duplicate_path_is_an_error(self, tmp_path):
        manifest = tmp_path / "manifest.csv"
        _write(manifest, "path,level,format\na.txt,1,plain\na.txt,2,plain\n")
        entries, problems = read_manifest(manifest)
        assert len(entries) == 1
        assert len(problems) == 1


class TestLoadCorpus:
    def _corpus(self, tmp_path, rows, files):
        manifest = tmp_path / "manifest.csv"
        _write(manifest, "path,level,format\n" + "".join(f"{r}\n" for r in rows))
        for name, text in files.items():
            _write(tmp_path / name, text)
        return manifest

    def test_three_valid_files(self, tmp_path):
        manifest = self._corpus(
            tmp_path,
            ["a.txt,1,tagged", "b.txt,2,tagged", "c.txt,3,plain"],
            {
                "a.txt": "bata|NNC kumain|VBTS .|PMP\n",
                "b.txt": "laruan|NNC niya|PRS .|PMP\n",
                "c.txt": "Nagluto ang bata.",
            },
        )
        docs, errors = load_corpus(manifest)
        assert errors == []
        assert [(d.doc_id, d.level) for d in docs] == [
            ("a.txt", 1), ("b.txt", 2), ("c.txt", 3),
        ]
        assert len(docs[0].tagged.sentences) == 1

    def test_missing_file_is_partial_failure(self, tmp_path):
        manifest = self._corpus(
            tmp_path,
            ["a.txt,1,tagged", "gone.txt,2,tagged", "c.txt,3,tagged"],
            {
                "a.txt": "bata|NNC\n",
                "c.txt": "aso|NNC\n",
            },
        )
        docs, errors = load_corpus(manifest)
        assert [d.doc_id for d in docs] == ["a.txt", "c.txt"]
        assert len(errors) == 1
        assert "gone.txt" in errors[0].location

    def test_malformed_tagged_file_is_collected(self, tmp_path):
        manifest = self._corpus(
            tmp_path,
            ["a.txt,1,tagged"],
            {"a.txt": "not-tagged-at-all\n"},
        )
        docs, errors = load_corpus(manifest)
        assert docs == []
        assert len(errors) == 1

    def test_custom_separator(self, tmp_path):
        manifest = self._corpus(
            tmp_path, ["a.txt,1,tagged"], {"a.txt": "bata/NNC\n"}
        )
        docs, errors = load_corpus(manifest, separator="/")
        assert errors == []
        assert docs[0].tagged.sentences[0].tagged[0].tag == "NNC"


class TestFeaturesCsv:
    def _vectors(self, seed=0):
        rng = np.random.default_rng(seed)
        out = []
        for i in range(5):
            values = tuple(float(v) for v in rng.uniform(0, 9, size=15))
            out.append(
                FeatureVector(
                    doc_id=f"doc{i}", values=values, feature_set=FeatureSet.BOTH
                )
            )
        return out

    def test_full_precision_round_trip(self, tmp_path):
        vectors = self._vectors()
        levels = [1, 2, 3, 1, None]
        path = tmp_path / "features.csv"
        write_features_csv(path, vectors, levels)
        loaded, loaded_levels = read_features_csv(path)
        assert loaded_levels == [1, 2, 3, 1, None]
        for original, parsed in zip(vectors, loaded):
            assert parsed.doc_id == original.doc_id
            assert parsed.values == original.values

    def test_header(self, tmp_path):
        path = tmp_path / "features.csv"
        write_features_csv(path, self._vectors(), [1] * 5)
        header = path.read_text(encoding="utf-8").splitlines()[0]
        assert tuple(header.split(",")) == FEATURES_HEADER
        assert header.startswith("doc_id,level,avg_sentence_length")

    def test_wrong_header_raises(self, tmp_path):
        path = tmp_path / "features.csv"
        _write(path, "doc_id,level,foo\nx,1,0.5\n")
        with pytest.raises(MalformedFeaturesRow):
            read_features_csv(path)

    def test_bad_level_raises(self, tmp_path):
        path = tmp_path / "features.csv"
        write_features_csv(path, self._vectors(), [1] * 5)
        text = path.read_text(encoding="utf-8").replace("doc0,1", "doc0,9")
        _write(path, text)
        with pytest.raises(MalformedFeaturesRow):
            read_features_csv(path)

    def test_bad_float_raises(self, tmp_path):
        path = tmp_path / "features.csv"
        write_features_csv(path, self._vectors(), [1] * 5)
        lines = path.read_text(encoding="utf-8").splitlines()
        cells = lines[1].split(",")
        cells[2] = "abc"
        lines[1] = ",".join(cells)
        _write(path, "\n".join(lines) + "\n")
        with pytest.raises(MalformedFeaturesRow):
            read_features_csv(path)


class TestSynthParams:
    def test_defaults_shape(self):
        params = SynthParams()
        assert params.levels == (1, 2, 3)
        assert params.doc_counts == (29, 30, 30)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"doc_counts": (29, 30)},                       # misaligned
            {"doc_counts": (0, 30, 30)},                    # nonpositive count
            {"levels": (1, 1, 3)},                          # duplicate level
            {"mean_sentences": (0.0, 5.0, 5.0)},            # nonpositive mean
            {"polysyllable_rate": (0.5, 0.5, 1.5)},         # rate above 1
            {"polysyllable_rate": (0.9, 0.1, 0.1),
             "foreign_rate": (0.2, 0.1, 0.1)},              # rates sum past 1
            {"seed": -1},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParams):
            SynthParams(**kwargs)

    def test_scaled_counts(self):
        scaled = SynthParams().scaled_counts(5)
        assert scaled.doc_counts == (5, 5, 5)
        assert scaled.seed == SynthParams().seed


class TestGenerateSynthetic:
    def test_default_shape(self, tmp_path):
        manifest = generate_synthetic(SynthParams(), tmp_path / "corpus")
        entries, problems = read_manifest(manifest)
        assert problems == []
        assert len(entries) == 89
        assert all(e.format == "tagged" for e in entries)
        levels = [e.level for e in entries]
        assert (levels.count(1), levels.count(2), levels.count(3)) == (29, 30, 30)

    def test_same_seed_byte_identical(self, tmp_path):
        params = SynthParams().scaled_counts(4)
        m1 = generate_synthetic(params, tmp_path / "one")
        m2 = generate_synthetic(params, tmp_path / "two")
        files1 = sorted(m1.parent.iterdir())
        files2 = sorted(m2.parent.iterdir())
        assert [f.name for f in files1] == [f.name for f in files2]
        for f1, f2 in zip(files1, files2):
            assert f1.read_bytes() == f2.read_bytes()

    def test_different_seed_differs(self, tmp_path):
        base = SynthParams().scaled_counts(3)
        alt = SynthParams(seed=11).scaled_counts(3)
        m1 = generate_synthetic(base, tmp_path / "one")
        m2 = generate_synthetic(alt, tmp_path / "two")
        texts1 = sorted(p.read_text("utf-8") for p in m1.parent.glob("*.txt"))
        texts2 = sorted(p.read_text("utf-8") for p in m2.parent.glob("*.txt"))
        assert texts1 != texts2

    def test_polysyllable_totals_increase_with_rate(self, tmp_path):
        manifest = generate_synthetic(SynthParams(), tmp_path / "corpus")
        docs, errors = load_corpus(manifest)
        assert errors == []
        totals = {1: 0, 2: 0, 3: 0}
        for doc in docs:
            fv = build_feature_vector(doc.tagged, feature_set=FeatureSet.TRAD)
            totals[doc.level] += int(fv.values[6])
        assert totals[1] < totals[2] < totals[3]

    def test_extractor_recovers_generator_targets(self, tmp_path):
        # Mean sentence length and foreign ratio, checked per level
        # against the generating parameters within 3 sigma.
        params = SynthParams()
        manifest = generate_synthetic(params, tmp_path / "corpus")
        docs, _ = load_corpus(manifest)
        by_level = {1: [], 2: [], 3: []}
        for doc in docs:
            fv = build_feature_vector(doc.tagged, feature_set=FeatureSet.BOTH)
            by_level[doc.level].append(fv.values)
        for level, target_len, target_foreign, n_docs in zip(
            params.levels,
            params.mean_sentence_length,
            params.foreign_rate,
            params.doc_counts,
        ):
            values = np.array(by_level[level])
            mean_len = values[:, 0].mean()
            # Sentence lengths are Poisson-like: variance ~ mean, and
            # each doc averages ~mean_sentences draws.
            sigma_len = np.sqrt(target_len / (30 * n_docs))
            assert abs(mean_len - target_len) <= 3 * sigma_len + 0.2
            mean_foreign = values[:, 14].mean()
            sigma_foreign = np.sqrt(target_foreign / (200 * n_docs))
            assert abs(mean_foreign - target_foreign) <= 3 * sigma_foreign + 0.01

    def test_documents_are_parseable_and_sized(self, tmp_path):
        params = SynthParams().scaled_counts(3)
        manifest = generate_synthetic(params, tmp_path / "corpus")
        docs, errors = load_corpus(manifest)
        assert errors == []
        assert len(docs) == 9
        for doc in docs:
            assert len(doc.tagged.sentences) >= 1
