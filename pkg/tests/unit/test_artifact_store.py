"""Unit tests for artifact files"""

import math

import numpy as np
import pytest

from packages.corpus_ingest.records import FilmRecord, TitleType
from packages.oneclass_knn import ClassificationResult, RejectionReason
from packages.pipeline import ArtifactStore, format_value
from packages.tag_cluster import TagGrouping
from packages.utils.error_handling import DataError
from tests.fixtures.matrices import make_gamma


class TestFormatValue:
    @pytest.mark.parametrize("value, text", [
        (None, ""),
        (True, "1"),
        (np.bool_(False), "0"),
        (np.int64(7), "7"),
        (0.1 + 0.2, "0.30000000000000004"),
        (np.float64(0.25), "0.25"),
        (math.nan, ""),
        (math.inf, "inf"),
        ("film noir", "film noir"),
    ])
    def test_cells(self, value, text):
        assert format_value(value) == text


class TestArtifactStore:
    def test_write_creates_directory_and_leaves_no_temp_files(self, tmp_path):
        store = ArtifactStore(tmp_path / "out")
        store.write_csv("table.csv", ["a", "b"], [[1, 0.5], [2, None]])
        assert (tmp_path / "out" / "table.csv").read_text() == "a,b\n1,0.5\n2,\n"
        assert [p.name for p in (tmp_path / "out").iterdir()] == ["table.csv"]

    def test_failed_write_keeps_previous_file(self, tmp_path):
        store = ArtifactStore(tmp_path)
        store.write_json("report.json", {'films': 3})

        def rows():
            yield [1]
            raise RuntimeError("interrupted")

        store.write_csv("table.csv", ["a"], [[0]])
        with pytest.raises(RuntimeError):
            store.write_csv("table.csv", ["a"], rows())
        assert store.read_csv("table.csv") == [{'a': '0'}]
        assert sorted(p.name for p in tmp_path.iterdir()) == ["report.json", "table.csv"]
        assert store.read_json("report.json") == {'films': 3}

    def test_missing_artifact(self, tmp_path):
        with pytest.raises(DataError, match="run the stage that produces it"):
            ArtifactStore(tmp_path).read_csv("features.csv")

    def test_films_survive_reload(self, tmp_path):
        store = ArtifactStore(tmp_path)
        films = [
            FilmRecord(0, (1, 901), "tt0000001", "Detour, Part 1", 1945, TitleType.MOVIE, False,
                       ("Crime", "Film-Noir")),
            FilmRecord(1, (2,), "tt0000002", "Untitled", None, TitleType.TV_MOVIE, True),
        ]
        store.save_films(films)
        assert store.load_films() == films

    def test_grouping_must_match_tags(self, tmp_path):
        store = ArtifactStore(tmp_path)
        gamma = make_gamma([[1, 1, 0], [0, 1, 1]], stems=["dark", "noir", "spy"])
        store.save_grouping(TagGrouping.from_group_of([0, 0, 1]), gamma)
        assert store.load_grouping(gamma).group_of.tolist() == [0, 0, 1]

        other = make_gamma([[1, 1], [0, 1]], stems=["dark", "noir"])
        with pytest.raises(DataError, match="rerun the cluster stage"):
            store.load_grouping(other)

    def test_results_without_neighbors(self, tmp_path):
        store = ArtifactStore(tmp_path)
        films = {
            3: FilmRecord(3, (4,), "tt0000004", "Sparse", 1950, TitleType.MOVIE, False),
            4: FilmRecord(4, (5,), "tt0000005", "Close", 1951, TitleType.MOVIE, False),
        }
        results = [
            ClassificationResult(3, False, 2, (), (), math.nan, RejectionReason.TOO_FEW_TAGS),
            ClassificationResult(4, True, 7, ((0, 0.125), (2, 0.25)), (0.1, 0.2), 0.75,
                                 RejectionReason.ACCEPTED),
        ]
        store.save_results(results, films, neighbor_count=2)

        rows = store.read_csv("results.csv")
        assert list(rows[0]) == ["item_id", "imdb_id", "title", "year", "accepted", "reason", "r",
                                 "nn1_id", "nn1_d", "nn2_id", "nn2_d", "tag_count"]
        assert rows[0]["r"] == "" and rows[0]["nn1_id"] == ""

        loaded = store.load_results(neighbor_count=2)
        assert math.isnan(loaded[0].ratio)
        assert loaded[0].rejection_reason is RejectionReason.TOO_FEW_TAGS
        assert loaded[1].neighbors == ((0, 0.125), (2, 0.25))
        assert loaded[1].accepted and loaded[1].tag_count == 7
