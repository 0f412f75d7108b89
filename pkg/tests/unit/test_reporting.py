"""Unit tests for the neighbor table, era report and run summary"""

import numpy as np
import pytest
import scipy.sparse as sp

from packages.corpus_ingest.records import FilmRecord, TitleType
from packages.feature_matrix import GroupFrequencyMatrix
from packages.oneclass_knn import ClassificationResult, RejectionReason, ThresholdVector
from packages.reporting import (
    RunSummary,
    era_frequencies,
    indicator_tag_ids,
    report_era_groups,
    report_neighbors,
)
from packages.utils.error_handling import ContractViolation
from tests.fixtures.matrices import make_gamma

YEARS = {0: 1945, 1: 1950, 2: 1975, 3: None, 4: 1980, 5: 1990}
LABELS = ["{a}", "{b}", "{c}"]


def film(item_id):
    return FilmRecord(
        item_id=item_id,
        movielens_ids=(item_id + 100,),
        imdb_id=f"tt{item_id:07d}",
        title=f"Film {item_id}",
        year=YEARS[item_id],
        title_type=TitleType.MOVIE,
        is_documentary=False,
    )


def result(item_id, reason, neighbor_ids=(0, 1, 2)):
    return ClassificationResult(
        item_id=item_id,
        accepted=reason is RejectionReason.ACCEPTED,
        tag_count=6,
        neighbors=tuple((n, 0.1 * (k + 1)) for k, n in enumerate(neighbor_ids)),
        neighbor_self_distances=(0.1, 0.1, 0.1),
        ratio=1.0,
        rejection_reason=reason,
    )


@pytest.fixture
def films():
    return {item_id: film(item_id) for item_id in YEARS}


@pytest.fixture
def lam():
    frequency = [[2, 1, 0], [1, 0, 0], [0, 1, 1], [5, 5, 5], [0, 0, 2], [9, 9, 9]]
    return GroupFrequencyMatrix(sp.csr_matrix(np.array(frequency)), np.arange(6))


@pytest.fixture
def results():
    return [result(5, RejectionReason.RATIO_EXCEEDED), result(4, RejectionReason.ACCEPTED, (2, 0, 1))]


class TestNeighborReport:
    def setup_method(self):
        # stems must stay sorted for tag lookup
        self.gamma = make_gamma(
            [[1, 1, 0], [1, 0, 0], [0, 1, 1], [1, 0, 0], [0, 1, 1], [1, 1, 1]],
            stems=["dark", "noir", "spy"],
        )

    def test_indicator_ids_skip_unknown_stems(self):
        assert indicator_tag_ids(self.gamma, ["noir", None, "filmnoir"]) == {1}

    def test_only_accepted_films_are_listed(self, films, results):
        rows = report_neighbors(results + [result(3, RejectionReason.ACCEPTED, (1, 0, 2))],
                                films, self.gamma, {1})
        assert [r.item_id for r in rows] == [3, 4]
        assert rows[0].noir_tag == 0 and rows[1].noir_tag == 1
        assert rows[1].as_row() == [4, "Film 4", "1980", 2, "Film 2", "1975", 1]
        assert rows[0].as_row()[2] == ""


class TestEraReport:
    def test_frequencies(self, lam):
        assert era_frequencies(lam, [0, 1]).tolist() == [3, 1, 0]
        assert era_frequencies(lam, []).tolist() == [0, 0, 0]

    def test_population_is_reference_plus_accepted(self, films, lam, results):
        report = report_era_groups(results, [0, 1, 2, 3], films, lam, LABELS, cutoff=1960, top_k=5)
        assert (report.early_films, report.late_films, report.unknown_year_films) == (2, 2, 1)
        assert report.early == [("{a}", 3), ("{b}", 1)]
        assert report.late == [("{c}", 3), ("{b}", 1)]
        assert report.late_exclusive == [("{c}", 3)]

    def test_top_k_and_ties(self, films, lam, results):
        report = report_era_groups(results, [3], films, lam, LABELS, cutoff=1960, top_k=2)
        # film 5 is rejected and film 3 has no year, so film 4 is the only late film
        assert report.early == []
        assert report.late == [("{c}", 2)]

        report = report_era_groups([], [5], films, lam, LABELS, cutoff=1960, top_k=2)
        assert report.late == [("{a}", 9), ("{b}", 9)]

    def test_layout(self, films, lam, results):
        data = report_era_groups(results, [0, 1, 2], films, lam, LABELS, cutoff=1960, top_k=1).to_dict()
        assert data['early'] == [{'rank': 1, 'group': "{a}", 'frequency': 3}]
        assert data['cutoff'] == 1960 and data['top_k'] == 1


class TestRunSummary:
    def _summary(self, accepted=1):
        summary = RunSummary(seed=11)
        summary.record('normalize', films=10, tags=4, stems_before_stoplists=6)
        summary.record('training', training=4, non_noise=3, noise=1)
        results = [result(k, RejectionReason.ACCEPTED) for k in range(accepted)]
        results += [result(k, RejectionReason.MAX_DISTANCE) for k in range(accepted, 6)]
        summary.record_classification(results, ThresholdVector(1.26, 0.43, 0.43, 0.43), "configured",
                                      unlabeled=6, min_tags=5)
        return summary

    def test_classification_counts(self):
        data = self._summary().to_dict()
        classification = data['classification']
        assert data['seed'] == 11
        assert classification['accepted'] == 1
        assert classification['unlabeled_with_min_tags'] == 6
        assert classification['rejections']['max_distance'] == 5
        assert classification['rejections']['zero_vector'] == 0
        assert classification['theta'] == [1.26, 0.43, 0.43, 0.43]

    def test_count_checks(self):
        self._summary().check_counts()
        summary = self._summary()
        summary.record('training', training=5)
        with pytest.raises(ContractViolation, match="does not equal"):
            summary.check_counts()

    def test_partial_summary_skips_checks(self):
        summary = RunSummary(seed=1)
        summary.record('normalize', films=3, tags=2, stems_before_stoplists=2)
        summary.check_counts()

    def test_final_report(self):
        text = self._summary().generate_final_report()
        assert "θ = (1.26, 0.43, 0.43, 0.43) [configured]" in text
        assert "Accepted: 1" in text
        assert "max_distance: 5" in text
        assert "zero_vector" not in text
        assert "Seed: 11" in text
