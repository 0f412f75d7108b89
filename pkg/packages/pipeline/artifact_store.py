"""
Stage artifacts: flat CSV/JSON files in the output directory.

Writes go to a temporary file that is renamed into place. Floats use
Python's shortest round-trip repr so reloading reproduces them exactly.
"""

import csv
import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from ..corpus_ingest.records import FilmRecord, TagApplication, TitleType
from ..feature_matrix.tgfiff import FeatureMatrix, GroupFrequencyMatrix
from ..oneclass_knn.types import ClassificationResult, RejectionReason, TrainingPartition
from ..tag_cluster.partitioner import TagGrouping
from ..tag_cluster.tag_graph import TagGraph
from ..tag_normalize.matrix_builder import FilmTagMatrix
from ..tag_normalize.tag_normalizer import StemLexicon
from ..utils.error_handling import DataError, file_operation_safe


def format_value(value: Any) -> str:
    """CSV cell text; floats round-trip exactly"""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return ""
        return repr(value)
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def parse_float(text: str) -> float:
    return math.nan if text == "" else float(text)


def parse_optional_int(text: str) -> Optional[int]:
    return None if text == "" else int(text)


class ArtifactStore:
    """Reads and writes the artifacts of one output directory"""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)

    def path(self, name: str) -> Path:
        return self.output_dir / name

    def exists(self, name: str) -> bool:
        return self.path(name).exists()

    def _atomic_write(self, name: str, write) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        target = self.path(name)
        handle, temp_name = tempfile.mkstemp(prefix=f".{name}.", dir=self.output_dir)
        try:
            with os.fdopen(handle, 'w', encoding='utf-8', newline='') as f:
                write(f)
            os.replace(temp_name, target)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise
        logging.debug(f"Wrote {target}")
        return target

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        def write(f):
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
        return self._atomic_write(name, write)

    def write_json(self, name: str, data: Dict[str, Any]) -> Path:
        def write(f):
            f.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
            f.write("\n")
        return self._atomic_write(name, write)

    def _require(self, name: str) -> Path:
        path = self.path(name)
        if not path.exists():
            raise DataError(f"Artifact {path} is missing; run the stage that produces it first")
        return path

    @file_operation_safe("read artifact")
    def read_csv(self, name: str) -> List[Dict[str, str]]:
        with open(self._require(name), 'r', encoding='utf-8', newline='') as f:
            return list(csv.DictReader(f))

    @file_operation_safe("read artifact")
    def read_json(self, name: str) -> Dict[str, Any]:
        with open(self._require(name), 'r', encoding='utf-8') as f:
            return json.load(f)

    # ingest

    def save_films(self, films: Sequence[FilmRecord]) -> Path:
        return self.write_csv(
            "films.csv",
            ["item_id", "imdb_id", "movielens_ids", "title", "year", "title_type", "is_documentary", "genres"],
            ([f.item_id, f.imdb_id, ";".join(str(m) for m in f.movielens_ids), f.title, f.year,
              f.title_type.value, f.is_documentary, ",".join(f.genres)] for f in films),
        )

    def load_films(self) -> List[FilmRecord]:
        films = []
        for row in self.read_csv("films.csv"):
            films.append(FilmRecord(
                item_id=int(row["item_id"]),
                movielens_ids=tuple(int(m) for m in row["movielens_ids"].split(";") if m),
                imdb_id=row["imdb_id"],
                title=row["title"],
                year=parse_optional_int(row["year"]),
                title_type=TitleType(row["title_type"]),
                is_documentary=row["is_documentary"] == "1",
                genres=tuple(g for g in row["genres"].split(",") if g),
            ))
        return films

    def save_tag_applications(self, tag_apps: Sequence[TagApplication]) -> Path:
        return self.write_csv(
            "tag_applications.csv",
            ["user_id", "item_id", "raw_tag", "timestamp"],
            ([a.user_id, a.item_id, a.raw_tag, a.timestamp] for a in tag_apps),
        )

    def load_tag_applications(self) -> List[TagApplication]:
        return [
            TagApplication(int(row["user_id"]), int(row["item_id"]), row["raw_tag"], int(row["timestamp"]))
            for row in self.read_csv("tag_applications.csv")
        ]

    # normalize

    def save_lexicon(self, lexicon: StemLexicon) -> Path:
        return self.write_csv("lexicon.csv", ["raw", "canonical", "stem", "label"], lexicon.rows())

    def load_lexicon(self, overrides: Dict[str, str]) -> StemLexicon:
        lexicon = StemLexicon(overrides=dict(overrides))
        for row in self.read_csv("lexicon.csv"):
            lexicon.canonical_of[row["raw"]] = row["canonical"]
            lexicon.stem_of[row["canonical"]] = row["stem"]
            lexicon.label_of[row["stem"]] = row["label"]
        return lexicon

    def save_film_tag_matrix(self, gamma: FilmTagMatrix):
        self.write_csv(
            "tags.csv",
            ["tag_id", "stem", "label", "user_count", "film_count"],
            ([t, gamma.stems[t], gamma.labels[t], gamma.tag_user_count[t], gamma.tag_film_count[t]]
             for t in range(gamma.n_tags)),
        )
        coo = gamma.incidence.tocoo()
        pairs = sorted(zip(gamma.item_ids[coo.row].tolist(), coo.col.tolist()))
        self.write_csv("film_tags.csv", ["item_id", "tag_id"], pairs)

    def load_film_tag_matrix(self) -> FilmTagMatrix:
        tag_rows = self.read_csv("tags.csv")
        pairs = [(int(row["item_id"]), int(row["tag_id"])) for row in self.read_csv("film_tags.csv")]
        item_ids = np.array(sorted({item_id for item_id, _ in pairs}), dtype=np.int64)
        row_of = {int(item_id): row for row, item_id in enumerate(item_ids)}
        incidence = sp.csr_matrix(
            (np.ones(len(pairs), dtype=np.int64),
             ([row_of[i] for i, _ in pairs], [t for _, t in pairs])),
            shape=(len(item_ids), len(tag_rows)),
        )
        return FilmTagMatrix(
            incidence=incidence,
            item_ids=item_ids,
            stems=[row["stem"] for row in tag_rows],
            labels=[row["label"] for row in tag_rows],
            tag_user_count=np.array([int(row["user_count"]) for row in tag_rows], dtype=np.int64),
            tag_film_count=np.array([int(row["film_count"]) for row in tag_rows], dtype=np.int64),
        )

    # cluster

    def save_graph(self, graph: TagGraph) -> Path:
        return self.write_csv("graph_edges.csv", ["from", "to", "weight"], graph.edges())

    def save_grouping(self, grouping: TagGrouping, gamma: FilmTagMatrix) -> Path:
        return self.write_csv(
            "tag_groups.csv",
            ["tag_label", "group_id"],
            ([gamma.labels[t], grouping.group_of[t]] for t in range(grouping.n_tags)),
        )

    def load_grouping(self, gamma: FilmTagMatrix) -> TagGrouping:
        rows = self.read_csv("tag_groups.csv")
        if [row["tag_label"] for row in rows] != list(gamma.labels):
            raise DataError("tag_groups.csv does not match tags.csv; rerun the cluster stage")
        return TagGrouping.from_group_of([int(row["group_id"]) for row in rows])

    # features

    def save_features(self, lam: GroupFrequencyMatrix, features: FeatureMatrix):
        frequency = lam.frequency.tocoo()
        self.write_csv(
            "group_frequency.csv", ["item_id", "group_id", "frequency"],
            sorted(zip(lam.item_ids[frequency.row].tolist(), frequency.col.tolist(), frequency.data.tolist())),
        )
        weights = features.weights.tocoo()
        self.write_csv(
            "features.csv", ["item_id", "group_id", "weight"],
            sorted(zip(features.item_ids[weights.row].tolist(), weights.col.tolist(), weights.data.tolist())),
        )

    def _triplets(self, name: str, column: str, item_ids: np.ndarray, n_groups: int, dtype, parse):
        row_of = {int(item_id): row for row, item_id in enumerate(item_ids)}
        rows, cols, values = [], [], []
        for row in self.read_csv(name):
            rows.append(row_of[int(row["item_id"])])
            cols.append(int(row["group_id"]))
            values.append(parse(row[column]))
        return sp.csr_matrix((np.array(values, dtype=dtype), (rows, cols)), shape=(len(item_ids), n_groups))

    def load_features(self, gamma: FilmTagMatrix, grouping: TagGrouping):
        """(GroupFrequencyMatrix, FeatureMatrix) with rows in Γ order"""
        lam = GroupFrequencyMatrix(
            self._triplets("group_frequency.csv", "frequency", gamma.item_ids, grouping.n_groups, np.int64, int),
            gamma.item_ids.copy(),
        )
        features = FeatureMatrix(
            self._triplets("features.csv", "weight", gamma.item_ids, grouping.n_groups, np.float64, float),
            gamma.item_ids.copy(),
        )
        return lam, features

    # training, thresholds and results

    def save_noise_split(self, partition: TrainingPartition, films: Dict[int, FilmRecord],
                         tag_counts: Dict[int, int]) -> Path:
        non_noise = set(int(i) for i in partition.non_noise)
        return self.write_csv(
            "noise_split.csv",
            ["item_id", "imdb_id", "title", "tag_count", "center_distance", "role", "noise_reason"],
            ([int(i), films[int(i)].imdb_id, films[int(i)].title, tag_counts[int(i)],
              partition.distance_of(i), "non_noise" if int(i) in non_noise else "noise",
              partition.noise_reason.get(int(i), "")]
             for i in partition.training_set),
        )

    def load_non_noise(self) -> List[int]:
        return [int(row["item_id"]) for row in self.read_csv("noise_split.csv") if row["role"] == "non_noise"]

    def save_results(self, results: Sequence[ClassificationResult], films: Dict[int, FilmRecord],
                     neighbor_count: int) -> Path:
        header = ["item_id", "imdb_id", "title", "year", "accepted", "reason", "r"]
        for j in range(1, neighbor_count + 1):
            header += [f"nn{j}_id", f"nn{j}_d"]
        header.append("tag_count")

        def rows():
            for result in results:
                film = films[result.item_id]
                row = [result.item_id, film.imdb_id, film.title, film.year, result.accepted,
                       result.rejection_reason.value, result.ratio]
                for j in range(neighbor_count):
                    if j < len(result.neighbors):
                        row += [result.neighbors[j][0], result.neighbors[j][1]]
                    else:
                        row += [None, None]
                row.append(result.tag_count)
                yield row

        return self.write_csv("results.csv", header, rows())

    def load_results(self, neighbor_count: int) -> List[ClassificationResult]:
        results = []
        for row in self.read_csv("results.csv"):
            neighbors = tuple(
                (int(row[f"nn{j}_id"]), float(row[f"nn{j}_d"]))
                for j in range(1, neighbor_count + 1) if row[f"nn{j}_id"] != ""
            )
            results.append(ClassificationResult(
                item_id=int(row["item_id"]),
                accepted=row["accepted"] == "1",
                tag_count=int(row["tag_count"]),
                neighbors=neighbors,
                neighbor_self_distances=(),
                ratio=parse_float(row["r"]),
                rejection_reason=RejectionReason(row["reason"]),
            ))
        return results
