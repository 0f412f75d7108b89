"""Stage orchestration: every stage reads its inputs from upstream artifacts"""

import logging
from typing import Callable, Dict, List, Optional

import numpy as np

from ..configuration import config
from ..configuration.config_manager import ConfigurationManager, RunConfig
from ..corpus_ingest import CorpusLoader, FilmRecord, IdOverrideTable, filter_narrative, retain_applications
from ..feature_matrix import FeatureReport, build_features
from ..oneclass_knn import (
    CvConfig,
    ReferenceSet,
    ThresholdSelector,
    ThresholdVector,
    TrainingPartition,
    classify_all,
    split_noise,
)
from ..reporting import RunSummary, indicator_tag_ids, report_era_groups, report_neighbors
from ..tag_cluster import ClusterReport, build_strong_graph, cluster_tags
from ..tag_normalize import (
    FilterReport,
    Stoplists,
    build_lexicon,
    build_matrix,
    load_stem_overrides,
    merge_space_variants,
)
from ..utils.error_handling import DataError, ErrorContext
from .artifact_store import ArtifactStore


class PipelineRunner:
    """Runs pipeline stages against one output directory"""

    def __init__(self, run_config: RunConfig, store: Optional[ArtifactStore] = None):
        self.config = run_config
        self.store = store or ArtifactStore(run_config.output_dir)
        self.logger = logging.getLogger(__name__)
        self._stages: Dict[str, Callable[[], None]] = {
            "ingest": self.ingest,
            "normalize": self.normalize,
            "cluster": self.cluster,
            "features": self.features,
            "select-threshold": self.select_threshold,
            "classify": self.classify,
            "report": self.report,
        }

    def run_stage(self, name: str):
        """Run one stage by its CLI name"""
        with ErrorContext(name):
            self._stages[name]()

    def run(self, stop_after: Optional[str] = None) -> RunSummary:
        """
        Run every stage in order

        Threshold selection runs only when the configuration asks for it.

        Args:
            stop_after: Last stage to execute

        Returns:
            RunSummary of the stages that ran
        """
        stop_after = stop_after or self.config.stop_after
        self.write_run_config()
        for name in config.STAGES:
            if name == "select-threshold" and not self.config.selects_thresholds:
                self.logger.info("Using configured thresholds; skipping threshold selection")
            else:
                self.run_stage(name)
            if name == stop_after:
                self.logger.info(f"Stopping after stage {name}")
                break

        summary = self.build_summary()
        self.store.write_json("summary.json", summary.to_dict())
        summary.log_final_report(self.logger)
        return summary

    def write_run_config(self):
        ConfigurationManager().write_effective_config(self.config, self.store.path("run_config.yaml"))

    # stages

    def ingest(self):
        cfg = self.config
        overrides = IdOverrideTable.load(cfg.overrides_path)
        loader = CorpusLoader(overrides)
        films, tag_apps = loader.load(cfg.links_path, cfg.tags_path, cfg.basics_path)
        films = filter_narrative(films, loader.report)
        tag_apps = retain_applications(tag_apps, films, loader.report)

        self.store.save_films(films)
        self.store.save_tag_applications(tag_apps)
        self.store.write_json("ingest_report.json", loader.report.to_dict())

    def _stem_overrides(self) -> Dict[str, str]:
        overrides = dict(config.DEFAULT_STEM_OVERRIDES)
        overrides.update(load_stem_overrides(self.config.stem_overrides_path))
        return overrides

    def normalize(self):
        cfg = self.config
        tag_apps = self.store.load_tag_applications()
        lexicon = merge_space_variants(build_lexicon((app.raw_tag for app in tag_apps), self._stem_overrides()))
        stoplists = Stoplists.load(cfg.person_stoplist_path, cfg.noinfo_stoplist_path)

        report = FilterReport()
        gamma = build_matrix(tag_apps, lexicon, cfg.min_users, cfg.min_films, stoplists, report)

        self.store.save_lexicon(lexicon)
        self.store.save_film_tag_matrix(gamma)
        self.store.write_json("normalize_report.json", report.to_dict())

    def cluster(self):
        gamma = self.store.load_film_tag_matrix()
        graph = build_strong_graph(gamma)
        report = ClusterReport()
        grouping = cluster_tags(gamma, workers=self.config.workers, graph=graph, report=report)

        self.store.save_graph(graph)
        self.store.save_grouping(grouping, gamma)
        self.store.write_json("cluster_report.json", report.to_dict())

    def features(self):
        gamma = self.store.load_film_tag_matrix()
        grouping = self.store.load_grouping(gamma)
        report = FeatureReport()
        lam, features = build_features(gamma, grouping, report)

        self.store.save_features(lam, features)
        self.store.write_json("feature_report.json", report.to_dict())

    def _training(self):
        """Films, Γ, Ψ, Λ, Φ and the noise split, all reloaded from artifacts"""
        cfg = self.config
        films = {film.item_id: film for film in self.store.load_films()}
        gamma = self.store.load_film_tag_matrix()
        grouping = self.store.load_grouping(gamma)
        lam, features = self.store.load_features(gamma, grouping)

        tag_counts = {int(i): int(c) for i, c in zip(gamma.item_ids, gamma.tag_counts)}
        training_ids = [int(i) for i in gamma.item_ids if films[int(i)].is_positive(cfg.positive_genre)]
        if not training_ids:
            raise DataError(f"No film carries the positive genre {cfg.positive_genre!r}")
        partition = split_noise(features, training_ids, [tag_counts[i] for i in training_ids], cfg.min_tags)
        self.store.save_noise_split(partition, films, tag_counts)
        return films, gamma, grouping, lam, features, tag_counts, partition

    def select_threshold(self):
        cfg = self.config
        _, _, _, _, features, _, partition = self._training()
        cv_config = CvConfig(
            neighbors=cfg.neighbors,
            folds=cfg.folds,
            repetitions=cfg.repetitions,
            seed=cfg.seed,
            refine=cfg.refine,
            workers=cfg.workers,
        )
        selection = ThresholdSelector(cv_config).run(partition, features)
        self.store.write_json("thresholds.json", selection.to_dict())

    def _theta(self):
        if self.config.selects_thresholds:
            chosen = self.store.read_json("thresholds.json")["chosen"]
            return ThresholdVector.from_values(chosen), "selected"
        return ThresholdVector.from_values(self.config.thresholds), "configured"

    def classify(self):
        cfg = self.config
        films, gamma, _, _, features, tag_counts, partition = self._training()
        theta, source = self._theta()

        reference = ReferenceSet.from_features(features, partition.non_noise, cfg.neighbors)
        training = set(int(i) for i in partition.training_set)
        unlabeled = [int(i) for i in gamma.item_ids if int(i) not in training]
        results = classify_all(features, unlabeled, [tag_counts[i] for i in unlabeled],
                               reference, theta, cfg.min_tags)

        summary = RunSummary(cfg.seed)
        summary.record_classification(results, theta, source, len(unlabeled), cfg.min_tags)
        self.store.save_results(results, films, cfg.neighbors)
        self.store.write_json("classification_report.json", summary.sections["classification"])

    def report(self):
        cfg = self.config
        films = {film.item_id: film for film in self.store.load_films()}
        gamma = self.store.load_film_tag_matrix()
        grouping = self.store.load_grouping(gamma)
        lam, _ = self.store.load_features(gamma, grouping)
        results = self.store.load_results(cfg.neighbors)
        non_noise = self.store.load_non_noise()

        lexicon = self.store.load_lexicon(self._stem_overrides())
        indicators = indicator_tag_ids(gamma, (lexicon.stem_for_text(tag) for tag in cfg.indicator_tags))
        rows = report_neighbors(results, films, gamma, indicators)
        self.store.write_csv(
            "neighbors_report.csv",
            ["item_id", "title", "year", "nn1_id", "nn1_title", "nn1_year", "noir_tag"],
            (row.as_row() for row in rows),
        )

        labels = [grouping.label(m, gamma.labels) for m in range(grouping.n_groups)]
        era = report_era_groups(results, non_noise, films, lam, labels, cfg.era_cutoff, cfg.top_k)
        self.store.write_json("era_report.json", era.to_dict())

    # summary

    def build_summary(self) -> RunSummary:
        """Headline counts gathered from whichever stage reports exist"""
        summary = RunSummary(self.config.seed)
        if self.store.exists("ingest_report.json"):
            ingest = self.store.read_json("ingest_report.json")
            summary.record("ingest", films_loaded=ingest["films_loaded"], films_retained=ingest["films_retained"],
                           duplicates_merged=ingest["duplicates_merged"],
                           applications_retained=ingest["applications_retained"])
        if self.store.exists("normalize_report.json"):
            normalize = self.store.read_json("normalize_report.json")
            summary.record("normalize", films=normalize["films_retained"], tags=normalize["stems_retained"],
                           stems_before_stoplists=normalize["stems_before_stoplists"],
                           space_variant_merges=normalize["space_variant_merges"])
        if self.store.exists("cluster_report.json"):
            cluster = self.store.read_json("cluster_report.json")
            summary.record("cluster", **{k: cluster[k] for k in
                                         ("components", "groups", "min_group_size", "max_group_size")})
        if self.store.exists("noise_split.csv"):
            rows = self.store.read_csv("noise_split.csv")
            non_noise = sum(1 for row in rows if row["role"] == "non_noise")
            summary.record("training", training=len(rows), non_noise=non_noise, noise=len(rows) - non_noise)
        if self.store.exists("classification_report.json"):
            summary.record("classification", **self.store.read_json("classification_report.json"))
        summary.check_counts()
        return summary
