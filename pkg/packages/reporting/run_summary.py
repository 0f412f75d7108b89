"""Run summary: machine-readable counts and the final console report"""

import logging
from collections import Counter
from typing import Any, Dict, List, Optional, Sequence

from ..oneclass_knn.types import ClassificationResult, RejectionReason, ThresholdVector
from ..utils.error_handling import require


class RunSummary:
    """Collects the headline counts of a pipeline run"""

    def __init__(self, seed: int):
        self.seed = seed
        self.sections: Dict[str, Dict[str, Any]] = {}

    def record(self, section: str, **values: Any):
        self.sections.setdefault(section, {}).update(values)

    def record_classification(self, results: Sequence[ClassificationResult], theta: ThresholdVector,
                              theta_source: str, unlabeled: int, min_tags: int):
        reasons = Counter(r.rejection_reason.value for r in results)
        self.record(
            'classification',
            unlabeled=unlabeled,
            unlabeled_with_min_tags=sum(1 for r in results if r.tag_count >= min_tags),
            accepted=reasons.get(RejectionReason.ACCEPTED.value, 0),
            rejections={reason.value: reasons.get(reason.value, 0)
                        for reason in RejectionReason if reason is not RejectionReason.ACCEPTED},
            theta=list(theta.as_tuple()),
            theta_source=theta_source,
        )

    def check_counts(self):
        """accepted ≤ |U with enough tags| ≤ |U| = N − |T|"""
        classification = self.sections.get('classification')
        matrix = self.sections.get('normalize')
        training = self.sections.get('training')
        if not (classification and matrix and training):
            return
        require(classification['accepted'] <= classification['unlabeled_with_min_tags'],
                "more films accepted than have enough tags")
        require(classification['unlabeled_with_min_tags'] <= classification['unlabeled'],
                "tag-count subset larger than the unlabeled set")
        require(classification['unlabeled'] == matrix['films'] - training['training'],
                "unlabeled count does not equal N - |T|")

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'seed': self.seed}
        for section in sorted(self.sections):
            data[section] = self.sections[section]
        return data

    def generate_final_report(self) -> str:
        """Human-readable summary printed at the end of a run"""
        lines: List[str] = []
        lines.append("🎬 NOIR TAG PIPELINE - RUN SUMMARY")
        lines.append("=" * 60)

        ingest = self.sections.get('ingest')
        if ingest:
            lines.append("\n📥 CORPUS")
            lines.append("-" * 40)
            lines.append(f"Films loaded: {ingest['films_loaded']}")
            lines.append(f"Narrative films: {ingest['films_retained']}")
            lines.append(f"Duplicate IMDb ids merged: {ingest['duplicates_merged']}")

        matrix = self.sections.get('normalize')
        if matrix:
            lines.append("\n🏷️  TAGS")
            lines.append("-" * 40)
            lines.append(f"Stems before stoplists: {matrix['stems_before_stoplists']}")
            lines.append(f"Films N: {matrix['films']}")
            lines.append(f"Tags L: {matrix['tags']}")

        cluster = self.sections.get('cluster')
        if cluster:
            lines.append("\n🔗 TAG GROUPS")
            lines.append("-" * 40)
            lines.append(f"Connected subgraphs: {cluster['components']}")
            lines.append(f"Groups M: {cluster['groups']} (sizes {cluster['min_group_size']}-{cluster['max_group_size']})")

        training = self.sections.get('training')
        if training:
            lines.append("\n🎯 TRAINING")
            lines.append("-" * 40)
            lines.append(f"|T| = {training['training']}, |S| = {training['non_noise']}, noise = {training['noise']}")

        classification = self.sections.get('classification')
        if classification:
            theta = ", ".join(f"{v:g}" for v in classification['theta'])
            lines.append("\n✅ CLASSIFICATION")
            lines.append("-" * 40)
            lines.append(f"θ = ({theta}) [{classification['theta_source']}]")
            lines.append(f"Unlabeled films: {classification['unlabeled']} "
                         f"({classification['unlabeled_with_min_tags']} with enough tags)")
            lines.append(f"Accepted: {classification['accepted']}")
            for reason, count in classification['rejections'].items():
                if count:
                    lines.append(f"   ❌ {reason}: {count}")

        lines.append(f"\n🎲 Seed: {self.seed}")
        return "\n".join(lines)

    def log_final_report(self, logger: Optional[logging.Logger] = None):
        (logger or logging.getLogger(__name__)).info("\n" + self.generate_final_report())
