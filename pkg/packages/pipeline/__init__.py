"""Stage orchestration and artifact persistence"""

from .artifact_store import ArtifactStore, format_value
from .pipeline_runner import PipelineRunner

__all__ = [
    'ArtifactStore',
    'format_value',
    'PipelineRunner',
]
