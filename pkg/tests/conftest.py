"""
Shared test fixtures for the noir tag pipeline.

Provides the synthetic corpus, run configurations built from it, a
completed pipeline run shared by the integration tests, and small helpers
for hand-made matrices.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from packages.configuration import ConfigurationManager  # noqa: E402
from packages.pipeline import ArtifactStore, PipelineRunner  # noqa: E402
from tests.fixtures.synthetic_corpus import synthetic_settings, write_synthetic_corpus  # noqa: E402


# =============================================================================
# Synthetic corpus fixtures
# =============================================================================

@pytest.fixture
def synthetic_corpus(tmp_path):
    """Input files of the synthetic corpus, keyed by RunConfig field"""
    return write_synthetic_corpus(tmp_path / 'inputs')


@pytest.fixture
def make_run_config(tmp_path):
    """
    Factory building a validated RunConfig over the synthetic corpus.

    Keyword arguments override individual settings.
    """
    def factory(output_name='artifacts', **overrides):
        settings = synthetic_settings(tmp_path / 'inputs', tmp_path / output_name, **overrides)
        return ConfigurationManager().build(settings)
    return factory


@pytest.fixture(scope='session')
def completed_run(tmp_path_factory):
    """One full pipeline run with configured thresholds, shared across tests"""
    base = tmp_path_factory.mktemp('completed_run')
    run_config = ConfigurationManager().build(synthetic_settings(base / 'inputs', base / 'artifacts'))
    store = ArtifactStore(run_config.output_dir)
    summary = PipelineRunner(run_config, store).run()
    return run_config, store, summary


# =============================================================================
# Property-test helpers
# =============================================================================

@pytest.fixture
def rng():
    """Seeded generator for property-style tests"""
    return np.random.default_rng(20200121)
