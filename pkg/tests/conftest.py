"""Shared fixtures: one synthetic dataset per session plus views onto it.

The dataset is deterministic (seed 42), so session scope is safe; tests
treat the workspace caches as read-only state.
"""

import json

import pytest

from meedav import LocalBackend, TrialWorkspace
from meedav.synth import GROUND_TRUTH_FILENAME, generate_dataset


@pytest.fixture(scope="session")
def dataset_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("dataset")
    generate_dataset(root, seed=42, n_trials=3)
    return root


@pytest.fixture(scope="session")
def ground_truth(dataset_dir):
    return json.loads((dataset_dir / GROUND_TRUTH_FILENAME).read_text())


@pytest.fixture(scope="session")
def workspace(dataset_dir):
    return TrialWorkspace(LocalBackend(dataset_dir))


@pytest.fixture(scope="session")
def basenames(ground_truth):
    return [t["basename"] for t in ground_truth["trials"]]
