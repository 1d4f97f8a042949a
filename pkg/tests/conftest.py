import shutil
from pathlib import Path

import pytest

from fedrdma_sim.network.wan import GBPS, PathConfig
from fedrdma_sim.utils.chunking import Blob


@pytest.fixture(scope="session")
def tests_path():
    return Path(__file__).parent.absolute()


@pytest.fixture(scope="session")
def root_path(tests_path):
    return tests_path / ".."


@pytest.fixture()
def output_dir(tests_path):
    output_dir = tests_path / "output"
    yield output_dir
    shutil.rmtree(output_dir, ignore_errors=True)


@pytest.fixture(scope="session")
def random_blob():
    return Blob.random(100_000, seed=42)


@pytest.fixture()
def lossless_path():
    # Sender slower than the drain rate: the weak node never drops.
    return PathConfig(sender_rate=2 * GBPS, rtt=0.002, packet_overhead=0)


@pytest.fixture()
def default_path():
    return PathConfig()
