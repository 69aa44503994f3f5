"""
Tests for configuration parsing, logging setup, phase timing, partitions and
partition files
"""

import io
import logging

import pytest

import config
from core.errors import ConfigError, PartitionFileError
from core.partition import Partition
from utils.file_formats import read_community_file, read_partition, write_partition
from utils.log_setup import configure_logging
from utils.timing import PHASES, PhaseTimer


def test_env_int(monkeypatch):
    monkeypatch.setenv("CLIQUETFIDF_TEST_VALUE", "12")
    assert config._env_int("CLIQUETFIDF_TEST_VALUE", 3) == 12
    monkeypatch.setenv("CLIQUETFIDF_TEST_VALUE", "twelve")
    with pytest.raises(ConfigError):
        config._env_int("CLIQUETFIDF_TEST_VALUE", 3)
    monkeypatch.setenv("CLIQUETFIDF_TEST_VALUE", "0")
    with pytest.raises(ConfigError):
        config._env_int("CLIQUETFIDF_TEST_VALUE", 3, minimum=1)
    monkeypatch.delenv("CLIQUETFIDF_TEST_VALUE")
    assert config._env_int("CLIQUETFIDF_TEST_VALUE", 3) == 3


def test_env_float(monkeypatch):
    monkeypatch.setenv("CLIQUETFIDF_TEST_TOL", "1e-6")
    assert config._env_float("CLIQUETFIDF_TEST_TOL", 1e-4) == 1e-6
    monkeypatch.setenv("CLIQUETFIDF_TEST_TOL", "small")
    with pytest.raises(ConfigError):
        config._env_float("CLIQUETFIDF_TEST_TOL", 1e-4)


def test_verbosity_levels():
    stream = io.StringIO()
    assert configure_logging(2, stream=stream) == logging.DEBUG
    assert configure_logging(1, stream=stream) == logging.INFO
    logging.getLogger("cliquetfidf.test").info("hello")
    assert "INFO cliquetfidf.test: hello" in stream.getvalue()
    configure_logging(0, stream=io.StringIO())


def test_phase_timer_orders_phases():
    timer = PhaseTimer()
    for name in ("metrics", "parse", "custom", "parse"):
        with timer.phase(name):
            pass
    assert list(timer.as_dict()) == ["parse", "metrics", "custom"]
    assert timer.total == pytest.approx(sum(timer.seconds.values()))
    assert PHASES[0] == "parse" and PHASES[-1] == "metrics"


def test_partition_numbering_follows_first_vertex():
    p = Partition.from_labels(["b", "a", "b", "c"])
    assert p.assignment == (0, 1, 0, 2)
    assert p.blocks == ((0, 2), (1,), (3,))
    assert Partition.singletons(3).refines(Partition.single_block(3))
    assert not Partition.single_block(3).refines(Partition.singletons(3))


def test_partition_file_round_trip(toy_graph, tmp_path):
    p = Partition.from_labels([0, 0, 0, 0, 1, 1, 1])
    path = tmp_path / "toy.part"
    write_partition(p, toy_graph, path=path, header="method=aggl k=2 seed=0")
    assert read_partition(path, toy_graph) == p


def test_partition_file_with_extra_vertex(toy_graph, tmp_path):
    path = tmp_path / "extra.part"
    path.write_text("".join(f"{v} 0\n" for v in range(1, 9)))
    with pytest.raises(PartitionFileError):
        read_partition(path, toy_graph)
    assert read_partition(path, toy_graph, allow_extra=True) == Partition.single_block(7)


@pytest.mark.parametrize("text", ["1\n", "x 1\n", "1 1\n1 2\n"])
def test_malformed_partition_files(tmp_path, text):
    path = tmp_path / "bad.part"
    path.write_text(text)
    with pytest.raises(PartitionFileError):
        read_community_file(path)
