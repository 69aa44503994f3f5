"""
Shared pytest fixtures: the seven-vertex toy graph and Zachary's karate club
"""

import os
import sys

import networkx as nx
import pytest

# Add the project root to path so tests import core/, features/, utils/, ui/
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.graph import parse_edge_list  # noqa: E402

TOY_EDGES = "1 2\n1 3\n2 3\n2 4\n3 4\n5 6\n5 7\n6 7\n"


@pytest.fixture
def toy_graph():
    """Two triangles sharing an edge plus a separate triangle, ids 1..7"""
    return parse_edge_list(TOY_EDGES)


@pytest.fixture
def toy_path(tmp_path):
    path = tmp_path / "toy.txt"
    path.write_text("# toy graph\n" + TOY_EDGES)
    return str(path)


@pytest.fixture
def triangle():
    return parse_edge_list("0 1\n1 2\n2 0\n")


@pytest.fixture
def karate_path(tmp_path):
    """Karate club edge list written with ids 0..33"""
    path = tmp_path / "karate.txt"
    lines = [f"{u} {v}" for u, v in nx.karate_club_graph().edges()]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def karate_truth_path(tmp_path):
    club = nx.karate_club_graph()
    path = tmp_path / "karate_truth.txt"
    lines = [f"{v} {0 if club.nodes[v]['club'] == 'Mr. Hi' else 1}" for v in sorted(club.nodes())]
    path.write_text("\n".join(lines) + "\n")
    return str(path)
