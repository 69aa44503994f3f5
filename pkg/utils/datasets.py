"""
Datasets Module - Resolve a dataset argument to a Graph

An argument is either a path to an edge-list file or the name of a bundled
network: "toy" (the seven-vertex example in data/) or "karate" (Zachary's
karate club as shipped with networkx).
"""

import logging
import os

import networkx as nx

from config import TOY_GRAPH_PATH
from core.errors import DatasetNotFoundError
from core.graph import Graph, read_edge_list
from core.partition import Partition
from utils.file_formats import LabeledPartition

logger = logging.getLogger(__name__)


def _karate():
    club = nx.karate_club_graph()
    return Graph.from_edges(club.number_of_nodes(), club.edges(), labels=range(club.number_of_nodes()))


BUILTIN_DATASETS = {
    "toy": lambda: read_edge_list(TOY_GRAPH_PATH),
    "karate": _karate,
}


def load_dataset(name_or_path):
    """
    Load an edge-list file or a bundled network

    Raises:
        DatasetNotFoundError: when the argument is neither
        GraphParseError: when the file is malformed
    """
    if os.path.isfile(name_or_path):
        logger.info("Reading edge list %s", name_or_path)
        return read_edge_list(name_or_path)
    if name_or_path in BUILTIN_DATASETS:
        logger.info("Using bundled dataset %s", name_or_path)
        return BUILTIN_DATASETS[name_or_path]()
    raise DatasetNotFoundError(
        f"{name_or_path!r} is not a file or a bundled dataset ({', '.join(sorted(BUILTIN_DATASETS))})"
    )


def karate_ground_truth():
    """The two-faction split of the karate club, keyed by vertex id"""
    club = nx.karate_club_graph()
    nodes = sorted(club.nodes())
    factions = [club.nodes[v]["club"] for v in nodes]
    return LabeledPartition(tuple(nodes), Partition.from_labels(factions))
