"""
File Formats Module - Reading and writing the pipeline's text artifacts

- clique dump: "d=<count>" header, then one clique per line as original ids
- embedding export: "n d nnz" header, then "row col value" triplets, plus a
  "<path>.map" sidecar of "compact_id original_id" lines
- partition / community files: "vertex_id block_id" per line, '#' comments
"""

import logging
import os
from dataclasses import dataclass

import pandas as pd

from core.errors import PartitionFileError
from core.partition import Partition

logger = logging.getLogger(__name__)


def ensure_parent(path):
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)


def write_clique_dump(clique_set, graph, path):
    """Write every clique with original vertex ids, canonical order"""
    ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"d={clique_set.d}\n")
        for clique in clique_set.cliques:
            f.write(" ".join(str(graph.label(v)) for v in clique) + "\n")


def read_clique_dump(path):
    """
    Read a clique dump back

    Returns:
        list: cliques as tuples of original ids

    Raises:
        ValueError: when the header count disagrees with the body
    """
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip()
        if not header.startswith("d="):
            raise ValueError(f"clique dump must start with 'd=<count>', got {header!r}")
        cliques = [tuple(int(x) for x in line.split()) for line in f if line.strip()]
    expected = int(header[2:])
    if expected != len(cliques):
        raise ValueError(f"header announces {expected} cliques, body has {len(cliques)}")
    return cliques


def export_embedding(embedding, graph, path):
    """
    Write the embedding as coordinate triplets plus a vertex-id sidecar

    Returns:
        str: path of the sidecar mapping file
    """
    ensure_parent(path)
    Z = embedding.Z.tocoo()
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{embedding.n} {embedding.d} {Z.nnz}\n")
        for row, col, value in zip(Z.row.tolist(), Z.col.tolist(), Z.data.tolist()):
            f.write(f"{row} {col} {value!r}\n")
    map_path = f"{path}.map"
    with open(map_path, "w", encoding="utf-8", newline="\n") as f:
        for v in range(graph.n):
            f.write(f"{v} {graph.label(v)}\n")
    logger.info("Wrote %d embedding entries to %s", Z.nnz, path)
    return map_path


def write_partition(partition, graph, path=None, stream=None, header=None):
    """
    Write "original_vertex_id block_id" lines sorted by vertex id

    Args:
        header (str, optional): metadata written as a leading '#' comment
    """
    if path is not None:
        ensure_parent(path)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            write_partition(partition, graph, stream=f, header=header)
        return
    if header:
        stream.write(f"# {header}\n")
    for v in sorted(range(graph.n), key=graph.label):
        stream.write(f"{graph.label(v)} {partition.assignment[v]}\n")


@dataclass(frozen=True)
class LabeledPartition:
    """
    Partition read from a file, still keyed by original vertex ids

    Attributes:
        vertex_ids (tuple): original ids, ascending; position i is vertex i of partition
        partition (Partition): blocks over those positions, ids compacted
    """

    vertex_ids: tuple
    partition: Partition

    @property
    def k(self):
        return self.partition.k

    def align(self, graph, allow_extra=False):
        """
        Re-express the partition over a graph's compact ids

        Args:
            allow_extra (bool): tolerate file vertices the graph lacks
                (a ground truth read against a giant component)

        Raises:
            PartitionFileError: when a graph vertex is missing from the file,
                or the file has extra vertices and allow_extra is False
        """
        block_of = dict(zip(self.vertex_ids, self.partition.assignment))
        missing = [graph.label(v) for v in range(graph.n) if graph.label(v) not in block_of]
        if missing:
            raise PartitionFileError(
                f"{len(missing)} graph vertices have no block, first missing id {missing[0]}"
            )
        if not allow_extra and len(block_of) != graph.n:
            extra = sorted(set(block_of) - set(graph.vertex_map.forward))
            raise PartitionFileError(
                f"{len(extra)} listed vertices are not in the graph, first extra id {extra[0]}"
            )
        return Partition.from_labels([block_of[graph.label(v)] for v in range(graph.n)])


def read_community_file(path):
    """
    Read a "vertex_id community_id" file

    Returns:
        LabeledPartition

    Raises:
        PartitionFileError: on malformed lines or a vertex listed twice
    """
    try:
        frame = pd.read_csv(
            path,
            sep=r"\s+",
            comment="#",
            header=None,
            usecols=[0, 1],
            dtype=str,
        ).rename(columns={0: "vertex", 1: "block"})
    except pd.errors.EmptyDataError:
        raise PartitionFileError(f"{path}: no vertex assignments found") from None
    except (pd.errors.ParserError, ValueError) as e:
        raise PartitionFileError(f"{path}: {e}") from None

    if frame.empty:
        raise PartitionFileError(f"{path}: no vertex assignments found")
    if frame.isna().any().any():
        bad = int(frame.index[frame.isna().any(axis=1)][0]) + 1
        raise PartitionFileError(f"{path}: assignment {bad} needs a vertex id and a block id")
    integral = frame["vertex"].str.fullmatch(r"\d+")
    if not integral.all():
        bad = frame["vertex"][~integral].iloc[0]
        raise PartitionFileError(f"{path}: vertex ids must be non-negative integers, got {bad!r}")
    vertices = frame["vertex"].astype("int64")

    duplicated = vertices[vertices.duplicated()]
    if not duplicated.empty:
        raise PartitionFileError(f"{path}: vertex {int(duplicated.iloc[0])} listed more than once")

    frame = frame.assign(vertex=vertices).sort_values("vertex", kind="stable")
    vertex_ids = tuple(int(v) for v in frame["vertex"])
    partition = Partition.from_labels(frame["block"].tolist())
    return LabeledPartition(vertex_ids, partition)


def read_partition(path, graph, allow_extra=False):
    """Read a partition file and align it to the graph"""
    return read_community_file(path).align(graph, allow_extra=allow_extra)
