"""
Partition Module - Vertex partitions with canonical block numbering
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Partition:
    """
    Assignment of every vertex to exactly one block

    Block ids are 0..k-1, numbered by the smallest vertex each block contains,
    so two partitions with the same blocks compare equal.

    Attributes:
        assignment (tuple): block id per compact vertex id
        k (int): block count
        blocks (tuple): per block, the sorted tuple of its vertices
    """

    assignment: tuple
    k: int
    blocks: tuple

    @classmethod
    def from_labels(cls, labels):
        """Build a partition from arbitrary per-vertex block labels"""
        renumber = {}
        assignment = []
        blocks = []
        for v, label in enumerate(labels):
            block = renumber.get(label)
            if block is None:
                block = renumber[label] = len(blocks)
                blocks.append([])
            assignment.append(block)
            blocks[block].append(v)
        return cls(tuple(assignment), len(blocks), tuple(tuple(b) for b in blocks))

    @classmethod
    def singletons(cls, n):
        return cls.from_labels(range(n))

    @classmethod
    def single_block(cls, n):
        return cls.from_labels([0] * n)

    @property
    def n(self):
        return len(self.assignment)

    def as_array(self):
        return np.asarray(self.assignment, dtype=np.int64)

    def block_sets(self):
        """Blocks as a set of frozensets, independent of numbering"""
        return {frozenset(block) for block in self.blocks}

    def refines(self, coarser):
        """True when every block of self lies inside one block of coarser"""
        return all(len({coarser.assignment[v] for v in block}) == 1 for block in self.blocks)
