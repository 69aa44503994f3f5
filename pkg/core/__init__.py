from core.graph import Graph, VertexMap, parse_edge_list
from core.partition import Partition

__all__ = ['Graph', 'VertexMap', 'parse_edge_list', 'Partition']
