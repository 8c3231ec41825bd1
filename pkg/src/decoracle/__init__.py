"""Decremental approximate distance oracle for unweighted undirected graphs."""
from .estree import INF, EsTree, LevelIncrease
from .graph import (DeletionReceipt, DynamicGraph, EdgeAbsent, GraphError, GraphFormatError,
                    SelfLoop, cycle_graph, format_graph, gnp_graph, parse_graph, path_graph,
                    random_deletion_order, read_graph, star_graph, two_block_graph)
from .heaps import HeavyHeaps
from .light import BetaBalls, LightTree, NotLightTester, StaleState
from .oracle import ConfigInvalid, Oracle, OracleConfig, QueryAnswer, UpdateStats
from .pivots import Pivots
from .provider import ExactProvider, ProviderParams
from .sampling import SampleSets, audit, draw

__all__ = [
    "INF", "EsTree", "LevelIncrease", "DeletionReceipt", "DynamicGraph", "EdgeAbsent",
    "GraphError", "GraphFormatError", "SelfLoop", "cycle_graph", "format_graph", "gnp_graph",
    "parse_graph", "path_graph", "random_deletion_order", "read_graph", "star_graph",
    "two_block_graph", "HeavyHeaps", "BetaBalls", "LightTree", "NotLightTester", "StaleState",
    "ConfigInvalid", "Oracle", "OracleConfig", "QueryAnswer", "UpdateStats", "Pivots",
    "ExactProvider", "ProviderParams", "SampleSets", "audit", "draw",
]
