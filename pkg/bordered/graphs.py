"""
Graph views of type-D structures: isomorphism and summand splitting
"""

import logging
from typing import Dict, List, Optional

import networkx as nx
from networkx.algorithms import isomorphism

from torus_algebra.algebra import unit

from .exceptions import StructureValidationError
from .structures import DMorphism, TypeDStructure

logger = logging.getLogger(__name__)


def to_graph(structure: TypeDStructure) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph(name=structure.name)
    for g, idempotent in structure.generators.items():
        graph.add_node(g, idempotent=int(idempotent))
    for x, a, y in structure.arrows:
        graph.add_edge(x, y, label=a.value)
    return graph


_node_match = isomorphism.categorical_node_match('idempotent', None)
_edge_match = isomorphism.categorical_multiedge_match('label', None)


def find_isomorphism(first: TypeDStructure, second: TypeDStructure) -> Optional[Dict[str, str]]:
    """Generator bijection carrying arrows to arrows with equal labels, or None"""
    if len(first) != len(second) or len(first.arrows) != len(second.arrows):
        return None
    matcher = isomorphism.MultiDiGraphMatcher(
        to_graph(first), to_graph(second), node_match=_node_match, edge_match=_edge_match,
    )
    for mapping in matcher.isomorphisms_iter():
        return dict(mapping)
    return None


def is_isomorphic(first: TypeDStructure, second: TypeDStructure) -> bool:
    return find_isomorphism(first, second) is not None


def split_summands(structure: TypeDStructure) -> List[TypeDStructure]:
    """Connected components of the arrow graph, in generator order"""
    graph = to_graph(structure)
    order = {g: i for i, g in enumerate(structure.generators)}
    components = sorted(nx.weakly_connected_components(graph), key=lambda c: min(order[g] for g in c))
    summands = [
        structure.restricted(sorted(c, key=order.get), name=f'{structure.name}[{i}]')
        for i, c in enumerate(components)
    ]
    logger.debug(f'{structure.name}: {len(summands)} summand(s)')
    return summands


def _check_summand(summand: TypeDStructure, structure: TypeDStructure) -> None:
    for g, idempotent in summand.generators.items():
        if structure.generators.get(g) != idempotent:
            raise StructureValidationError(f'{summand.name} is not a summand of {structure.name}', generator=g)


def inclusion_morphism(summand: TypeDStructure, structure: TypeDStructure) -> DMorphism:
    _check_summand(summand, structure)
    return DMorphism(summand, structure, [(g, unit(i), g) for g, i in summand.generators.items()],
                     name=f'incl_{summand.name}')


def projection_morphism(structure: TypeDStructure, summand: TypeDStructure) -> DMorphism:
    _check_summand(summand, structure)
    return DMorphism(structure, summand, [(g, unit(i), g) for g, i in summand.generators.items()],
                     name=f'proj_{summand.name}')
