"""
Named morphisms out of the trefoil complement

f1..g3 generate the homology of Mor(cfd_trefoil, square); h1..h5 together
with the identity generate the homology of End(cfd_trefoil).
"""

from typing import Dict, Optional

from bordered.structures import DMorphism, TypeDStructure

from .fixtures import cfd_trefoil, square_module

MOR_NAMES = ('f1', 'f2', 'f3', 'g1', 'g2', 'g3')
END_NAMES = ('h1', 'h2', 'h3', 'h4', 'h5')

# components (source, algebra element, target)
MOR_COMPONENTS = {
    'f1': [('s2', 'i0', 'e'), ('t2', 'r23', 'y2')],
    'f2': [('s1', 'i0', 'e'), ('s2', 'i0', 'c'), ('t2', 'r23', 'y4'), ('t4', 'r23', 'y2'), ('t1', 'i1', 'y3')],
    'f3': [('s2', 'i0', 'b'), ('s3', 'i0', 'e'), ('t2', 'i1', 'y2')],
    'g1': [('s3', 'r3', 'y1')],
    'g2': [('s3', 'r3', 'y3')],
    'g3': [('s1', 'r1', 'y4')],
}

END_COMPONENTS = {
    'h1': [('s1', 'r3', 't4'), ('s2', 'i0', 's3'), ('t1', 'i1', 't3'), ('t2', 'r23', 't2')],
    'h2': [('s2', 'i0', 's1'), ('s3', 'r1', 't3'), ('t2', 'i1', 't4')],
    'h3': [('s1', 'r1', 't2')],
    'h4': [('s2', 'r1', 't2')],
    'h5': [('s3', 'r3', 't1')],
}

# the three morphisms whose drawn component lists are not cycles
PRINTED_OVERRIDES = {
    'f2': [('s1', 'i0', 'e'), ('s2', 'i0', 'c'), ('t2', 'r23', 'y4'), ('t4', 'r23', 'y2')],
    'f3': [('s2', 'i0', 'b'), ('s3', 'i0', 'e'), ('t2', 'r23', 'y2')],
    'h2': [('s2', 'i0', 's1'), ('s3', 'r1', 't3'), ('t2', 'r23', 't4')],
}


def _build(components: Dict, overrides: Dict, trefoil: TypeDStructure,
           square: TypeDStructure) -> Dict[str, DMorphism]:
    morphisms = {}
    for name in MOR_NAMES + END_NAMES:
        target = square if name in MOR_NAMES else trefoil
        morphisms[name] = DMorphism(trefoil, target, overrides.get(name, components[name]), name=name)
    return morphisms


def cycle_morphisms(trefoil: Optional[TypeDStructure] = None,
                    square: Optional[TypeDStructure] = None) -> Dict[str, DMorphism]:
    """Cycle representatives, with f2, f3 and h2 corrected to be cycles"""
    components = {**MOR_COMPONENTS, **END_COMPONENTS}
    return _build(components, {}, trefoil or cfd_trefoil(), square or square_module())


def printed_morphisms(trefoil: Optional[TypeDStructure] = None,
                      square: Optional[TypeDStructure] = None) -> Dict[str, DMorphism]:
    """The component lists exactly as drawn"""
    components = {**MOR_COMPONENTS, **END_COMPONENTS}
    return _build(components, PRINTED_OVERRIDES, trefoil or cfd_trefoil(), square or square_module())
