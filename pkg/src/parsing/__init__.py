from .expressions import load_automorphisms, parse_diffeo, parse_manifold, parse_vector

__all__ = [
    'load_automorphisms',
    'parse_diffeo',
    'parse_manifold',
    'parse_vector',
]
