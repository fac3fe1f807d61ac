"""
Enumeration of characteristic vectors of fixed square under a coordinate bound.
"""
from collections import defaultdict
from itertools import product
from typing import Dict, List, Tuple
import logging

from .core import IntersectionLattice, LatticeVector
from ..errors import LatticeError

logger = logging.getLogger(__name__)


def _components(lattice: IntersectionLattice) -> List[List[int]]:
    """Connected components of the graph with an edge wherever G_ij != 0."""
    seen = set()
    components = []
    for start in range(lattice.rank):
        if start in seen:
            continue
        stack, component = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            component.append(i)
            for j in range(lattice.rank):
                if j not in seen and lattice.gram[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        components.append(sorted(component))
    return components


def _component_table(lattice: IntersectionLattice, indices: List[int], bound: int,
                     scale: int) -> Dict[int, List[Tuple[int, ...]]]:
    """All admissible coordinate blocks of one component, grouped by their square."""
    residue = lattice.residue
    choices = []
    for i in indices:
        start = -bound if (bound - residue[i]) % 2 == 0 else -bound + 1
        choices.append(range(start, bound + 1, 2))

    table = defaultdict(list)
    for block in product(*choices):
        square = 0
        for a, i in enumerate(indices):
            xi = block[a]
            if xi == 0:
                continue
            row = lattice.gram[i]
            for b, j in enumerate(indices):
                square += xi * row[j] * block[b]
        table[square * scale * scale].append(block)
    return table


def enumerate_characteristics(lattice: IntersectionLattice, square: int, bound: int,
                              multiple: int = 1) -> List[LatticeVector]:
    """
    All characteristic c with c.c = square and |c_i| <= bound, in lexicographic order.

    Args:
        lattice: unimodular lattice
        square: required c.c
        bound: coordinate bound
        multiple: restrict to c = multiple * x with x characteristic; must be odd.
            Only the x with |multiple * x_i| <= bound are visited.

    Returns:
        List of LatticeVector sorted by coordinates
    """
    if bound < 0:
        raise LatticeError(f"bound must be non-negative, got {bound}")
    if multiple < 1 or multiple % 2 == 0:
        raise LatticeError(f"multiple must be a positive odd integer, got {multiple}")
    if lattice.rank == 0:
        return [lattice.zero()] if square == 0 else []

    inner_bound = bound // multiple
    components = _components(lattice)
    tables = [_component_table(lattice, indices, inner_bound, multiple) for indices in components]

    # suffix ranges of attainable squares, for pruning
    lows = [0] * (len(tables) + 1)
    highs = [0] * (len(tables) + 1)
    for k in range(len(tables) - 1, -1, -1):
        if not tables[k]:
            return []
        lows[k] = lows[k + 1] + min(tables[k])
        highs[k] = highs[k + 1] + max(tables[k])

    results = []
    chosen: List[List[Tuple[int, ...]]] = []

    def assemble():
        for blocks in product(*chosen):
            coords = [0] * lattice.rank
            for indices, block in zip(components, blocks):
                for i, x in zip(indices, block):
                    coords[i] = x * multiple
            results.append(tuple(coords))

    def descend(k: int, remaining: int):
        if k == len(tables):
            if remaining == 0:
                assemble()
            return
        for value, blocks in tables[k].items():
            rest = remaining - value
            if lows[k + 1] <= rest <= highs[k + 1]:
                chosen.append(blocks)
                descend(k + 1, rest)
                chosen.pop()

    descend(0, square)
    results.sort()
    logger.info(f"Enumerated {len(results)} characteristic vectors of square {square} with bound {bound}")
    return [LatticeVector(coords, lattice) for coords in results]
