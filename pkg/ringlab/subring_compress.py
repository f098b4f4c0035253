# ringlab/subring_compress.py
"""
One-generated subrings, the compression relation <a> = <b>, and the
compressed commuting graphs built from it.

A subring generated by a (and 1 in unital mode) is the additive span of the
powers of a (and 1): products of powers are powers. Closures therefore run a
worklist of generators, each one extending a numpy membership mask by
translating the current subgroup until a coset repeats.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ringlab.config import get_settings
from ringlab.errors import PreconditionError
from ringlab.finite_ring import Element, Ring, element_id
from ringlab.graph_kit import CompressedGraph
from ringlab.models import Mode

logger = logging.getLogger(__name__)


# ===================== ELEMENT SETS =====================
@dataclass(frozen=True)
class ElementSet:
    ring: Ring = field(compare=False, hash=False, repr=False)
    members: Tuple[int, ...]
    _lookup: frozenset = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", frozenset(self.members))

    @classmethod
    def from_mask(cls, ring: Ring, mask: np.ndarray) -> ElementSet:
        return cls(ring, tuple(int(i) for i in np.flatnonzero(mask)))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, id: int) -> bool:
        return int(id) in self._lookup

    def mask(self) -> np.ndarray:
        out = np.zeros(self.ring.order, dtype=bool)
        out[list(self.members)] = True
        return out

    def issubset(self, other: ElementSet) -> bool:
        return self._lookup <= other._lookup

    def label(self) -> str:
        return "{" + ",".join(str(m) for m in self.members) + "}"


@dataclass(frozen=True)
class SubringClass:
    representative: int
    members: Tuple[int, ...]
    subring: ElementSet


@dataclass
class ClassPartition:
    ring: Ring
    mode: Mode
    classes: List[SubringClass]

    def class_of(self) -> np.ndarray:
        """Array mapping each element id to its class index"""
        index = np.empty(self.ring.order, dtype=np.int64)
        for i, cls in enumerate(self.classes):
            index[list(cls.members)] = i
        return index

    def representatives(self) -> np.ndarray:
        return np.array([c.representative for c in self.classes], dtype=np.int64)


@dataclass
class SubringLattice:
    subrings: List[ElementSet]
    complete: bool
    joins_evaluated: int = 0


# ===================== CLOSURE =====================
def _extend_span(ring: Ring, mask: np.ndarray, generator: int) -> bool:
    """Add <generator> to the additive subgroup marked in mask; False if already inside"""
    if mask[generator]:
        return False
    layer = np.flatnonzero(mask)
    while True:
        layer = np.asarray(ring.add(layer, generator))
        if mask[layer[0]]:
            return True
        mask[layer] = True


def _additive_span(ring: Ring, generators: Iterable[int]) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    for g in generators:
        _extend_span(ring, mask, int(g))
    return mask


def _powers(ring: Ring, a: int) -> List[int]:
    """a, a², ... until the sequence repeats"""
    limit = get_settings().power_cycle_limit
    seen = set()
    powers: List[int] = []
    current = a
    while current not in seen:
        if len(powers) >= limit:
            raise PreconditionError(f"Powers of {a} in {ring.descriptor} did not cycle within {limit}")
        seen.add(current)
        powers.append(current)
        current = int(ring.mul(current, a))
    return powers


def _require_unital(ring: Ring, mode: Mode):
    if mode == Mode.UNITAL and ring.identity is None:
        raise PreconditionError(f"Unital mode needs an identity; {ring.descriptor} has none")


def generated_subring(ring: Ring, a, mode: Mode = Mode.NONUNITAL) -> ElementSet:
    """<a>, or <a>_1 in unital mode"""
    _require_unital(ring, mode)
    a = element_id(a)
    generators = _powers(ring, a)
    if mode == Mode.UNITAL:
        generators.insert(0, ring.identity)
    return ElementSet.from_mask(ring, _additive_span(ring, generators))


def subring_closure(ring: Ring, generators: Iterable, unital: bool = False) -> ElementSet:
    """Least subring containing every generator (and 1 when unital)"""
    if unital:
        _require_unital(ring, Mode.UNITAL)
    gens = [element_id(g) for g in generators]
    if unital:
        gens.append(ring.identity)
    mask = _additive_span(ring, gens)
    while True:
        members = np.flatnonzero(mask)
        products = np.unique(np.asarray(ring.mul(members[:, None], members[None, :])))
        fresh = products[~mask[products]]
        if fresh.size == 0:
            return ElementSet.from_mask(ring, mask)
        for g in fresh:
            _extend_span(ring, mask, int(g))


# ===================== COMPRESSION =====================
def compress_classes(ring: Ring, mode: Mode = Mode.NONUNITAL) -> ClassPartition:
    """Group elements by equal generated subrings; representative = least id"""
    _require_unital(ring, mode)
    buckets: Dict[Tuple[int, ...], List[int]] = {}
    subrings: Dict[Tuple[int, ...], ElementSet] = {}
    for a in range(ring.order):
        subring = generated_subring(ring, a, mode)
        buckets.setdefault(subring.members, []).append(a)
        subrings.setdefault(subring.members, subring)

    classes = [
        SubringClass(representative=ids[0], members=tuple(ids), subring=subrings[key])
        for key, ids in buckets.items()
    ]
    classes.sort(key=lambda c: c.representative)
    logger.info(f"{ring.descriptor} ({mode.value}): {len(classes)} classes")
    return ClassPartition(ring=ring, mode=mode, classes=classes)


def commutation_matrix(ring: Ring, ids: np.ndarray) -> np.ndarray:
    """C[i, j] is True when ids[i] and ids[j] commute"""
    return np.asarray(ring.commutes(ids[:, None], ids[None, :]))


def graph_from_partition(partition: ClassPartition) -> CompressedGraph:
    reps = partition.representatives()
    commute = commutation_matrix(partition.ring, reps)
    rows, cols = np.nonzero(np.triu(commute, k=1))
    return CompressedGraph(
        vertex_labels=[c.subring.label() for c in partition.classes],
        edges=zip(rows.tolist(), cols.tolist()),
        loops=range(len(reps)),
    )


def compressed_commuting_graph(ring: Ring, mode: Mode = Mode.NONUNITAL) -> CompressedGraph:
    """Lambda(R), or Lambda^1(R) in unital mode"""
    graph = graph_from_partition(compress_classes(ring, mode))
    logger.info(f"{ring.descriptor} ({mode.value}): graph with {graph.vertex_count} vertices, "
                f"{graph.edge_count} edges")
    return graph


def edge_well_definedness_witness(partition: ClassPartition) -> Optional[Tuple[int, int, int]]:
    """(a, a', c) with a ~ a' but [a,c] = 0 and [a',c] != 0, or None"""
    ring = partition.ring
    ids = ring.elements()
    for cls in partition.classes:
        members = np.array(cls.members, dtype=np.int64)
        commute = np.asarray(ring.commutes(members[:, None], ids[None, :]))
        bad = np.argwhere(commute != commute[0])
        if bad.size:
            row, c = bad[0]
            return int(members[0]), int(members[row]), int(c)
    return None


def induced_graph_map(
    sub: Ring, ambient: Ring, embedding: Sequence[int], mode: Mode = Mode.NONUNITAL
) -> Tuple[Dict[int, int], bool]:
    """
    Vertex map Lambda(S) -> Lambda(R) along an embedding S -> R, sending [a] to
    [embedding(a)]. Returns the map and whether it is well defined, injective
    and adjacency preserving.
    """
    embedding = np.asarray(embedding, dtype=np.int64)
    sub_partition = compress_classes(sub, mode)
    ambient_partition = compress_classes(ambient, mode)
    ambient_class = ambient_partition.class_of()

    mapping: Dict[int, int] = {}
    well_defined = True
    for i, cls in enumerate(sub_partition.classes):
        images = set(ambient_class[embedding[list(cls.members)]].tolist())
        well_defined &= len(images) == 1
        mapping[i] = min(images)

    injective = len(set(mapping.values())) == len(mapping)
    sub_graph = graph_from_partition(sub_partition)
    ambient_graph = graph_from_partition(ambient_partition)
    preserves = all(
        ambient_graph.has_edge(mapping[i], mapping[j]) == sub_graph.has_edge(i, j)
        for i in mapping for j in mapping if i < j
    )
    return mapping, bool(well_defined and injective and preserves)


# ===================== UNITAL SUBRING LATTICE =====================
def unital_subring_lattice(ring: Ring) -> SubringLattice:
    """
    Every unital subring, as joins of the distinct <a>_1 iterated to a fixpoint
    """
    _require_unital(ring, Mode.UNITAL)
    cap = get_settings().lattice_join_cap
    atoms = sorted({generated_subring(ring, a, Mode.UNITAL) for a in range(ring.order)},
                   key=lambda s: (len(s), s.members))

    found: Dict[Tuple[int, ...], ElementSet] = {s.members: s for s in atoms}
    frontier = list(atoms)
    joins = 0
    complete = True
    while frontier and complete:
        next_frontier: List[ElementSet] = []
        for current in frontier:
            for atom in atoms:
                if atom.issubset(current):
                    continue
                if joins >= cap:
                    complete = False
                    break
                joins += 1
                joined = subring_closure(ring, current.members + atom.members, unital=True)
                if joined.members not in found:
                    found[joined.members] = joined
                    next_frontier.append(joined)
            if not complete:
                break
        frontier = next_frontier

    subrings = sorted(found.values(), key=lambda s: (len(s), s.members))
    if not complete:
        logger.warning(f"{ring.descriptor}: lattice stopped after {joins} joins, "
                       f"{len(subrings)} subrings found so far")
    else:
        logger.info(f"{ring.descriptor}: {len(subrings)} unital subrings ({joins} joins)")
    return SubringLattice(subrings=subrings, complete=complete, joins_evaluated=joins)
