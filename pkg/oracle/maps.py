"""
Rooted planar maps as rotation systems

A map on darts 0..2E-1 is a pair of permutations: ``sigma`` turns around
vertices, ``alpha`` is the fixed-point-free involution pairing the two darts
of each edge. Faces are the cycles of sigma after alpha. Brute-force
enumeration for a handful of edges only.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core.config import ENUMERATION_HARD_CAP
from core.errors import EnumerationLimitError
from observability.logging import get_logger
from observability.metrics import record_maps_enumerated, track_computation

logger = get_logger(__name__)

Perm = Tuple[int, ...]


def cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """Cycles of a permutation, each starting at its smallest element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        out.append(tuple(cycle))
    return out


def compose(first: Sequence[int], then: Sequence[int]) -> Perm:
    """The permutation d -> then[first[d]]."""
    return tuple(then[first[d]] for d in range(len(first)))


@dataclass(frozen=True)
class RotMap:
    """A rooted planar map.

    The atomic map (one vertex, no edge) has no darts and no root.
    """
    sigma: Perm
    alpha: Perm
    root: Optional[int]

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def phi(self) -> Perm:
        return compose(self.alpha, self.sigma)

    def vertex_cycles(self) -> List[Tuple[int, ...]]:
        return cycles(self.sigma)

    def face_cycles(self) -> List[Tuple[int, ...]]:
        return cycles(self.phi)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_cycles()) if self.n_darts else 1

    @property
    def n_faces(self) -> int:
        return len(self.face_cycles()) if self.n_darts else 1

    def vertex_of(self) -> Dict[int, int]:
        """Map from dart to the index of its vertex."""
        owner = {}
        for k, cycle in enumerate(self.vertex_cycles()):
            for d in cycle:
                owner[d] = k
        return owner

    def edge_list(self) -> List[Tuple[int, int]]:
        """Edges as pairs of vertex indices, one per alpha cycle."""
        owner = self.vertex_of()
        return [(owner[c[0]], owner[c[1]]) for c in cycles(self.alpha)]

    def root_face_degree(self) -> int:
        """Degree of the face to the right of the root; 0 for the atomic map."""
        if self.root is None:
            return 0
        return next(len(c) for c in self.face_cycles() if self.root in c)

    def is_connected(self) -> bool:
        if not self.n_darts:
            return True
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == self.n_darts

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def is_planar(self) -> bool:
        return self.is_connected() and self.euler_characteristic() == 2

    def dual(self) -> "RotMap":
        """Vertices and faces exchanged; the root dart is kept."""
        return RotMap(self.phi, self.alpha, self.root)

    def canonical(self) -> Tuple[int, ...]:
        """Encoding invariant under relabelings fixing the root."""
        if self.root is None:
            return ()
        label = {self.root: 0}
        order = [self.root]
        k = 0
        while k < len(order):
            d = order[k]
            for e in (self.sigma[d], self.alpha[d]):
                if e not in label:
                    label[e] = len(order)
                    order.append(e)
            k += 1
        code = tuple(label[self.sigma[d]] for d in order) + tuple(label[self.alpha[d]] for d in order)
        return code

    def relabelled(self) -> "RotMap":
        """The canonical representative: darts renamed in breadth-first order from the root."""
        if self.root is None:
            return self
        code = self.canonical()
        n = self.n_darts
        return RotMap(code[:n], code[n:], 0)

    def to_text(self) -> str:
        """Cycle notation, e.g. ``sigma=(0 1) alpha=(0 1) root=0``."""
        if self.root is None:
            return "atomic"
        sigma = "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(self.sigma))
        alpha = "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(self.alpha))
        return f"sigma={sigma} alpha={alpha} root={self.root}"

    @classmethod
    def from_text(cls, text: str) -> "RotMap":
        text = text.strip()
        if text == "atomic":
            return ATOMIC
        fields = dict(_FIELD.findall(text))
        missing = {"sigma", "alpha", "root"} - fields.keys()
        if missing:
            raise ValueError(f"map text {text!r} lacks {sorted(missing)}")
        sigma = _parse_cycles(fields["sigma"])
        alpha = _parse_cycles(fields["alpha"])
        return cls(sigma, alpha, int(fields["root"]))


# A field value is a run of cycles or a single token
_FIELD = re.compile(r"(\w+)=((?:\([^()]*\))+|\S+)")


def _parse_cycles(text: str) -> Perm:
    mapping = {}
    for chunk in text.strip("()").split(")("):
        elems = [int(s) for s in chunk.split()]
        for i, d in enumerate(elems):
            mapping[d] = elems[(i + 1) % len(elems)]
    return tuple(mapping[d] for d in range(len(mapping)))


ATOMIC = RotMap((), (), None)


def _standard_alpha(n_edges: int) -> Perm:
    alpha = []
    for e in range(n_edges):
        alpha += [2 * e + 1, 2 * e]
    return tuple(alpha)


def _maps_with_edges(n_edges: int) -> Iterator[RotMap]:
    """Every rooted planar map with ``n_edges`` edges, once each."""
    if n_edges == 0:
        yield ATOMIC
        return
    alpha = _standard_alpha(n_edges)
    seen = set()
    for sigma in permutations(range(2 * n_edges)):
        candidate = RotMap(tuple(sigma), alpha, 0)
        if not candidate.is_planar():
            continue
        for root in range(2 * n_edges):
            code = RotMap(candidate.sigma, alpha, root).canonical()
            if code in seen:
                continue
            seen.add(code)
            yield RotMap(code[:2 * n_edges], code[2 * n_edges:], 0)


@lru_cache(maxsize=None)
@track_computation("map_enumeration")
def enumerate_rooted_maps(max_edges: int) -> Tuple[RotMap, ...]:
    """All rooted planar maps with at most ``max_edges`` edges, atomic map included.

    Raises:
        EnumerationLimitError: Beyond the supported number of edges
    """
    if max_edges > ENUMERATION_HARD_CAP:
        raise EnumerationLimitError(
            f"enumeration is limited to {ENUMERATION_HARD_CAP} edges, asked {max_edges}")
    if max_edges < 0:
        return ()
    found: List[RotMap] = []
    for e in range(max_edges + 1):
        batch = list(_maps_with_edges(e))
        found.extend(batch)
        record_maps_enumerated(e, len(batch))
        logger.enumeration_progress(e, len(batch))
    return tuple(found)


def counts_by_edges(maps: Sequence[RotMap]) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for m in maps:
        counts[m.n_edges] = counts.get(m.n_edges, 0) + 1
    return dict(sorted(counts.items()))
