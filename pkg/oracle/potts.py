"""
Potts and Tutte polynomials of enumerated maps

Both polynomials are computed by subset expansion over the edge set, which is
exact and fast enough for the few edges the enumeration reaches.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind
from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from algebra.polys import MPoly, RING, b, evaluate, exact_quotient, format_poly, q, w, y
from algebra.series import Series
from core.reports import ResidualReport
from observability.logging import get_logger
from observability.metrics import track_computation
from oracle.maps import RotMap, enumerate_rooted_maps

logger = get_logger(__name__)

TUTTE_RING, mu, tnu = ring("mu,nu", QQ)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class PottsPoly:
    """Potts polynomial P(q, nu) and Tutte polynomial T(mu, nu) of one map.

    ``potts`` lives in the parameter ring, with b = nu - 1 standing for the
    edge weight; ``tutte`` lives in its own ring in mu and nu.
    """
    potts: MPoly
    tutte: MPoly
    n_vertices: int
    n_edges: int

    @property
    def label(self) -> MPoly:
        """P/q, the weight a map carries in the generating function."""
        return exact_quotient(self.potts, q, "Potts polynomial over q")

    def chromatic(self) -> MPoly:
        """Number of proper q-colourings: the Potts polynomial at nu = 0."""
        return evaluate(self.potts, {"b": -1})


def graph_of(rooted: RotMap) -> nx.MultiGraph:
    """Underlying multigraph of a map, loops and parallel edges kept."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(rooted.n_vertices))
    graph.add_edges_from(rooted.edge_list())
    return graph


def _components(n_vertices: int, edges: Sequence[Edge]) -> int:
    parts = UnionFind(range(n_vertices))
    for u, v in edges:
        parts.union(u, v)
    return sum(1 for _ in parts.to_sets())


def _subsets(edges: Sequence[Edge]) -> Iterator[Tuple[Edge, ...]]:
    for size in range(len(edges) + 1):
        yield from combinations(edges, size)


def _subset_statistics(rooted: RotMap) -> Iterator[Tuple[int, int]]:
    """(components, size) of every spanning subgraph."""
    n_vertices = rooted.n_vertices
    edges = rooted.edge_list()
    for subset in _subsets(edges):
        yield _components(n_vertices, subset), len(subset)


@track_computation("fk_potts")
def fk_potts(rooted: RotMap) -> PottsPoly:
    """Fortuin-Kasteleyn expansion of the Potts polynomial, and the Tutte polynomial.

    P(q, nu) = sum_S q^c(S) (nu - 1)^|S| and
    T(mu, nu) = sum_S (mu - 1)^(c(S) - c(E)) (nu - 1)^(|S| + c(S) - v).
    """
    n_vertices = rooted.n_vertices
    stats = list(_subset_statistics(rooted))
    potts = RING.zero
    for comps, size in stats:
        potts += q ** comps * b ** size
    total_comps = _components(n_vertices, rooted.edge_list())
    tutte = TUTTE_RING.zero
    for comps, size in stats:
        tutte += (mu - 1) ** (comps - total_comps) * (tnu - 1) ** (size + comps - n_vertices)
    return PottsPoly(potts, tutte, n_vertices, rooted.n_edges)


def tutte_polynomial(rooted: RotMap) -> MPoly:
    return fk_potts(rooted).tutte


def swap_tutte(p: MPoly) -> MPoly:
    """T(nu, mu)."""
    return TUTTE_RING.from_dict({(j, i): c for (i, j), c in p.terms()})


def duality_check(rooted: RotMap) -> bool:
    """The dual map has the Tutte polynomial with its variables exchanged."""
    return tutte_polynomial(rooted.dual()) == swap_tutte(tutte_polynomial(rooted))


def _potts_in_tutte_ring(p: MPoly) -> MPoly:
    """P with q = (mu - 1)(nu - 1) and b = nu - 1."""
    qq = (mu - 1) * (tnu - 1)
    bb = tnu - 1
    total = TUTTE_RING.zero
    for monom, c in p.terms():
        total += TUTTE_RING(c) * qq ** monom[0] * bb ** monom[1]
    return total


def fk_tutte_consistent(poly: PottsPoly) -> bool:
    """P(q, nu) = (mu - 1)(nu - 1)^v T(mu, nu) for a connected map, with q = (mu - 1)(nu - 1)."""
    lhs = _potts_in_tutte_ring(poly.potts)
    rhs = (mu - 1) * (tnu - 1) ** poly.n_vertices * poly.tutte
    return lhs == rhs


def has_loop(rooted: RotMap) -> bool:
    return any(u == v for u, v in rooted.edge_list())


def is_simple(rooted: RotMap) -> bool:
    edges = rooted.edge_list()
    return not has_loop(rooted) and len({frozenset(e) for e in edges}) == len(edges)


def networkx_chromatic(rooted: RotMap) -> MPoly:
    """Chromatic polynomial of a simple map's graph, computed by networkx in q."""
    expr = nx.chromatic_polynomial(nx.Graph(graph_of(rooted)))
    (x_symbol,) = expr.free_symbols or {Symbol("x")}
    return RING.from_expr(expr.subs(x_symbol, Symbol("q")).expand())


def self_dual_weight(rooted: RotMap) -> MPoly:
    """sum over edge subsets of b^(2 c(S) + |S| - 1 - v)."""
    n_vertices = rooted.n_vertices
    total = RING.zero
    for comps, size in _subset_statistics(rooted):
        total += b ** (2 * comps + size - 1 - n_vertices)
    return total


@track_computation("enumeration_oracle")
def oracle_potts_series(max_edges: int) -> Series:
    """(1/q) sum over rooted maps of P(q, nu) w^v t^e y^df, to order ``max_edges``."""
    coeffs = [RING.zero] * (max_edges + 1)
    for rooted in enumerate_rooted_maps(max_edges):
        label = fk_potts(rooted).label
        coeffs[rooted.n_edges] += label * w ** rooted.n_vertices * y ** rooted.root_face_degree()
    return Series("t", tuple(coeffs))


def oracle_M1(max_edges: int) -> Series:
    """The Potts generating function of planar maps by edges, from enumeration."""
    return oracle_potts_series(max_edges).map(lambda c: evaluate(c, {"y": 1}))


def potts_labels(maps: Sequence[RotMap]) -> Dict[str, str]:
    """Map text to its P/q label, for export."""
    return {m.to_text(): format_poly(fk_potts(m).label) for m in maps}


def enumeration_reports(max_edges: int) -> List[ResidualReport]:
    """Euler, duality, FK/Tutte and chromatic checks over every map with at most ``max_edges`` edges."""
    maps = enumerate_rooted_maps(max_edges)
    reports = []

    not_planar = [m.to_text() for m in maps if m.root is not None and not m.is_planar()]
    reports.append(ResidualReport.boolean(
        "Euler relation", not not_planar, not_planar[0] if not_planar else None))

    not_dual = [m.to_text() for m in maps if not duality_check(m)]
    reports.append(ResidualReport.boolean(
        "Tutte duality", not not_dual, not_dual[0] if not_dual else None))

    polys = [(m, fk_potts(m)) for m in maps]
    inconsistent = [m.to_text() for m, p in polys if not fk_tutte_consistent(p)]
    reports.append(ResidualReport.boolean(
        "FK/Tutte consistency", not inconsistent, inconsistent[0] if inconsistent else None))

    loops_coloured = [m.to_text() for m, p in polys if has_loop(m) and p.chromatic()]
    reports.append(ResidualReport.boolean(
        "chromatic value kills loops", not loops_coloured, loops_coloured[0] if loops_coloured else None))

    chromatic_wrong = [m.to_text() for m, p in polys
                       if m.n_edges and is_simple(m) and p.chromatic() != networkx_chromatic(m)]
    reports.append(ResidualReport.boolean(
        "chromatic polynomial", not chromatic_wrong, chromatic_wrong[0] if chromatic_wrong else None))

    logger.debug("Enumeration checks done", event_type="enumeration_checks",
                 max_edges=max_edges, maps=len(maps))
    return reports
