"""Independent computations of the Potts generating functions"""

from oracle.bipartite import bipartite_invariant_check
from oracle.catalytic import BiSeries, iterate_tutte_G, iterate_two_catalytic, oracle_maps_series, potts_series
from oracle.maps import RotMap, enumerate_rooted_maps
from oracle.potts import PottsPoly, duality_check, fk_potts, oracle_M1, self_dual_weight
from oracle.toy import iterate_uncoloured, toy_suite

__all__ = [
    "BiSeries",
    "PottsPoly",
    "RotMap",
    "bipartite_invariant_check",
    "duality_check",
    "enumerate_rooted_maps",
    "fk_potts",
    "iterate_tutte_G",
    "iterate_two_catalytic",
    "iterate_uncoloured",
    "oracle_M1",
    "oracle_maps_series",
    "potts_series",
    "self_dual_weight",
    "toy_suite",
]
