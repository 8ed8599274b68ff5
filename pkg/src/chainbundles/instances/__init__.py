"""Concrete category instances."""

from .cyclic import CyclicGroups, CyclicObject, Z
from .delta import DeltaPlus, Ordinal
from .freez import FreeModule, FreeZ
from .paths import (
    Graph,
    GraphBundleMap,
    GraphChainBundle,
    PathCategory,
    compose_graph_maps,
    enumerate_paths,
    graph_bundle,
    graph_bundle_map,
    identity_graph_map,
    validate_graph_bundle,
    validate_graph_bundle_map,
)
from .pointed import FinSetObject, FinSets, PointedSet, PointedSets, finset, pointed
from .submodule import SubmoduleObject, SubmoduleZ, nZ


def validate_delta_bundle(bundle):
    """Ordinal ordering and hom membership for a bundle over the simplex category."""
    from ..bundles import validate_bundle

    if not isinstance(bundle.cat, DeltaPlus):
        raise TypeError("validate_delta_bundle needs a bundle over DeltaPlus")
    return validate_bundle(bundle)


__all__ = [
    "CyclicGroups", "CyclicObject", "Z", "DeltaPlus", "Ordinal", "FreeModule", "FreeZ",
    "Graph", "GraphBundleMap", "GraphChainBundle", "PathCategory", "compose_graph_maps",
    "enumerate_paths", "graph_bundle", "graph_bundle_map", "identity_graph_map",
    "validate_graph_bundle", "validate_graph_bundle_map", "FinSetObject", "FinSets",
    "PointedSet", "PointedSets", "finset", "pointed", "SubmoduleObject", "SubmoduleZ", "nZ",
    "validate_delta_bundle",
]
