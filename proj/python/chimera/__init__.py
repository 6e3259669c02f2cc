"""Analogy-driven visual blend generation."""

from ._core import (  # noqa: F401
    Analogy,
    AnalogySet,
    BaseChoice,
    Bitmap,
    Blend,
    BlendParams,
    BlendProvenance,
    ChimeraError,
    ConceptGraph,
    Direction,
    EdgeDir,
    EvolutionParams,
    ExpansionResult,
    Individual,
    MapperParams,
    NeighborEdge,
    Population,
    PopulationRun,
    RootMapping,
    Scene,
    SignatureStep,
    Triple,
    construct_blend,
    enumerate_root_mappings,
    eval_relation,
    evolve,
    expand_root_mapping,
    export_svg,
    find_analogies,
    fitness,
    import_svg,
    load_scene,
    mean_satisfaction,
    parse_triples,
    rasterize,
    relation_scores,
    replay_signature,
    respects_analogy,
    rmse,
    save_scene,
)

__all__ = [name for name in dir() if not name.startswith("_")]
