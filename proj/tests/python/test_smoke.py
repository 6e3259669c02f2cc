"""End-to-end smoke tests for the python bindings."""

import os
from pathlib import Path

import pytest

import chimera

FIXTURES = Path(os.environ.get("CHIMERA_FIXTURE_DIR",
                               Path(__file__).resolve().parents[2] / "fixtures"))


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def test_parse_and_neighbors():
    g = chimera.parse_triples("snout pw pig\ntail pw pig\n", "pig")
    assert g.name == "pig"
    assert len(g.triples) == 2
    incoming = g.neighbors("pig", chimera.Direction.INCOMING)
    assert [e.other for e in incoming] == ["snout", "tail"]
    with pytest.raises(chimera.ChimeraError):
        chimera.parse_triples("pig pw")


def test_find_analogies_on_fixtures():
    pig = chimera.parse_triples(fixture_text("pig.triples"), "pig")
    cactus = chimera.parse_triples(fixture_text("cactus.triples"), "cactus")
    found = chimera.find_analogies(pig, cactus)
    assert len(found.analogies) == 1
    analogy = found.analogies[0]
    assert len(analogy) == 4
    assert ("body", "body") in analogy.mappings
    assert chimera.replay_signature(pig, cactus, analogy)


def test_scene_fitness_and_raster():
    scene = chimera.load_scene(fixture_text("pig.scene.json"))
    assert scene.concept == "pig"
    assert chimera.fitness(scene) == 1.0
    bmp = chimera.rasterize(scene, 64, 64)
    assert bmp.width == 64 and bmp.height == 64
    assert len(bmp.pixels) == 64 * 64
    assert chimera.rmse(bmp, bmp) == 0.0


def test_svg_round_trip():
    scene = chimera.load_scene(fixture_text("cactus.scene.json"))
    again = chimera.import_svg(chimera.export_svg(scene))
    assert again.concept == "cactus"
    assert again.all_paths() == scene.all_paths()


def test_construct_blend():
    pig_g = chimera.parse_triples(fixture_text("pig.triples"), "pig")
    cactus_g = chimera.parse_triples(fixture_text("cactus.triples"), "cactus")
    analogy = chimera.find_analogies(pig_g, cactus_g).analogies[0]
    pig = chimera.load_scene(fixture_text("pig.scene.json"))
    cactus = chimera.load_scene(fixture_text("cactus.scene.json"))

    params = chimera.BlendParams()
    params.raster_width = 64
    params.raster_height = 64
    blend = None
    for seed in range(16):
        blend = chimera.construct_blend(analogy, chimera.BaseChoice.A, pig,
                                        cactus, seed, params)
        if blend is not None:
            break
    assert blend is not None
    assert blend.provenance.replacements
    assert chimera.respects_analogy(blend)
    assert 0.0 <= chimera.fitness(blend.scene) <= 1.0


def test_small_evolution_run():
    pig_g = chimera.parse_triples(fixture_text("pig.triples"), "pig")
    cactus_g = chimera.parse_triples(fixture_text("cactus.triples"), "cactus")
    analogies = chimera.find_analogies(pig_g, cactus_g).analogies
    pig = chimera.load_scene(fixture_text("pig.scene.json"))
    cactus = chimera.load_scene(fixture_text("cactus.scene.json"))

    params = chimera.EvolutionParams()
    params.max_size = 6
    params.generations = 3
    params.seed = 1
    params.blend.raster_width = 64
    params.blend.raster_height = 64
    runs = chimera.evolve(analogies, pig, cactus, params)
    assert len(runs) == 1
    curve = runs[0].elite_curve
    assert len(curve) == params.generations + 1
    assert all(b >= a for a, b in zip(curve, curve[1:]))
    assert len(runs[0].population.individuals) <= params.max_size
