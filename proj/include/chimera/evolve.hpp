#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chimera/blend.hpp"

namespace chimera {

struct Gene {
    std::string path;
    Vec2 offset;
};

/// A blend plus its cached quality. The genome view is one gene per object,
/// pre-order, carrying that object's parent-relative offset.
struct Individual {
    Blend blend;
    std::optional<double> cached_fitness;

    double fitness();
    std::vector<Gene> genome() const;
    std::string genotype_key() const;
};

struct EvolutionParams {
    double mutation_prob_per_gene = 0.05;
    double recombination_prob_per_individual = 0.2;
    int tournament_size = 2;
    int crossover_points = 2;
    std::size_t max_size = 50;
    int generations = 100;
    double mutation_step = 30.0;  // max displacement per axis, canvas units
    std::uint64_t seed = 0;
    std::size_t refill_budget_factor = 100;
    BlendParams blend;
};

struct Population {
    Analogy analogy;
    std::vector<Individual> individuals;
    std::size_t max_size = 50;
    int generation = 0;
};

/// Constructs fresh individuals until the population is full or the retry
/// budget (factor x deficit) runs out. Throws RefillExhaustedError when not
/// a single admissible blend could be built.
void refill(Population& pop, const EvolutionParams& params, const Scene& scene_a,
            const Scene& scene_b, const BaseRasters& rasters,
            std::mt19937_64& rng);

/// Each gene independently shifts by a uniform displacement with the
/// configured probability; descendants ride along through the offset chain.
void mutate(Individual& ind, const EvolutionParams& params, std::mt19937_64& rng);

/// N-point crossover over the name-aligned genome. Only objects present in
/// both parents (by full path) exchange offsets; everything else is kept.
std::pair<Individual, Individual> crossover(const Individual& p1,
                                            const Individual& p2,
                                            const EvolutionParams& params,
                                            std::mt19937_64& rng);

/// One generation: refill, store the elite, mutate (elite exempt), recombine
/// via tournament selection, drop duplicate genotypes, reinsert the elite.
void step_generation(Population& pop, const EvolutionParams& params,
                     const Scene& scene_a, const Scene& scene_b,
                     const BaseRasters& rasters, std::mt19937_64& rng);

struct PopulationRun {
    Population population;
    std::vector<double> elite_curve;  // best fitness, generation 0..G
    std::vector<double> mean_curve;
};

/// One population per analogy, each evolved for params.generations with its
/// own deterministic RNG stream (seed + population index).
std::vector<PopulationRun> evolve(const std::vector<Analogy>& analogies,
                                  const Scene& scene_a, const Scene& scene_b,
                                  const EvolutionParams& params);

}  // namespace chimera
