#include "chimera/evolve.hpp"

#include <algorithm>
#include <set>

#include "chimera/errors.hpp"
#include "chimera/relations.hpp"

namespace chimera {
namespace {

void collect_genes(const GraphicObject& obj, const std::string& prefix,
                   std::vector<Gene>& out) {
    std::string path = prefix.empty() ? obj.name : prefix + "/" + obj.name;
    out.push_back({path, obj.offset});
    for (const auto& child : obj.children) collect_genes(child, path, out);
}

std::size_t tournament(const std::vector<Individual>& pool, int size,
                       std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::size_t best = pick(rng);
    double best_fit = const_cast<Individual&>(pool[best]).fitness();
    for (int k = 1; k < size; ++k) {
        std::size_t idx = pick(rng);
        double fit = const_cast<Individual&>(pool[idx]).fitness();
        if (fit > best_fit) {
            best = idx;
            best_fit = fit;
        }
    }
    return best;
}

}  // namespace

double Individual::fitness() {
    if (!cached_fitness) cached_fitness = chimera::fitness(blend.scene);
    return *cached_fitness;
}

std::vector<Gene> Individual::genome() const {
    std::vector<Gene> out;
    collect_genes(blend.scene.root, "", out);
    return out;
}

std::string Individual::genotype_key() const { return save_scene(blend.scene); }

void refill(Population& pop, const EvolutionParams& params, const Scene& scene_a,
            const Scene& scene_b, const BaseRasters& rasters,
            std::mt19937_64& rng) {
    if (pop.individuals.size() >= pop.max_size) return;
    std::size_t deficit = pop.max_size - pop.individuals.size();
    std::size_t budget = params.refill_budget_factor * deficit;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t attempt = 0;
         attempt < budget && pop.individuals.size() < pop.max_size; ++attempt) {
        BaseChoice choice = unit(rng) < 0.5 ? BaseChoice::A : BaseChoice::B;
        std::uint64_t seed = rng();
        auto blend = construct_blend(pop.analogy, choice, scene_a, scene_b, seed,
                                     params.blend, &rasters);
        if (blend) pop.individuals.push_back({std::move(*blend), std::nullopt});
    }
    if (pop.individuals.empty()) throw RefillExhaustedError();
}

void mutate(Individual& ind, const EvolutionParams& params, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> step(-params.mutation_step,
                                                params.mutation_step);
    bool touched = false;
    for (const auto& path : ind.blend.scene.all_paths()) {
        if (unit(rng) >= params.mutation_prob_per_gene) continue;
        Vec2 d{step(rng), step(rng)};
        ind.blend.scene.find_mut(path)->offset += d;
        touched = true;
    }
    if (touched) ind.cached_fitness.reset();
}

std::pair<Individual, Individual> crossover(const Individual& p1,
                                            const Individual& p2,
                                            const EvolutionParams& params,
                                            std::mt19937_64& rng) {
    auto paths1 = p1.blend.scene.all_paths();
    auto paths2 = p2.blend.scene.all_paths();
    std::sort(paths1.begin(), paths1.end());
    std::sort(paths2.begin(), paths2.end());
    std::vector<std::string> aligned;
    std::set_intersection(paths1.begin(), paths1.end(), paths2.begin(),
                          paths2.end(), std::back_inserter(aligned));

    Individual c1 = p1;
    Individual c2 = p2;
    if (aligned.size() < 2 || params.crossover_points < 1) return {c1, c2};

    // Distinct cut positions in [1, len-1], via partial Fisher-Yates.
    std::size_t len = aligned.size();
    std::vector<std::size_t> positions(len - 1);
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i + 1;
    std::size_t k = std::min<std::size_t>(params.crossover_points, positions.size());
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, positions.size() - 1);
        std::swap(positions[i], positions[pick(rng)]);
    }
    std::vector<std::size_t> cuts(positions.begin(), positions.begin() + k);
    std::sort(cuts.begin(), cuts.end());

    bool swapping = false;
    std::size_t cut_idx = 0;
    for (std::size_t i = 0; i < aligned.size(); ++i) {
        while (cut_idx < cuts.size() && cuts[cut_idx] == i) {
            swapping = !swapping;
            ++cut_idx;
        }
        if (!swapping) continue;
        const auto& path = aligned[i];
        Vec2 o1 = p1.blend.scene.find(path)->offset;
        Vec2 o2 = p2.blend.scene.find(path)->offset;
        c1.blend.scene.find_mut(path)->offset = o2;
        c2.blend.scene.find_mut(path)->offset = o1;
    }
    c1.cached_fitness.reset();
    c2.cached_fitness.reset();
    return {c1, c2};
}

void step_generation(Population& pop, const EvolutionParams& params,
                     const Scene& scene_a, const Scene& scene_b,
                     const BaseRasters& rasters, std::mt19937_64& rng) {
    refill(pop, params, scene_a, scene_b, rasters, rng);  // T1

    std::size_t elite_idx = 0;  // T2
    for (std::size_t i = 1; i < pop.individuals.size(); ++i)
        if (pop.individuals[i].fitness() >
            pop.individuals[elite_idx].fitness())
            elite_idx = i;
    Individual elite = pop.individuals[elite_idx];

    for (std::size_t i = 0; i < pop.individuals.size(); ++i)  // T3
        if (i != elite_idx) mutate(pop.individuals[i], params, rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);  // T4
    for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
        if (unit(rng) >= params.recombination_prob_per_individual) continue;
        std::size_t mate = tournament(pop.individuals, params.tournament_size, rng);
        if (mate == i) continue;
        auto [c1, c2] =
            crossover(pop.individuals[i], pop.individuals[mate], params, rng);
        pop.individuals[i] = std::move(c1);
        pop.individuals[mate] = std::move(c2);
    }

    std::set<std::string> seen;  // T5
    std::vector<Individual> unique;
    for (auto& ind : pop.individuals)
        if (seen.insert(ind.genotype_key()).second)
            unique.push_back(std::move(ind));
    pop.individuals = std::move(unique);

    if (!seen.count(elite.genotype_key())) {
        if (pop.individuals.size() < pop.max_size) {
            pop.individuals.push_back(std::move(elite));
        } else {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < pop.individuals.size(); ++i)
                if (pop.individuals[i].fitness() <=
                    pop.individuals[worst].fitness())
                    worst = i;
            pop.individuals[worst] = std::move(elite);
        }
    }
    ++pop.generation;
}

std::vector<PopulationRun> evolve(const std::vector<Analogy>& analogies,
                                  const Scene& scene_a, const Scene& scene_b,
                                  const EvolutionParams& params) {
    BaseRasters rasters = BaseRasters::make(scene_a, scene_b, params.blend);
    std::vector<PopulationRun> runs;
    for (std::size_t k = 0; k < analogies.size(); ++k) {
        std::mt19937_64 rng(params.seed + k);
        PopulationRun run;
        run.population.analogy = analogies[k];
        run.population.max_size = params.max_size;

        auto record = [&]() {
            double best = 0.0, sum = 0.0;
            for (auto& ind : run.population.individuals) {
                double f = ind.fitness();
                best = std::max(best, f);
                sum += f;
            }
            run.elite_curve.push_back(best);
            run.mean_curve.push_back(
                run.population.individuals.empty()
                    ? 0.0
                    : sum / static_cast<double>(run.population.individuals.size()));
        };

        refill(run.population, params, scene_a, scene_b, rasters, rng);
        record();
        for (int g = 0; g < params.generations; ++g) {
            step_generation(run.population, params, scene_a, scene_b, rasters, rng);
            record();
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

}  // namespace chimera
