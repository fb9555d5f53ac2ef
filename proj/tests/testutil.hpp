#pragma once

// Seeded generators shared by the property-style suites.  Every generator
// takes the engine by reference so a test controls its own sequence and
// failures replay deterministically.

#include <lingdist/lingdist.hpp>

#include <random>
#include <vector>

namespace testutil {

inline std::mt19937_64 engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

// Strictly positive entries summing to one; the Dirichlet-style construction
// keeps any single entry from dominating too often.
inline std::vector<double> random_simplex_point(std::mt19937_64& rng,
                                                std::size_t size) {
    std::exponential_distribution<double> exp(1.0);
    std::vector<double> point(size);
    double total = 0.0;
    for (auto& p : point) {
        p = exp(rng) + 1e-6;
        total += p;
    }
    for (auto& p : point) p /= total;
    return point;
}

inline lingdist::DistributionAssessment random_distribution(
    std::mt19937_64& rng, const lingdist::LinguisticScale& scale) {
    return lingdist::DistributionAssessment(
        scale, random_simplex_point(
                   rng, static_cast<std::size_t>(scale.granularity())));
}

// A sparse distribution touching only a few terms, closer in shape to
// hand-elicited assessments than a dense simplex point.
inline lingdist::DistributionAssessment random_sparse_distribution(
    std::mt19937_64& rng, const lingdist::LinguisticScale& scale) {
    const auto g = static_cast<std::size_t>(scale.granularity());
    std::uniform_int_distribution<std::size_t> count_dist(1, std::min<std::size_t>(3, g));
    const std::size_t support = count_dist(rng);
    std::vector<double> proportions(g, 0.0);
    auto share = random_simplex_point(rng, support);
    std::uniform_int_distribution<std::size_t> term_dist(0, g - 1);
    for (std::size_t i = 0; i < support; ++i)
        proportions[term_dist(rng)] += share[i];
    return lingdist::DistributionAssessment(scale, std::move(proportions));
}

inline lingdist::TwoTuple random_two_tuple(
    std::mt19937_64& rng, const lingdist::LinguisticScale& scale) {
    std::uniform_real_distribution<double> value(0.0, scale.max_index());
    return lingdist::delta(scale, value(rng));
}

inline int random_odd_granularity(std::mt19937_64& rng, int lo = 3,
                                  int hi = 11) {
    std::uniform_int_distribution<int> pick(lo / 2, (hi - 1) / 2);
    return 2 * pick(rng) + 1;
}

}  // namespace testutil
