#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lingdist/scale.hpp"

namespace lingdist {

// Proportion vectors must sum to 1 within this bound; anything further off
// is rejected rather than silently rescaled.
inline constexpr double kProportionSumTolerance = 1e-9;

// Expectation indexes within one quantum of each other count as equal, so
// aggregation noise cannot flip a comparison onto the inaccuracy key.
// Bucketing (rather than |a-b| < tol) keeps the tie relation transitive.
inline constexpr double kExpectationTieQuantum = 1e-9;

// Assessment spreading unit mass over the terms of one scale.  Proportions
// are stored densely, one entry per term, each in [0, 1], summing to 1.
class DistributionAssessment {
public:
    // Renormalizes when the sum is within kProportionSumTolerance of 1 and
    // rejects otherwise, so off-by-rounding inputs are accepted but genuinely
    // unnormalized ones are not.
    DistributionAssessment(LinguisticScale scale,
                           std::vector<double> proportions)
        : DistributionAssessment(
              validate(std::move(scale), std::move(proportions), true),
              Checked{}) {}

    // Trusts proportions that are already normalized (library output being
    // reloaded).  Still validated, but not rescaled, so serialization round
    // trips reproduce the stored doubles exactly.
    static DistributionAssessment exact(LinguisticScale scale,
                                        std::vector<double> proportions) {
        return DistributionAssessment(
            validate(std::move(scale), std::move(proportions), false),
            Checked{});
    }

    // Degenerate distribution: all mass on one term.
    static DistributionAssessment from_term(LinguisticScale scale, int term) {
        scale.check_index(term);
        std::vector<double> proportions(
            static_cast<std::size_t>(scale.granularity()), 0.0);
        proportions[static_cast<std::size_t>(term)] = 1.0;
        return DistributionAssessment(std::move(scale),
                                      std::move(proportions));
    }

    const LinguisticScale& scale() const noexcept { return scale_; }
    const std::vector<double>& proportions() const noexcept {
        return proportions_;
    }
    double proportion(int term) const {
        scale_.check_index(term);
        return proportions_[static_cast<std::size_t>(term)];
    }

    // Sum of k * beta_k, clamped to the term range to absorb the last-ulp
    // drift of the accumulation.
    double expectation_index() const noexcept {
        double sum = 0.0;
        for (std::size_t k = 0; k < proportions_.size(); ++k)
            sum += static_cast<double>(k) * proportions_[k];
        return std::clamp(sum, 0.0, static_cast<double>(scale_.max_index()));
    }

    friend bool operator==(const DistributionAssessment&,
                           const DistributionAssessment&) = default;

private:
    struct Checked {};
    DistributionAssessment(
        std::pair<LinguisticScale, std::vector<double>> parts, Checked)
        : scale_(std::move(parts.first)),
          proportions_(std::move(parts.second)) {}

    static std::pair<LinguisticScale, std::vector<double>> validate(
        LinguisticScale scale, std::vector<double> proportions,
        bool renormalize) {
        if (static_cast<int>(proportions.size()) != scale.granularity())
            throw std::invalid_argument(
                "distribution needs " + std::to_string(scale.granularity()) +
                " proportions, got " + std::to_string(proportions.size()));
        double sum = 0.0;
        for (double p : proportions) {
            if (!(p >= 0.0))
                throw std::invalid_argument(
                    "negative proportion " + std::to_string(p));
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProportionSumTolerance)
            throw std::invalid_argument(
                "proportions sum to " + std::to_string(sum) + ", not 1");
        if (renormalize && sum != 1.0)
            for (double& p : proportions) p /= sum;
        return {std::move(scale), std::move(proportions)};
    }

    LinguisticScale scale_;
    std::vector<double> proportions_;
};

// Expectation as a 2-tuple on the distribution's own scale.
inline TwoTuple expectation(const DistributionAssessment& m) {
    return delta(m.scale(), m.expectation_index());
}

namespace detail {

inline void check_weights(std::span<const double> weights, std::size_t count,
                          const char* what) {
    if (weights.size() != count)
        throw std::invalid_argument(
            std::string(what) + ": got " + std::to_string(weights.size()) +
            " weights for " + std::to_string(count) + " operands");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw std::invalid_argument(std::string(what) +
                                        ": negative weight " +
                                        std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > kProportionSumTolerance)
        throw std::invalid_argument(std::string(what) + ": weights sum to " +
                                    std::to_string(sum) + ", not 1");
}

}  // namespace detail

// Weighted average of distributions sharing one scale: proportions combine
// term by term, so closure holds by construction.
inline DistributionAssessment dawa(
    std::span<const DistributionAssessment> operands,
    std::span<const double> weights) {
    if (operands.empty())
        throw std::invalid_argument("dawa: no operands");
    detail::check_weights(weights, operands.size(), "dawa");
    const LinguisticScale& scale = operands.front().scale();
    for (const auto& m : operands)
        if (!m.scale().compatible_with(scale))
            throw std::invalid_argument(
                "dawa: operands mix granularities " +
                std::to_string(scale.granularity()) + " and " +
                std::to_string(m.scale().granularity()));
    std::vector<double> combined(
        static_cast<std::size_t>(scale.granularity()), 0.0);
    for (std::size_t i = 0; i < operands.size(); ++i) {
        const auto& p = operands[i].proportions();
        for (std::size_t k = 0; k < combined.size(); ++k)
            combined[k] += weights[i] * p[k];
    }
    return DistributionAssessment(scale, std::move(combined));
}

inline DistributionAssessment dawa(
    std::initializer_list<DistributionAssessment> operands,
    std::initializer_list<double> weights) {
    return dawa(std::span<const DistributionAssessment>(operands.begin(),
                                                        operands.size()),
                std::span<const double>(weights.begin(), weights.size()));
}

namespace detail {

inline void check_same_scale(const DistributionAssessment& a,
                             const DistributionAssessment& b,
                             const char* what) {
    if (!a.scale().compatible_with(b.scale()))
        throw std::invalid_argument(
            std::string(what) + ": granularities " +
            std::to_string(a.scale().granularity()) + " and " +
            std::to_string(b.scale().granularity()) + " differ");
}

}  // namespace detail

// Half the L1 gap between proportion vectors.  Blind to where the mass
// sits, so any two disjoint distributions are at distance 1.
inline double distance_legacy(const DistributionAssessment& a,
                              const DistributionAssessment& b) {
    detail::check_same_scale(a, b, "distance_legacy");
    const auto& pa = a.proportions();
    const auto& pb = b.proportions();
    double sum = 0.0;
    for (std::size_t k = 0; k < pa.size(); ++k)
        sum += std::abs(pa[k] - pb[k]);
    return 0.5 * sum;
}

// Expectation-gap distance, normalized to [0, 1] by the index span.
inline double distance(const DistributionAssessment& a,
                       const DistributionAssessment& b) {
    detail::check_same_scale(a, b, "distance");
    return std::abs(a.expectation_index() - b.expectation_index()) /
           a.scale().max_index();
}

// Shannon entropy of the proportions, in bits; 0 log 0 reads as 0.  Ranges
// from 0 (degenerate) to log2(g) (uniform).
inline double inaccuracy(const DistributionAssessment& m) {
    double sum = 0.0;
    for (double p : m.proportions())
        if (p > 0.0) sum -= p * std::log2(p);
    return sum;
}

// The two comparison keys: expectation decides, inaccuracy breaks ties
// (lower wins, a more concentrated assessment being the more reliable one).
struct RankingKey {
    double expectation;
    double inaccuracy;

    friend bool operator==(const RankingKey&, const RankingKey&) = default;
};

inline RankingKey ranking_key(const DistributionAssessment& m) {
    return {m.expectation_index(), inaccuracy(m)};
}

namespace detail {

inline std::int64_t expectation_bucket(double index) noexcept {
    return std::llround(index / kExpectationTieQuantum);
}

}  // namespace detail

inline std::strong_ordering compare(const DistributionAssessment& a,
                                    const DistributionAssessment& b) {
    detail::check_same_scale(a, b, "compare");
    const auto ba = detail::expectation_bucket(a.expectation_index());
    const auto bb = detail::expectation_bucket(b.expectation_index());
    if (ba != bb)
        return ba < bb ? std::strong_ordering::less
                       : std::strong_ordering::greater;
    const double ta = inaccuracy(a);
    const double tb = inaccuracy(b);
    if (ta != tb)
        return ta < tb ? std::strong_ordering::greater
                       : std::strong_ordering::less;
    return std::strong_ordering::equal;
}

// Best-first ranking with explicit tie groups.  Positions are indexes into
// the ranked sequence; ties keep their original relative order.
struct Ranking {
    std::vector<std::vector<std::size_t>> groups;

    std::vector<std::size_t> order() const {
        std::vector<std::size_t> flat;
        for (const auto& g : groups) flat.insert(flat.end(), g.begin(), g.end());
        return flat;
    }

    friend bool operator==(const Ranking&, const Ranking&) = default;
};

inline Ranking rank(std::span<const DistributionAssessment> ms) {
    if (ms.empty()) throw std::invalid_argument("rank: no assessments");
    for (const auto& m : ms) detail::check_same_scale(ms.front(), m, "rank");
    std::vector<std::size_t> order(ms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) {
                  const auto c = compare(ms[a], ms[b]);
                  if (c != std::strong_ordering::equal)
                      return c == std::strong_ordering::greater;
                  return a < b;
              });
    Ranking ranking;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || compare(ms[order[i]], ms[order[i - 1]]) !=
                          std::strong_ordering::equal)
            ranking.groups.emplace_back();
        ranking.groups.back().push_back(order[i]);
    }
    return ranking;
}

inline Ranking rank(std::initializer_list<DistributionAssessment> ms) {
    return rank(std::span<const DistributionAssessment>(ms.begin(), ms.size()));
}

}  // namespace lingdist
