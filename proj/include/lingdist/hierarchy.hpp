#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lingdist/distribution.hpp"
#include "lingdist/scale.hpp"

namespace lingdist {

// Transformation function between granularities: the value is rescaled by
// the ratio of index spans, then retranslated.  Identity when both scales
// have the same granularity.
inline TwoTuple tf(const TwoTuple& t, const LinguisticScale& target) {
    if (target.compatible_with(t.scale()))
        return TwoTuple(target, t.index(), t.translation());
    const double value = delta_inv(t) * target.max_index() /
                         t.scale().max_index();
    return delta(target, value);
}

// A term-plus-translation pair as a two-term distribution on its scale:
// mass 1 - a on the term and a on its upper neighbor (lower neighbor for
// negative a).  The expectation reproduces index + translation.  Unlike a
// normalized 2-tuple, the translation may range over (-1, 1) as long as
// the value stays within the term range.
inline DistributionAssessment tuple_to_distribution(
    const LinguisticScale& scale, int index, double translation) {
    scale.check_index(index);
    if (!(translation > -1.0 && translation < 1.0))
        throw std::domain_error("translation " + std::to_string(translation) +
                                " outside (-1, 1)");
    const double value = index + translation;
    if (value < 0.0 || value > scale.max_index())
        throw std::domain_error(
            "value " + std::to_string(value) +
            " escapes the term range of granularity " +
            std::to_string(scale.granularity()));
    std::vector<double> proportions(
        static_cast<std::size_t>(scale.granularity()), 0.0);
    const auto k = static_cast<std::size_t>(index);
    if (translation >= 0.0) {
        proportions[k] = 1.0 - translation;
        if (translation > 0.0) proportions[k + 1] = translation;
    } else {
        proportions[k - 1] = -translation;
        proportions[k] = 1.0 + translation;
    }
    return DistributionAssessment(scale, std::move(proportions));
}

inline DistributionAssessment tuple_to_distribution(const TwoTuple& t) {
    return tuple_to_distribution(t.scale(), t.index(), t.translation());
}

// Extended hierarchy over a set of granularities.  The common level has
// granularity lcm(g_i - 1) + 1, so every member's index span divides the
// common span and term indexes map onto it exactly.
class HierarchyContext {
public:
    explicit HierarchyContext(std::vector<LinguisticScale> scales)
        : lcm_scale_(3) {
        for (auto& s : scales)
            if (!contains(s)) scales_.push_back(std::move(s));
        if (scales_.empty())
            throw std::invalid_argument("hierarchy needs at least one scale");
        long long span = 1;
        for (const auto& s : scales_) {
            span = std::lcm(span, static_cast<long long>(s.max_index()));
            if (span >= kMaxCommonGranularity)
                throw std::invalid_argument(
                    "common level granularity exceeds " +
                    std::to_string(kMaxCommonGranularity));
        }
        lcm_scale_ = LinguisticScale(static_cast<int>(span) + 1);
        decompositions_.reserve(scales_.size());
        for (const auto& s : scales_)
            decompositions_.push_back(build_decomposition(s));
    }

    const std::vector<LinguisticScale>& scales() const noexcept {
        return scales_;
    }
    const LinguisticScale& lcm_scale() const noexcept { return lcm_scale_; }

    bool contains(const LinguisticScale& scale) const noexcept {
        for (const auto& s : scales_)
            if (s.compatible_with(scale)) return true;
        return false;
    }

    // Index span multiplier from a member scale up to the common level.
    int stride(const LinguisticScale& member) const {
        return lcm_scale_.max_index() / member_at(member).max_index();
    }

    // One entry per common-level term: that term re-expressed on the target
    // scale.  Entry k sits at index k(g-1)/(g*-1), split between the two
    // enclosing terms when the division is not exact.
    const std::vector<DistributionAssessment>& decomposition(
        const LinguisticScale& target) const {
        for (std::size_t i = 0; i < scales_.size(); ++i)
            if (scales_[i].compatible_with(target)) return decompositions_[i];
        throw std::invalid_argument(not_a_member(target));
    }

private:
    static constexpr long long kMaxCommonGranularity = 10001;

    const LinguisticScale& member_at(const LinguisticScale& scale) const {
        for (const auto& s : scales_)
            if (s.compatible_with(scale)) return s;
        throw std::invalid_argument(not_a_member(scale));
    }

    static std::string not_a_member(const LinguisticScale& scale) {
        return "granularity " + std::to_string(scale.granularity()) +
               " is not part of this hierarchy";
    }

    std::vector<DistributionAssessment> build_decomposition(
        const LinguisticScale& target) const {
        const long long den = lcm_scale_.max_index();
        const long long span = target.max_index();
        std::vector<DistributionAssessment> table;
        table.reserve(static_cast<std::size_t>(den) + 1);
        for (long long k = 0; k <= den; ++k) {
            // Exact rational split: k * span = l * den + rem with
            // 0 <= rem < den, so no floating-point index drift.
            const long long num = k * span;
            const auto l = static_cast<std::size_t>(num / den);
            const long long rem = num % den;
            std::vector<double> proportions(
                static_cast<std::size_t>(target.granularity()), 0.0);
            if (rem == 0) {
                proportions[l] = 1.0;
            } else {
                proportions[l] = static_cast<double>(den - rem) /
                                 static_cast<double>(den);
                proportions[l + 1] =
                    static_cast<double>(rem) / static_cast<double>(den);
            }
            table.emplace_back(target, std::move(proportions));
        }
        return table;
    }

    std::vector<LinguisticScale> scales_;
    LinguisticScale lcm_scale_;
    std::vector<std::vector<DistributionAssessment>> decompositions_;
};

inline HierarchyContext build_context(std::vector<LinguisticScale> scales) {
    return HierarchyContext(std::move(scales));
}

// Lossless lift to the common level: proportion beta_k relocates to term
// k * stride, everything in between stays zero.  Mass and the rescaled
// expectation are preserved exactly.
inline DistributionAssessment upcast(const DistributionAssessment& m,
                                     const HierarchyContext& ctx) {
    if (m.scale().compatible_with(ctx.lcm_scale())) return m;
    const auto r = static_cast<std::size_t>(ctx.stride(m.scale()));
    std::vector<double> lifted(
        static_cast<std::size_t>(ctx.lcm_scale().granularity()), 0.0);
    const auto& p = m.proportions();
    for (std::size_t k = 0; k < p.size(); ++k) lifted[k * r] = p[k];
    return DistributionAssessment::exact(ctx.lcm_scale(), std::move(lifted));
}

inline const std::vector<DistributionAssessment>& decompose_level(
    const HierarchyContext& ctx, const LinguisticScale& target) {
    return ctx.decomposition(target);
}

// Projection from the common level: the weighted average of the per-term
// decompositions, weighted by the distribution itself.  Right inverse of
// upcast, so a round trip through the common level is the identity.
inline DistributionAssessment downcast(const DistributionAssessment& m,
                                       const HierarchyContext& ctx,
                                       const LinguisticScale& target) {
    if (!m.scale().compatible_with(ctx.lcm_scale()))
        throw std::invalid_argument(
            "downcast expects a distribution on the common level of "
            "granularity " +
            std::to_string(ctx.lcm_scale().granularity()) + ", got " +
            std::to_string(m.scale().granularity()));
    if (target.compatible_with(ctx.lcm_scale())) return m;
    const auto& table = ctx.decomposition(target);
    return dawa(std::span<const DistributionAssessment>(table),
                std::span<const double>(m.proportions()));
}

// Cross-granularity move within the hierarchy, routed through the common
// level.  Identity when source and target granularities coincide.
inline DistributionAssessment transform(const DistributionAssessment& m,
                                        const HierarchyContext& ctx,
                                        const LinguisticScale& target) {
    if (m.scale().compatible_with(target)) return m;
    if (!target.compatible_with(ctx.lcm_scale()))
        ctx.decomposition(target);  // membership check
    return downcast(upcast(m, ctx), ctx, target);
}

}  // namespace lingdist
