#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lingdist {

// Ordered term set S = {s_0, ..., s_{g-1}}, g odd and >= 3 so a middle term
// exists.  Labels are optional; when present there is exactly one per term.
class LinguisticScale {
public:
    explicit LinguisticScale(int granularity)
        : LinguisticScale(granularity, {}) {}

    LinguisticScale(int granularity, std::vector<std::string> labels)
        : granularity_(granularity), labels_(std::move(labels)) {
        if (granularity_ < 3 || granularity_ % 2 == 0)
            throw std::invalid_argument(
                "scale granularity must be odd and at least 3, got " +
                std::to_string(granularity_));
        if (!labels_.empty() &&
            static_cast<int>(labels_.size()) != granularity_)
            throw std::invalid_argument(
                "scale with granularity " + std::to_string(granularity_) +
                " needs " + std::to_string(granularity_) + " labels, got " +
                std::to_string(labels_.size()));
    }

    int granularity() const noexcept { return granularity_; }
    int max_index() const noexcept { return granularity_ - 1; }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::string label(int index) const {
        check_index(index);
        if (has_labels()) return labels_[static_cast<std::size_t>(index)];
        return "s_" + std::to_string(index);
    }

    // Scales interoperate iff they have the same granularity; labels are
    // presentation only.
    bool compatible_with(const LinguisticScale& other) const noexcept {
        return granularity_ == other.granularity_;
    }

    void check_index(int index) const {
        if (index < 0 || index > max_index())
            throw std::out_of_range(
                "term index " + std::to_string(index) +
                " outside scale of granularity " + std::to_string(granularity_));
    }

    friend bool operator==(const LinguisticScale&,
                           const LinguisticScale&) = default;

private:
    int granularity_;
    std::vector<std::string> labels_;
};

// Term plus symbolic translation.  Invariants: the index is on the scale,
// the translation lies in [-0.5, 0.5), and index + translation stays within
// [0, g-1] (so the extreme terms only carry translations pointing inward).
class TwoTuple {
public:
    TwoTuple(LinguisticScale scale, int index, double translation = 0.0)
        : scale_(std::move(scale)), index_(index), translation_(translation) {
        scale_.check_index(index_);
        if (!(translation_ >= -0.5 && translation_ < 0.5))
            throw std::domain_error(
                "symbolic translation " + std::to_string(translation_) +
                " outside [-0.5, 0.5)");
        const double value = index_ + translation_;
        if (value < 0.0 || value > scale_.max_index())
            throw std::domain_error(
                "2-tuple value " + std::to_string(value) +
                " escapes the term range of granularity " +
                std::to_string(scale_.granularity()));
    }

    const LinguisticScale& scale() const noexcept { return scale_; }
    int index() const noexcept { return index_; }
    double translation() const noexcept { return translation_; }

    friend bool operator==(const TwoTuple&, const TwoTuple&) = default;

private:
    LinguisticScale scale_;
    int index_;
    double translation_;
};

// Delta: numeric value in [0, g-1] to the closest term plus translation.
// Half points round up, so the translation -0.5 is attainable and +0.5 is
// not.  std::round is exact here and avoids the floor(x + 0.5) double
// rounding at representation boundaries.
inline TwoTuple delta(const LinguisticScale& scale, double value) {
    if (!(value >= 0.0 && value <= scale.max_index()))
        throw std::domain_error(
            "aggregation value " + std::to_string(value) +
            " outside [0, " + std::to_string(scale.max_index()) + "]");
    const int index = static_cast<int>(std::round(value));
    // index is the nearest integer, so value - index is exact in IEEE
    // doubles and delta_inv recovers value bit for bit.
    return TwoTuple(scale, index, value - index);
}

inline double delta_inv(const TwoTuple& t) noexcept {
    return t.index() + t.translation();
}

// Negation mirrors the value across the scale midpoint: Neg(s_k, a) has
// value (g-1) - (k + a).
inline TwoTuple negate(const TwoTuple& t) {
    return delta(t.scale(), t.scale().max_index() - delta_inv(t));
}

inline std::strong_ordering compare(const TwoTuple& a, const TwoTuple& b) {
    if (!a.scale().compatible_with(b.scale()))
        throw std::invalid_argument(
            "cannot compare 2-tuples on granularities " +
            std::to_string(a.scale().granularity()) + " and " +
            std::to_string(b.scale().granularity()));
    const double va = delta_inv(a);
    const double vb = delta_inv(b);
    if (va < vb) return std::strong_ordering::less;
    if (va > vb) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace lingdist
