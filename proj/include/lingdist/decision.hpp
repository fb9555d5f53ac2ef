#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "lingdist/distribution.hpp"
#include "lingdist/hierarchy.hpp"
#include "lingdist/scale.hpp"
#include "lingdist/simplex.hpp"

namespace lingdist {

// One panel member: which scale they assess on, plus an optional importance
// degree.  Importances are all-or-none across the panel and sum to 1.
struct DecisionMaker {
    std::string id;
    std::size_t scale = 0;
    std::optional<double> importance;
};

// A single elicited judgment: decision maker l rates alternative i on
// attribute j with one term of their own scale.
struct TermAssessment {
    std::size_t decision_maker = 0;
    std::size_t alternative = 0;
    std::size_t attribute = 0;
    int term = 0;
};

struct KnownWeights {
    std::vector<double> values;
};
struct UnknownWeights {};
struct PartialWeights {
    std::vector<LinearConstraint> constraints;
};
// Attribute weights arrive fully known, fully unknown, or restricted to a
// feasible region; the latter two are elicited from the data at solve time.
using WeightScheme = std::variant<KnownWeights, UnknownWeights, PartialWeights>;

using AssessmentMatrix = std::vector<std::vector<DistributionAssessment>>;

// Per-scale subpanel after fusion: one distribution per (alternative,
// attribute) cell.  The mass is the head count of the subpanel, or its
// total importance when importances are given; relative masses yield the
// group weights.
struct GroupAssessments {
    LinguisticScale scale;
    double mass = 0.0;
    AssessmentMatrix cells;

    friend bool operator==(const GroupAssessments&,
                           const GroupAssessments&) = default;
};

// Immutable, fully validated problem statement.  Assessments come either
// raw (one term per decision maker and cell) or already fused into
// per-scale distribution matrices; exactly one of the two forms is present.
class DecisionProblem {
public:
    DecisionProblem(std::vector<std::string> alternatives,
                    std::vector<std::string> attributes,
                    std::vector<LinguisticScale> scales,
                    std::vector<DecisionMaker> decision_makers,
                    std::vector<TermAssessment> assessments,
                    WeightScheme weights)
        : alternatives_(std::move(alternatives)),
          attributes_(std::move(attributes)),
          scales_(std::move(scales)),
          decision_makers_(std::move(decision_makers)),
          weights_(std::move(weights)) {
        validate_frame();
        validate_panel();
        index_assessments(assessments);
        validate_weights();
    }

    DecisionProblem(std::vector<std::string> alternatives,
                    std::vector<std::string> attributes,
                    std::vector<GroupAssessments> groups,
                    WeightScheme weights)
        : alternatives_(std::move(alternatives)),
          attributes_(std::move(attributes)),
          groups_(std::move(groups)),
          weights_(std::move(weights)) {
        if (groups_.empty())
            throw std::invalid_argument("problem has no assessment groups");
        scales_.reserve(groups_.size());
        for (const auto& g : groups_) scales_.push_back(g.scale);
        validate_frame();
        validate_groups();
        validate_weights();
    }

    const std::vector<std::string>& alternatives() const noexcept {
        return alternatives_;
    }
    const std::vector<std::string>& attributes() const noexcept {
        return attributes_;
    }
    const std::vector<LinguisticScale>& scales() const noexcept {
        return scales_;
    }
    const std::vector<DecisionMaker>& decision_makers() const noexcept {
        return decision_makers_;
    }
    const WeightScheme& weights() const noexcept { return weights_; }

    bool is_fused() const noexcept { return !groups_.empty(); }
    const std::vector<GroupAssessments>& groups() const noexcept {
        return groups_;
    }

    // Raw form only: the term decision maker l gave cell (i, j).
    int term(std::size_t dm, std::size_t alternative,
             std::size_t attribute) const {
        return terms_.at(dm).at(alternative).at(attribute);
    }

private:
    void validate_frame() const {
        require_unique(alternatives_, "alternative");
        require_unique(attributes_, "attribute");
        std::set<int> granularities;
        for (const auto& s : scales_)
            if (!granularities.insert(s.granularity()).second)
                throw std::invalid_argument(
                    "granularity " + std::to_string(s.granularity()) +
                    " appears twice in the scale list");
    }

    static void require_unique(const std::vector<std::string>& names,
                               const char* what) {
        if (names.empty())
            throw std::invalid_argument(std::string("problem has no ") +
                                        what + "s");
        std::set<std::string> seen;
        for (const auto& name : names)
            if (!seen.insert(name).second)
                throw std::invalid_argument(std::string("duplicate ") + what +
                                            " \"" + name + "\"");
    }

    void validate_panel() const {
        if (scales_.empty())
            throw std::invalid_argument("problem has no scales");
        if (decision_makers_.empty())
            throw std::invalid_argument("problem has no decision makers");
        std::set<std::string> ids;
        std::size_t with_importance = 0;
        double total_importance = 0.0;
        std::vector<bool> used(scales_.size(), false);
        for (const auto& dm : decision_makers_) {
            if (!ids.insert(dm.id).second)
                throw std::invalid_argument("duplicate decision maker \"" +
                                            dm.id + "\"");
            if (dm.scale >= scales_.size())
                throw std::invalid_argument(
                    "decision maker \"" + dm.id +
                    "\" references scale index " + std::to_string(dm.scale) +
                    " of " + std::to_string(scales_.size()));
            used[dm.scale] = true;
            if (dm.importance) {
                if (!(*dm.importance >= 0.0))
                    throw std::invalid_argument(
                        "decision maker \"" + dm.id +
                        "\" has negative importance");
                ++with_importance;
                total_importance += *dm.importance;
            }
        }
        if (with_importance != 0 &&
            with_importance != decision_makers_.size())
            throw std::invalid_argument(
                "importance degrees must be given for all decision makers "
                "or none");
        if (with_importance != 0 &&
            std::abs(total_importance - 1.0) > kProportionSumTolerance)
            throw std::invalid_argument(
                "importance degrees sum to " +
                std::to_string(total_importance) + ", not 1");
        for (std::size_t h = 0; h < scales_.size(); ++h)
            if (!used[h])
                throw std::invalid_argument(
                    "no decision maker uses the scale of granularity " +
                    std::to_string(scales_[h].granularity()));
    }

    void index_assessments(const std::vector<TermAssessment>& assessments) {
        const std::size_t n = alternatives_.size();
        const std::size_t m = attributes_.size();
        terms_.assign(decision_makers_.size(),
                      std::vector<std::vector<int>>(
                          n, std::vector<int>(m, kUnset)));
        for (const auto& a : assessments) {
            if (a.decision_maker >= decision_makers_.size() ||
                a.alternative >= n || a.attribute >= m)
                throw std::invalid_argument(
                    "assessment references an unknown decision maker, "
                    "alternative, or attribute");
            const auto& dm = decision_makers_[a.decision_maker];
            scales_[dm.scale].check_index(a.term);
            int& slot = terms_[a.decision_maker][a.alternative][a.attribute];
            if (slot != kUnset)
                throw std::invalid_argument(
                    "duplicate assessment by \"" + dm.id + "\" for (" +
                    alternatives_[a.alternative] + ", " +
                    attributes_[a.attribute] + ")");
            slot = a.term;
        }
        for (std::size_t l = 0; l < terms_.size(); ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (terms_[l][i][j] == kUnset)
                        throw std::invalid_argument(
                            "missing assessment by \"" +
                            decision_makers_[l].id + "\" for (" +
                            alternatives_[i] + ", " + attributes_[j] + ")");
    }

    void validate_groups() const {
        for (const auto& g : groups_) {
            if (!(g.mass > 0.0))
                throw std::invalid_argument(
                    "group on granularity " +
                    std::to_string(g.scale.granularity()) +
                    " has nonpositive mass");
            if (g.cells.size() != alternatives_.size())
                throw std::invalid_argument(
                    "group on granularity " +
                    std::to_string(g.scale.granularity()) + " has " +
                    std::to_string(g.cells.size()) + " rows for " +
                    std::to_string(alternatives_.size()) + " alternatives");
            for (const auto& row : g.cells) {
                if (row.size() != attributes_.size())
                    throw std::invalid_argument(
                        "group on granularity " +
                        std::to_string(g.scale.granularity()) +
                        " has a row of " + std::to_string(row.size()) +
                        " cells for " + std::to_string(attributes_.size()) +
                        " attributes");
                for (const auto& cell : row)
                    if (!cell.scale().compatible_with(g.scale))
                        throw std::invalid_argument(
                            "cell granularity " +
                            std::to_string(cell.scale().granularity()) +
                            " inside group of granularity " +
                            std::to_string(g.scale.granularity()));
            }
        }
    }

    void validate_weights() const {
        const std::size_t m = attributes_.size();
        if (const auto* known = std::get_if<KnownWeights>(&weights_)) {
            detail::check_weights(known->values, m, "attribute weights");
        } else if (const auto* partial = std::get_if<PartialWeights>(&weights_)) {
            for (const auto& c : partial->constraints)
                if (c.coefficients.size() != m)
                    throw std::invalid_argument(
                        "weight constraint has " +
                        std::to_string(c.coefficients.size()) +
                        " coefficients for " + std::to_string(m) +
                        " attributes");
        }
    }

    static constexpr int kUnset = -1;

    std::vector<std::string> alternatives_;
    std::vector<std::string> attributes_;
    std::vector<LinguisticScale> scales_;
    std::vector<DecisionMaker> decision_makers_;
    std::vector<std::vector<std::vector<int>>> terms_;
    std::vector<GroupAssessments> groups_;
    WeightScheme weights_;
};

// Fuses the subpanel on scale h into per-cell distributions: each cell's
// proportion on term k is the (importance-weighted) share of the subpanel
// that chose k.
inline GroupAssessments fuse_group(const DecisionProblem& problem,
                                   std::size_t scale_index) {
    if (scale_index >= problem.scales().size())
        throw std::invalid_argument("scale index " +
                                    std::to_string(scale_index) +
                                    " out of range");
    if (problem.is_fused()) return problem.groups()[scale_index];

    const LinguisticScale& scale = problem.scales()[scale_index];
    std::vector<std::size_t> members;
    double mass = 0.0;
    for (std::size_t l = 0; l < problem.decision_makers().size(); ++l) {
        const auto& dm = problem.decision_makers()[l];
        if (dm.scale != scale_index) continue;
        members.push_back(l);
        mass += dm.importance.value_or(1.0);
    }
    if (members.empty() || !(mass > 0.0))
        throw std::invalid_argument(
            "the group on granularity " +
            std::to_string(scale.granularity()) +
            " is empty or carries no importance");

    const std::size_t n = problem.alternatives().size();
    const std::size_t m = problem.attributes().size();
    AssessmentMatrix cells;
    cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<DistributionAssessment> row;
        row.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<double> proportions(
                static_cast<std::size_t>(scale.granularity()), 0.0);
            for (std::size_t l : members) {
                const auto weight =
                    problem.decision_makers()[l].importance.value_or(1.0);
                proportions[static_cast<std::size_t>(
                    problem.term(l, i, j))] += weight / mass;
            }
            row.emplace_back(scale, std::move(proportions));
        }
        cells.push_back(std::move(row));
    }
    return {scale, mass, std::move(cells)};
}

inline std::vector<GroupAssessments> fuse_groups(
    const DecisionProblem& problem) {
    if (problem.is_fused()) return problem.groups();
    std::vector<GroupAssessments> groups;
    groups.reserve(problem.scales().size());
    for (std::size_t h = 0; h < problem.scales().size(); ++h)
        groups.push_back(fuse_group(problem, h));
    return groups;
}

// Relative group masses.  Head counts divide by the panel size, importance
// masses by their total; both reduce to normalization.
inline std::vector<double> group_weights(
    std::span<const GroupAssessments> groups) {
    double total = 0.0;
    for (const auto& g : groups) total += g.mass;
    if (!(total > 0.0))
        throw std::invalid_argument("groups carry no mass");
    std::vector<double> weights;
    weights.reserve(groups.size());
    for (const auto& g : groups) weights.push_back(g.mass / total);
    return weights;
}

// Lifts every group matrix to the common level of the hierarchy.
inline std::vector<AssessmentMatrix> unify(
    std::span<const GroupAssessments> groups, const HierarchyContext& ctx) {
    std::vector<AssessmentMatrix> unified;
    unified.reserve(groups.size());
    for (const auto& g : groups) {
        AssessmentMatrix matrix;
        matrix.reserve(g.cells.size());
        for (const auto& row : g.cells) {
            std::vector<DistributionAssessment> lifted;
            lifted.reserve(row.size());
            for (const auto& cell : row) lifted.push_back(upcast(cell, ctx));
            matrix.push_back(std::move(lifted));
        }
        unified.push_back(std::move(matrix));
    }
    return unified;
}

// Collapses the unified matrices into one collective matrix, cell by cell,
// with the group weights.
inline AssessmentMatrix aggregate_groups(
    std::span<const AssessmentMatrix> unified,
    std::span<const double> weights) {
    if (unified.empty())
        throw std::invalid_argument("aggregate_groups: no matrices");
    const std::size_t n = unified.front().size();
    for (const auto& matrix : unified)
        if (matrix.size() != n)
            throw std::invalid_argument(
                "aggregate_groups: matrices disagree on row count");
    AssessmentMatrix collective;
    collective.reserve(n);
    std::vector<DistributionAssessment> cell_stack;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = unified.front()[i].size();
        std::vector<DistributionAssessment> row;
        row.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            cell_stack.clear();
            for (const auto& matrix : unified) {
                if (matrix[i].size() != m)
                    throw std::invalid_argument(
                        "aggregate_groups: matrices disagree on column "
                        "count");
                cell_stack.push_back(matrix[i][j]);
            }
            row.push_back(dawa(cell_stack, weights));
        }
        collective.push_back(std::move(row));
    }
    return collective;
}

// Total pairwise expectation gap down attribute j, over ordered pairs of
// alternatives.  Attributes that separate the alternatives more strongly
// score higher.
inline double deviation_coefficient(const AssessmentMatrix& collective,
                                    std::size_t attribute) {
    double sum = 0.0;
    for (std::size_t i = 0; i < collective.size(); ++i)
        for (std::size_t l = 0; l < collective.size(); ++l) {
            if (i == l) continue;
            sum += distance(collective[i][attribute],
                            collective[l][attribute]);
        }
    return sum;
}

inline std::vector<double> deviation_coefficients(
    const AssessmentMatrix& collective) {
    if (collective.empty() || collective.front().empty())
        throw std::invalid_argument("deviation_coefficients: empty matrix");
    std::vector<double> cs;
    cs.reserve(collective.front().size());
    for (std::size_t j = 0; j < collective.front().size(); ++j)
        cs.push_back(deviation_coefficient(collective, j));
    return cs;
}

// Attribute weights with no prior restriction: the closed-form maximizer of
// total weighted deviation on the unit simplex, the normalized deviation
// coefficients.
inline std::vector<double> weights_m1(const AssessmentMatrix& collective) {
    auto cs = deviation_coefficients(collective);
    double total = 0.0;
    for (double c : cs) total += c;
    if (total <= 1e-12)
        throw SolveError(
            "every attribute's deviation is zero, weights cannot be "
            "elicited; supply them explicitly");
    for (double& c : cs) c /= total;
    return cs;
}

// Attribute weights under a restricted region: maximize total deviation
// over the simplex cut by the region.  Among tied optima the
// lexicographically smallest vertex is returned, coordinate by coordinate,
// so degenerate programs still resolve deterministically.
inline std::vector<double> weights_m2(
    const AssessmentMatrix& collective,
    std::span<const LinearConstraint> region) {
    const auto cs = deviation_coefficients(collective);
    const std::size_t m = cs.size();
    std::vector<LinearConstraint> rows;
    rows.reserve(region.size() + m + 1);
    rows.push_back({std::vector<double>(m, 1.0), ConstraintSense::equal, 1.0});
    rows.insert(rows.end(), region.begin(), region.end());

    // Pinning the objective to its optimum keeps every refinement step on
    // the optimal face, so the winner among tied vertices changes but the
    // attained deviation does not.
    const auto base = maximize_linear(cs, rows);
    rows.push_back({cs, ConstraintSense::equal, base.objective});
    LinearProgramResult refined = base;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> minimize_j(m, 0.0);
        minimize_j[j] = -1.0;
        refined = maximize_linear(minimize_j, rows);
        std::vector<double> pin(m, 0.0);
        pin[j] = 1.0;
        rows.push_back({std::move(pin), ConstraintSense::less_equal,
                        refined.solution[j] + kPivotTolerance});
    }
    // Rounding guard: basic solutions can dip a few ulps below zero.
    for (double& w : refined.solution) w = std::max(w, 0.0);
    return refined.solution;
}

// Collapses the collective matrix row-wise into one distribution per
// alternative.
inline std::vector<DistributionAssessment> aggregate_attributes(
    const AssessmentMatrix& collective, std::span<const double> weights) {
    std::vector<DistributionAssessment> overall;
    overall.reserve(collective.size());
    for (const auto& row : collective) overall.push_back(dawa(row, weights));
    return overall;
}

inline Ranking rank_alternatives(
    std::span<const DistributionAssessment> overall) {
    return rank(overall);
}

// The collective result of each alternative re-expressed on every original
// scale, for presentation back to the subpanels.
inline std::vector<std::vector<DistributionAssessment>> represent_per_scale(
    std::span<const DistributionAssessment> overall,
    const HierarchyContext& ctx) {
    std::vector<std::vector<DistributionAssessment>> views;
    views.reserve(ctx.scales().size());
    for (const auto& scale : ctx.scales()) {
        std::vector<DistributionAssessment> view;
        view.reserve(overall.size());
        for (const auto& z : overall)
            view.push_back(downcast(z, ctx, scale));
        views.push_back(std::move(view));
    }
    return views;
}

enum class WeightProvenance { given, m1, m2 };

// Full trace of one solved problem: every intermediate the pipeline
// produces, in presentation order.
struct DecisionOutcome {
    std::vector<std::string> alternatives;
    std::vector<std::string> attributes;
    std::vector<LinguisticScale> scales;
    int lcm_granularity = 0;
    std::vector<GroupAssessments> groups;
    std::vector<double> group_weights;
    AssessmentMatrix collective_matrix;
    WeightProvenance weight_provenance = WeightProvenance::given;
    std::vector<double> attribute_weights;
    std::vector<DistributionAssessment> collective;
    std::vector<TwoTuple> expectations;
    std::vector<double> inaccuracies;
    Ranking ranking;
    std::vector<std::vector<DistributionAssessment>> per_scale_views;

    friend bool operator==(const DecisionOutcome&,
                           const DecisionOutcome&) = default;
};

namespace detail {

template <typename F>
auto run_stage(const char* name, F&& f) {
    try {
        return std::forward<F>(f)();
    } catch (const std::exception& e) {
        throw SolveError(std::string(name) + ": " + e.what());
    }
}

}  // namespace detail

inline DecisionOutcome solve(const DecisionProblem& problem) {
    DecisionOutcome out;
    out.alternatives = problem.alternatives();
    out.attributes = problem.attributes();
    out.scales = problem.scales();

    out.groups = detail::run_stage("group fusion",
                                   [&] { return fuse_groups(problem); });
    out.group_weights = group_weights(out.groups);

    const HierarchyContext ctx = build_context(out.scales);
    out.lcm_granularity = ctx.lcm_scale().granularity();
    const auto unified = detail::run_stage(
        "unification", [&] { return unify(out.groups, ctx); });
    out.collective_matrix = detail::run_stage("group aggregation", [&] {
        return aggregate_groups(unified, out.group_weights);
    });

    detail::run_stage("attribute weighting", [&] {
        if (const auto* known = std::get_if<KnownWeights>(&problem.weights())) {
            out.weight_provenance = WeightProvenance::given;
            out.attribute_weights = known->values;
        } else if (const auto* partial =
                       std::get_if<PartialWeights>(&problem.weights())) {
            out.weight_provenance = WeightProvenance::m2;
            out.attribute_weights =
                weights_m2(out.collective_matrix, partial->constraints);
        } else {
            out.weight_provenance = WeightProvenance::m1;
            out.attribute_weights = weights_m1(out.collective_matrix);
        }
        return 0;
    });

    out.collective = detail::run_stage("attribute aggregation", [&] {
        return aggregate_attributes(out.collective_matrix,
                                    out.attribute_weights);
    });
    detail::run_stage("ranking", [&] {
        out.expectations.reserve(out.collective.size());
        out.inaccuracies.reserve(out.collective.size());
        for (const auto& z : out.collective) {
            out.expectations.push_back(expectation(z));
            out.inaccuracies.push_back(inaccuracy(z));
        }
        out.ranking = rank_alternatives(out.collective);
        return 0;
    });
    out.per_scale_views = detail::run_stage("per-scale representation", [&] {
        return represent_per_scale(out.collective, ctx);
    });
    return out;
}

}  // namespace lingdist
