#pragma once

#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lingdist/decision.hpp"
#include "lingdist/distribution.hpp"
#include "lingdist/hierarchy.hpp"
#include "lingdist/scale.hpp"

namespace lingdist {

// ---------------------------------------------------------------------------
// Numbers and text

// Accepts JSON numbers as well as "0.25" and "5/12" strings, so exact
// rationals survive a decimal file format.
inline double number_from_json(const nlohmann::json& value) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const std::string text = value.get<std::string>();
        const auto parse = [](std::string_view s) {
            std::size_t begin = s.find_first_not_of(" \t");
            std::size_t end = s.find_last_not_of(" \t");
            if (begin == std::string_view::npos)
                throw std::invalid_argument("empty number");
            s = s.substr(begin, end - begin + 1);
            double parsed = 0.0;
            const auto [ptr, ec] =
                std::from_chars(s.data(), s.data() + s.size(), parsed);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw std::invalid_argument("not a number: \"" +
                                            std::string(s) + "\"");
            return parsed;
        };
        const std::size_t slash = text.find('/');
        if (slash == std::string::npos) return parse(text);
        const double denominator =
            parse(std::string_view(text).substr(slash + 1));
        if (denominator == 0.0)
            throw std::invalid_argument("zero denominator in \"" + text +
                                        "\"");
        return parse(std::string_view(text).substr(0, slash)) / denominator;
    }
    throw std::invalid_argument("expected a number, got " +
                                std::string(value.type_name()));
}

inline std::string format_number(double value, int precision = 4) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", precision, value);
    return buffer;
}

inline std::string format_two_tuple(const TwoTuple& t, int precision = 4) {
    return "(" + t.scale().label(t.index()) + ", " +
           format_number(t.translation(), precision) + ")";
}

// Sparse rendering, zero proportions omitted: "{s_1: 0.3000, s_2: 0.7000}".
inline std::string format_distribution(const DistributionAssessment& m,
                                       int precision = 4) {
    std::string text = "{";
    bool first = true;
    for (int k = 0; k <= m.scale().max_index(); ++k) {
        const double p = m.proportion(k);
        if (p == 0.0) continue;
        if (!first) text += ", ";
        first = false;
        text += m.scale().label(k) + ": " + format_number(p, precision);
    }
    return text + "}";
}

// Inline distribution grammar: comma-separated proportion@term pairs, e.g.
// "0.3@1,0.5@2,0.2@3".  Proportions may be fractions ("1/3@2").
inline DistributionAssessment parse_distribution_spec(
    const LinguisticScale& scale, std::string_view spec) {
    std::vector<double> proportions(
        static_cast<std::size_t>(scale.granularity()), 0.0);
    std::vector<bool> seen(proportions.size(), false);
    std::string_view rest = spec;
    while (true) {
        const std::size_t comma = rest.find(',');
        const std::string_view entry = rest.substr(0, comma);
        const std::size_t at = entry.find('@');
        if (at == std::string_view::npos)
            throw std::invalid_argument(
                "distribution entry \"" + std::string(entry) +
                "\" is not proportion@term");
        const double p = number_from_json(
            nlohmann::json(std::string(entry.substr(0, at))));
        int term = -1;
        {
            const std::string_view digits = entry.substr(at + 1);
            const auto [ptr, ec] = std::from_chars(
                digits.data(), digits.data() + digits.size(), term);
            if (ec != std::errc{} || ptr != digits.data() + digits.size())
                throw std::invalid_argument("bad term index \"" +
                                            std::string(digits) + "\"");
        }
        scale.check_index(term);
        if (seen[static_cast<std::size_t>(term)])
            throw std::invalid_argument("term " + std::to_string(term) +
                                        " listed twice");
        seen[static_cast<std::size_t>(term)] = true;
        proportions[static_cast<std::size_t>(term)] = p;
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return DistributionAssessment(scale, std::move(proportions));
}

// ---------------------------------------------------------------------------
// Distributions and scales as JSON

inline nlohmann::json scale_to_json(const LinguisticScale& scale) {
    nlohmann::json j{{"granularity", scale.granularity()}};
    if (scale.has_labels()) j["labels"] = scale.labels();
    return j;
}

inline LinguisticScale scale_from_json(const nlohmann::json& j) {
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j.at("labels").get<std::vector<std::string>>();
    return {j.at("granularity").get<int>(), std::move(labels)};
}

inline nlohmann::json distribution_to_json(const DistributionAssessment& m) {
    nlohmann::json pairs = nlohmann::json::array();
    for (int k = 0; k <= m.scale().max_index(); ++k)
        if (m.proportion(k) != 0.0)
            pairs.push_back({k, m.proportion(k)});
    return {{"granularity", m.scale().granularity()},
            {"proportions", std::move(pairs)}};
}

namespace detail {

// Proportions come as an object keyed by term index or as index/value
// pairs; either way the result is the dense vector.
inline std::vector<double> proportions_from_json(const nlohmann::json& j,
                                                 const LinguisticScale& scale) {
    std::vector<double> dense(static_cast<std::size_t>(scale.granularity()),
                              0.0);
    const auto assign = [&](int term, const nlohmann::json& value) {
        scale.check_index(term);
        dense[static_cast<std::size_t>(term)] = number_from_json(value);
    };
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            int term = -1;
            const auto [ptr, ec] =
                std::from_chars(key.data(), key.data() + key.size(), term);
            if (ec != std::errc{} || ptr != key.data() + key.size())
                throw std::invalid_argument("bad term index \"" + key + "\"");
            assign(term, value);
        }
        return dense;
    }
    if (j.is_array()) {
        for (const auto& pair : j) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument(
                    "proportion entries must be [term, value] pairs");
            assign(pair.at(0).get<int>(), pair.at(1));
        }
        return dense;
    }
    throw std::invalid_argument("proportions must be an object or an array");
}

// Cells never carry labels; they pick them back up from the problem scale
// of the same granularity (the common level stays unlabeled).
inline LinguisticScale resolve_scale(
    int granularity, std::span<const LinguisticScale> known) {
    for (const auto& s : known)
        if (s.granularity() == granularity) return s;
    return LinguisticScale(granularity);
}

}  // namespace detail

inline DistributionAssessment distribution_from_json(
    const nlohmann::json& j, std::span<const LinguisticScale> known_scales) {
    const auto scale = detail::resolve_scale(
        j.at("granularity").get<int>(), known_scales);
    return DistributionAssessment::exact(
        scale, detail::proportions_from_json(j.at("proportions"), scale));
}

// ---------------------------------------------------------------------------
// Problem files

struct Diagnostic {
    std::string location;
    std::string message;
};

struct ProblemParse {
    std::optional<DecisionProblem> problem;
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept { return problem.has_value(); }
};

namespace detail {

inline const char* sense_name(ConstraintSense sense) {
    switch (sense) {
        case ConstraintSense::less_equal: return "<=";
        case ConstraintSense::greater_equal: return ">=";
        case ConstraintSense::equal: return "=";
    }
    return "?";
}

inline ConstraintSense sense_from_name(const std::string& name) {
    if (name == "<=") return ConstraintSense::less_equal;
    if (name == ">=") return ConstraintSense::greater_equal;
    if (name == "=" || name == "==") return ConstraintSense::equal;
    throw std::invalid_argument("unknown sense \"" + name +
                                "\", expected <=, >= or =");
}

struct ProblemReader {
    const nlohmann::json& file;
    std::vector<Diagnostic>& diagnostics;

    void fail(std::string location, std::string message) const {
        diagnostics.push_back({std::move(location), std::move(message)});
    }

    std::vector<std::string> names(const char* key) const {
        std::vector<std::string> out;
        if (!file.contains(key)) {
            fail(key, "required field is missing");
            return out;
        }
        const auto& j = file.at(key);
        if (!j.is_array() || j.empty()) {
            fail(key, "must be a non-empty array of names");
            return out;
        }
        for (const auto& entry : j) {
            if (!entry.is_string()) {
                fail(key, "entries must be strings");
                return {};
            }
            out.push_back(entry.get<std::string>());
        }
        return out;
    }

    std::pair<std::vector<LinguisticScale>, std::map<std::string, std::size_t>>
    scales() const {
        std::vector<LinguisticScale> out;
        std::map<std::string, std::size_t> ids;
        if (!file.contains("scales") || !file.at("scales").is_array() ||
            file.at("scales").empty()) {
            fail("scales", "must be a non-empty array of scale objects");
            return {out, ids};
        }
        std::size_t index = 0;
        for (const auto& entry : file.at("scales")) {
            const std::string location = "scales[" + std::to_string(index) + "]";
            try {
                if (!entry.is_object())
                    throw std::invalid_argument("must be an object");
                const auto id = entry.at("id").get<std::string>();
                if (!ids.emplace(id, out.size()).second)
                    throw std::invalid_argument("duplicate scale id \"" + id +
                                                "\"");
                out.push_back(scale_from_json(entry));
            } catch (const std::exception& e) {
                fail(location, e.what());
            }
            ++index;
        }
        return {out, ids};
    }

    std::size_t scale_index(
        const nlohmann::json& ref,
        const std::map<std::string, std::size_t>& ids) const {
        const auto id = ref.get<std::string>();
        const auto found = ids.find(id);
        if (found == ids.end())
            throw std::invalid_argument("unknown scale id \"" + id + "\"");
        return found->second;
    }

    WeightScheme weights() const {
        if (!file.contains("attribute_weights")) return UnknownWeights{};
        const auto& j = file.at("attribute_weights");
        if (j.is_string() && j.get<std::string>() == "unknown")
            return UnknownWeights{};
        if (j.is_object() && j.contains("values")) {
            KnownWeights known;
            for (const auto& v : j.at("values"))
                known.values.push_back(number_from_json(v));
            return known;
        }
        if (j.is_object() && j.contains("constraints")) {
            PartialWeights partial;
            for (const auto& c : j.at("constraints")) {
                LinearConstraint row;
                for (const auto& v : c.at("coefficients"))
                    row.coefficients.push_back(number_from_json(v));
                row.sense =
                    sense_from_name(c.at("sense").get<std::string>());
                row.bound = number_from_json(c.at("bound"));
                partial.constraints.push_back(std::move(row));
            }
            return partial;
        }
        throw std::invalid_argument(
            "attribute_weights must be \"unknown\", {\"values\": [...]}, or "
            "{\"constraints\": [...]}");
    }
};

}  // namespace detail

// Parses and cross-checks a problem file, reporting every violation it can
// locate rather than stopping at the first.
inline ProblemParse parse_problem(const nlohmann::json& file) {
    ProblemParse out;
    detail::ProblemReader reader{file, out.diagnostics};
    if (!file.is_object()) {
        reader.fail("$", "problem file must be a JSON object");
        return out;
    }

    const auto alternatives = reader.names("alternatives");
    const auto attributes = reader.names("attributes");
    const auto [scales, scale_ids] = reader.scales();

    WeightScheme scheme = UnknownWeights{};
    try {
        scheme = reader.weights();
    } catch (const std::exception& e) {
        reader.fail("attribute_weights", e.what());
    }

    const bool raw_form =
        file.contains("decision_makers") || file.contains("assessments");
    const bool fused_form = file.contains("matrices");
    if (raw_form && fused_form)
        reader.fail("$",
                    "give either decision_makers/assessments or matrices, "
                    "not both");
    if (!raw_form && !fused_form)
        reader.fail("$",
                    "no assessments: provide decision_makers/assessments "
                    "or matrices");
    if (!out.diagnostics.empty()) return out;

    if (raw_form) {
        std::vector<DecisionMaker> panel;
        if (!file.contains("decision_makers") ||
            !file.at("decision_makers").is_array()) {
            reader.fail("decision_makers", "must be an array");
            return out;
        }
        std::size_t index = 0;
        for (const auto& entry : file.at("decision_makers")) {
            const std::string location =
                "decision_makers[" + std::to_string(index++) + "]";
            try {
                DecisionMaker dm;
                dm.id = entry.at("id").get<std::string>();
                dm.scale = reader.scale_index(entry.at("scale"), scale_ids);
                if (entry.contains("importance"))
                    dm.importance = number_from_json(entry.at("importance"));
                panel.push_back(std::move(dm));
            } catch (const std::exception& e) {
                reader.fail(location, e.what());
            }
        }

        std::vector<TermAssessment> terms;
        if (!file.contains("assessments") ||
            !file.at("assessments").is_object()) {
            reader.fail("assessments",
                        "must map each decision maker id to an "
                        "alternatives-by-attributes matrix of term indexes");
            return out;
        }
        for (std::size_t l = 0; l < panel.size(); ++l) {
            const std::string location = "assessments[" + panel[l].id + "]";
            if (!file.at("assessments").contains(panel[l].id)) {
                reader.fail(location, "missing assessment matrix");
                continue;
            }
            const auto& matrix = file.at("assessments").at(panel[l].id);
            if (!matrix.is_array() ||
                matrix.size() != alternatives.size()) {
                reader.fail(location,
                            "needs one row per alternative (" +
                                std::to_string(alternatives.size()) + ")");
                continue;
            }
            for (std::size_t i = 0; i < matrix.size(); ++i) {
                const auto& row = matrix.at(i);
                if (!row.is_array() || row.size() != attributes.size()) {
                    reader.fail(location + "[" + alternatives[i] + "]",
                                "needs one term per attribute (" +
                                    std::to_string(attributes.size()) + ")");
                    continue;
                }
                for (std::size_t j = 0; j < row.size(); ++j) {
                    if (!row.at(j).is_number_integer()) {
                        reader.fail(location + "[" + alternatives[i] + "][" +
                                        attributes[j] + "]",
                                    "term index must be an integer");
                        continue;
                    }
                    terms.push_back({l, i, j, row.at(j).get<int>()});
                }
            }
        }
        for (const auto& [id, value] : file.at("assessments").items()) {
            bool known = false;
            for (const auto& dm : panel) known = known || dm.id == id;
            if (!known)
                reader.fail("assessments[" + id + "]",
                            "not a declared decision maker");
            (void)value;
        }
        if (!out.diagnostics.empty()) return out;
        try {
            out.problem.emplace(alternatives, attributes, scales,
                                std::move(panel), std::move(terms),
                                std::move(scheme));
        } catch (const std::exception& e) {
            reader.fail("$", e.what());
        }
        return out;
    }

    std::vector<GroupAssessments> groups;
    if (!file.at("matrices").is_array() || file.at("matrices").empty()) {
        reader.fail("matrices", "must be a non-empty array");
        return out;
    }
    std::size_t index = 0;
    for (const auto& entry : file.at("matrices")) {
        const std::string location = "matrices[" + std::to_string(index++) + "]";
        try {
            GroupAssessments group{
                scales.at(reader.scale_index(entry.at("scale"), scale_ids)),
                number_from_json(entry.at("members")),
                {}};
            const auto& cells = entry.at("cells");
            if (!cells.is_array() || cells.size() != alternatives.size())
                throw std::invalid_argument(
                    "cells needs one row per alternative (" +
                    std::to_string(alternatives.size()) + ")");
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const auto& row = cells.at(i);
                if (!row.is_array() || row.size() != attributes.size())
                    throw std::invalid_argument(
                        "row " + alternatives[i] +
                        " needs one cell per attribute (" +
                        std::to_string(attributes.size()) + ")");
                std::vector<DistributionAssessment> parsed_row;
                parsed_row.reserve(row.size());
                for (std::size_t j = 0; j < row.size(); ++j) {
                    try {
                        parsed_row.emplace_back(
                            group.scale, detail::proportions_from_json(
                                             row.at(j), group.scale));
                    } catch (const std::exception& e) {
                        throw std::invalid_argument(
                            "cell (" + alternatives[i] + ", " +
                            attributes[j] + "): " + e.what());
                    }
                }
                group.cells.push_back(std::move(parsed_row));
            }
            groups.push_back(std::move(group));
        } catch (const std::exception& e) {
            reader.fail(location, e.what());
        }
    }
    if (!out.diagnostics.empty()) return out;
    try {
        out.problem.emplace(alternatives, attributes, std::move(groups),
                            std::move(scheme));
    } catch (const std::exception& e) {
        reader.fail("$", e.what());
    }
    return out;
}

// Throwing wrapper for callers that have no use for partial diagnostics.
inline DecisionProblem problem_from_json(const nlohmann::json& file) {
    auto parsed = parse_problem(file);
    if (parsed.ok()) return *std::move(parsed.problem);
    std::string message = "invalid problem:";
    for (const auto& d : parsed.diagnostics)
        message += "\n  " + d.location + ": " + d.message;
    throw std::invalid_argument(message);
}

// ---------------------------------------------------------------------------
// Outcomes as JSON (lossless: reloading reproduces the outcome exactly)

inline const char* provenance_name(WeightProvenance provenance) {
    switch (provenance) {
        case WeightProvenance::given: return "given";
        case WeightProvenance::m1: return "m1";
        case WeightProvenance::m2: return "m2";
    }
    return "?";
}

namespace detail {

inline WeightProvenance provenance_from_name(const std::string& name) {
    if (name == "given") return WeightProvenance::given;
    if (name == "m1") return WeightProvenance::m1;
    if (name == "m2") return WeightProvenance::m2;
    throw std::invalid_argument("unknown weight provenance \"" + name + "\"");
}

inline nlohmann::json matrix_to_json(const AssessmentMatrix& matrix) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : matrix) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& cell : row) cells.push_back(distribution_to_json(cell));
        rows.push_back(std::move(cells));
    }
    return rows;
}

inline AssessmentMatrix matrix_from_json(
    const nlohmann::json& j, std::span<const LinguisticScale> scales) {
    AssessmentMatrix matrix;
    for (const auto& row : j) {
        std::vector<DistributionAssessment> cells;
        for (const auto& cell : row)
            cells.push_back(distribution_from_json(cell, scales));
        matrix.push_back(std::move(cells));
    }
    return matrix;
}

}  // namespace detail

inline nlohmann::json outcome_to_json(const DecisionOutcome& outcome) {
    nlohmann::json j;
    j["alternatives"] = outcome.alternatives;
    j["attributes"] = outcome.attributes;
    j["scales"] = nlohmann::json::array();
    for (const auto& s : outcome.scales)
        j["scales"].push_back(scale_to_json(s));
    j["lcm_granularity"] = outcome.lcm_granularity;
    j["groups"] = nlohmann::json::array();
    for (const auto& g : outcome.groups)
        j["groups"].push_back({{"granularity", g.scale.granularity()},
                               {"mass", g.mass},
                               {"cells", detail::matrix_to_json(g.cells)}});
    j["group_weights"] = outcome.group_weights;
    j["collective_matrix"] = detail::matrix_to_json(outcome.collective_matrix);
    j["weight_provenance"] = provenance_name(outcome.weight_provenance);
    j["attribute_weights"] = outcome.attribute_weights;
    j["collective"] = nlohmann::json::array();
    for (const auto& z : outcome.collective)
        j["collective"].push_back(distribution_to_json(z));
    j["expectations"] = nlohmann::json::array();
    for (const auto& e : outcome.expectations)
        j["expectations"].push_back(
            {{"term", e.index()}, {"translation", e.translation()}});
    j["inaccuracies"] = outcome.inaccuracies;
    j["ranking"] = outcome.ranking.groups;
    j["per_scale_views"] = nlohmann::json::array();
    for (const auto& view : outcome.per_scale_views) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& z : view) cells.push_back(distribution_to_json(z));
        j["per_scale_views"].push_back(std::move(cells));
    }
    return j;
}

inline DecisionOutcome outcome_from_json(const nlohmann::json& j) {
    try {
        DecisionOutcome out;
        out.alternatives = j.at("alternatives").get<std::vector<std::string>>();
        out.attributes = j.at("attributes").get<std::vector<std::string>>();
        for (const auto& s : j.at("scales"))
            out.scales.push_back(scale_from_json(s));
        out.lcm_granularity = j.at("lcm_granularity").get<int>();
        for (const auto& g : j.at("groups"))
            out.groups.push_back(
                {detail::resolve_scale(g.at("granularity").get<int>(),
                                       out.scales),
                 g.at("mass").get<double>(),
                 detail::matrix_from_json(g.at("cells"), out.scales)});
        out.group_weights =
            j.at("group_weights").get<std::vector<double>>();
        out.collective_matrix =
            detail::matrix_from_json(j.at("collective_matrix"), out.scales);
        out.weight_provenance = detail::provenance_from_name(
            j.at("weight_provenance").get<std::string>());
        out.attribute_weights =
            j.at("attribute_weights").get<std::vector<double>>();
        const auto lcm_scale =
            detail::resolve_scale(out.lcm_granularity, out.scales);
        for (const auto& z : j.at("collective"))
            out.collective.push_back(distribution_from_json(z, out.scales));
        for (const auto& e : j.at("expectations"))
            out.expectations.emplace_back(lcm_scale,
                                          e.at("term").get<int>(),
                                          e.at("translation").get<double>());
        out.inaccuracies = j.at("inaccuracies").get<std::vector<double>>();
        out.ranking.groups =
            j.at("ranking").get<std::vector<std::vector<std::size_t>>>();
        for (const auto& view : j.at("per_scale_views")) {
            std::vector<DistributionAssessment> cells;
            for (const auto& z : view)
                cells.push_back(distribution_from_json(z, out.scales));
            out.per_scale_views.push_back(std::move(cells));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed outcome: ") +
                                    e.what());
    }
}

}  // namespace lingdist
