// Command-line front end: solve full problems, transform or rank single
// assessments, and validate problem files.  Exit codes: 0 success, 1 bad
// input, 2 solve failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lingdist/lingdist.hpp"

namespace {

using namespace lingdist;

std::string pad(const std::string& text, std::size_t width) {
    return text + std::string(width - text.size(), ' ');
}

// Rows are [row header, cell...]; the first header names the corner.
std::string grid(const std::vector<std::string>& headers,
                 const std::vector<std::vector<std::string>>& rows,
                 int indent) {
    std::vector<std::size_t> widths;
    for (const auto& h : headers) widths.push_back(h.size());
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    std::string text;
    const std::string margin(static_cast<std::size_t>(indent), ' ');
    text += margin;
    for (std::size_t c = 0; c < headers.size(); ++c)
        text += (c ? "  " : "") + pad(headers[c], widths[c]);
    text += "\n";
    for (const auto& row : rows) {
        text += margin;
        for (std::size_t c = 0; c < row.size(); ++c)
            text += (c ? "  " : "") + pad(row[c], widths[c]);
        text += "\n";
    }
    return text;
}

std::string format_mass(double mass) {
    if (mass == static_cast<double>(static_cast<long long>(mass)))
        return std::to_string(static_cast<long long>(mass));
    return format_number(mass);
}

std::string matrix_section(const AssessmentMatrix& cells,
                           const std::vector<std::string>& alternatives,
                           const std::vector<std::string>& attributes) {
    std::vector<std::string> headers{""};
    headers.insert(headers.end(), attributes.begin(), attributes.end());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::vector<std::string> row{alternatives[i]};
        for (const auto& cell : cells[i])
            row.push_back(format_distribution(cell));
        rows.push_back(std::move(row));
    }
    return grid(headers, rows, 4);
}

const char* provenance_text(WeightProvenance provenance) {
    switch (provenance) {
        case WeightProvenance::given: return "supplied with the problem";
        case WeightProvenance::m1: return "max-deviation closed form";
        case WeightProvenance::m2: return "max-deviation linear program";
    }
    return "?";
}

std::string ranking_text(const Ranking& ranking,
                         const std::vector<std::string>& names) {
    std::string text;
    for (std::size_t g = 0; g < ranking.groups.size(); ++g) {
        if (g) text += " > ";
        for (std::size_t k = 0; k < ranking.groups[g].size(); ++k) {
            if (k) text += " = ";
            text += names[ranking.groups[g][k]];
        }
    }
    return text;
}

std::string join(const std::vector<std::string>& parts) {
    std::string text;
    for (std::size_t i = 0; i < parts.size(); ++i)
        text += (i ? ", " : "") + parts[i];
    return text;
}

std::string render_outcome(const DecisionOutcome& out) {
    std::ostringstream os;
    os << "Problem\n"
       << "    alternatives: " << join(out.alternatives) << "\n"
       << "    attributes:   " << join(out.attributes) << "\n\n";

    os << "Step 1: per-scale assessment matrices\n";
    for (std::size_t h = 0; h < out.groups.size(); ++h) {
        os << "  granularity " << out.groups[h].scale.granularity()
           << " (mass " << format_mass(out.groups[h].mass) << ", weight "
           << format_number(out.group_weights[h]) << ")\n"
           << matrix_section(out.groups[h].cells, out.alternatives,
                             out.attributes);
    }

    os << "\nStep 2: common level\n    granularity "
       << out.lcm_granularity << "\n";

    os << "\nStep 3: collective matrix (granularity "
       << out.lcm_granularity << ")\n"
       << matrix_section(out.collective_matrix, out.alternatives,
                         out.attributes);

    os << "\nStep 4: attribute weights (" +
              std::string(provenance_text(out.weight_provenance)) + ")\n";
    for (std::size_t j = 0; j < out.attributes.size(); ++j)
        os << "    " << out.attributes[j] << ": "
           << format_number(out.attribute_weights[j]) << "\n";

    os << "\nStep 5: overall assessments and ranking\n";
    for (std::size_t i = 0; i < out.alternatives.size(); ++i)
        os << "    " << out.alternatives[i]
           << ": E = " << format_two_tuple(out.expectations[i]) << " ["
           << format_number(delta_inv(out.expectations[i])) << "], T = "
           << format_number(out.inaccuracies[i]) << "\n";
    os << "    ranking: " << ranking_text(out.ranking, out.alternatives)
       << "\n";

    os << "\nStep 6: per-scale views of the overall assessments\n";
    for (std::size_t h = 0; h < out.per_scale_views.size(); ++h) {
        os << "  granularity " << out.scales[h].granularity() << "\n";
        for (std::size_t i = 0; i < out.alternatives.size(); ++i)
            os << "    " << out.alternatives[i] << ": "
               << format_distribution(out.per_scale_views[h][i]) << "\n";
    }
    return os.str();
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read \"" + path + "\"");
    return nlohmann::json::parse(in);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::invalid_argument("cannot write \"" + out_path + "\"");
    out << text;
}

int run_solve(const std::string& path, const std::string& format,
              const std::string& out_path) {
    const auto parsed = parse_problem(load_json(path));
    if (!parsed.ok()) {
        std::cerr << path << " is invalid:\n";
        for (const auto& d : parsed.diagnostics)
            std::cerr << "  " << d.location << ": " << d.message << "\n";
        return 1;
    }
    const auto outcome = solve(*parsed.problem);
    if (format == "json")
        emit(outcome_to_json(outcome).dump(2) + "\n", out_path);
    else
        emit(render_outcome(outcome), out_path);
    return 0;
}

int run_transform(int from, int to, const std::string& spec) {
    const LinguisticScale source(from);
    const LinguisticScale target(to);
    const auto ctx = build_context({source, target});
    const auto m = parse_distribution_spec(source, spec);
    const auto lifted = upcast(m, ctx);
    std::cout << "source (granularity " << from
              << "):        " << format_distribution(m) << "\n"
              << "common level (granularity "
              << ctx.lcm_scale().granularity()
              << "): " << format_distribution(lifted) << "\n"
              << "target (granularity " << to
              << "):        " << format_distribution(transform(m, ctx, target))
              << "\n";
    return 0;
}

int run_rank(int granularity, const std::vector<std::string>& specs) {
    const LinguisticScale scale(granularity);
    std::vector<DistributionAssessment> ms;
    std::vector<std::string> names;
    ms.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        ms.push_back(parse_distribution_spec(scale, specs[i]));
        names.push_back("#" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < ms.size(); ++i)
        std::cout << names[i] << ": " << format_distribution(ms[i])
                  << "  E = " << format_two_tuple(expectation(ms[i]))
                  << ", T = " << format_number(inaccuracy(ms[i])) << "\n";
    std::cout << "ranking: "
              << ranking_text(rank(std::span<const DistributionAssessment>(ms)),
                              names)
              << "\n";
    return 0;
}

int run_validate(const std::string& path) {
    const auto parsed = parse_problem(load_json(path));
    if (!parsed.ok()) {
        std::cerr << path << " is invalid:\n";
        for (const auto& d : parsed.diagnostics)
            std::cerr << "  " << d.location << ": " << d.message << "\n";
        return 1;
    }
    const auto& p = *parsed.problem;
    std::cout << path << " is valid: " << p.alternatives().size()
              << " alternatives, " << p.attributes().size()
              << " attributes, " << p.scales().size() << " scales"
              << (p.is_fused()
                      ? std::string(" (pre-fused matrices)")
                      : ", " + std::to_string(p.decision_makers().size()) +
                            " decision makers")
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-granular linguistic distribution decision making"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string format = "table";
    std::string out_path;
    auto* solve_cmd = app.add_subcommand(
        "solve", "run the decision pipeline on a problem file");
    solve_cmd->add_option("problem", problem_path, "problem file (JSON)")
        ->required();
    solve_cmd->add_option("--format", format, "table (default) or json")
        ->check(CLI::IsMember({"table", "json"}));
    solve_cmd->add_option("--out", out_path,
                          "write the report to this file instead of stdout");

    int from = 0;
    int to = 0;
    std::string dist_spec;
    auto* transform_cmd = app.add_subcommand(
        "transform", "re-express a distribution on another granularity");
    transform_cmd->add_option("--from", from, "source granularity")
        ->required();
    transform_cmd->add_option("--to", to, "target granularity")->required();
    transform_cmd
        ->add_option("--dist", dist_spec,
                     "distribution as proportion@term pairs, e.g. "
                     "0.3@1,0.5@2,0.2@3")
        ->required();

    int rank_granularity = 0;
    std::vector<std::string> rank_specs;
    auto* rank_cmd = app.add_subcommand(
        "rank", "order distribution assessments sharing one scale");
    rank_cmd->add_option("--scale", rank_granularity, "granularity")
        ->required();
    rank_cmd
        ->add_option("--dist", rank_specs,
                     "assessment as proportion@term pairs (repeat per "
                     "assessment)")
        ->required();

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand(
        "validate", "check a problem file and report every violation");
    validate_cmd->add_option("problem", validate_path, "problem file (JSON)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed())
            return run_solve(problem_path, format, out_path);
        if (transform_cmd->parsed())
            return run_transform(from, to, dist_spec);
        if (rank_cmd->parsed()) return run_rank(rank_granularity, rank_specs);
        return run_validate(validate_path);
    } catch (const SolveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
