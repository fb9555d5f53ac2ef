// Builds a small two-scale panel in code (five members rating one product
// on three attributes) and runs the whole pipeline on it.

#include <iostream>

#include "lingdist/lingdist.hpp"

using namespace lingdist;

int main() {
    const LinguisticScale s5(5, {"very poor", "poor", "fair", "good",
                                 "very good"});
    const LinguisticScale s7(7, {"extremely poor", "very poor", "poor",
                                 "fair", "good", "very good",
                                 "extremely good"});

    std::vector<DecisionMaker> panel{{"d1", 0, 0.2},
                                     {"d2", 0, 0.3},
                                     {"d3", 1, 0.2},
                                     {"d4", 1, 0.15},
                                     {"d5", 1, 0.15}};
    // One term per decision maker and attribute (single alternative).
    const int terms[5][3] = {{4, 1, 1},
                             {3, 2, 1},
                             {5, 3, 3},
                             {6, 3, 2},
                             {6, 4, 2}};
    std::vector<TermAssessment> assessments;
    for (std::size_t l = 0; l < 5; ++l)
        for (std::size_t j = 0; j < 3; ++j)
            assessments.push_back({l, 0, j, terms[l][j]});

    // A single alternative leaves nothing for deviation-based weighting to
    // separate, so the weights must come with the problem.
    const DecisionProblem problem({"A1"}, {"C1", "C2", "C3"}, {s5, s7},
                                  std::move(panel), std::move(assessments),
                                  KnownWeights{{1.0 / 3, 1.0 / 3, 1.0 / 3}});
    const auto outcome = solve(problem);

    for (std::size_t h = 0; h < outcome.groups.size(); ++h) {
        std::cout << "group on granularity "
                  << outcome.groups[h].scale.granularity() << " (weight "
                  << format_number(outcome.group_weights[h]) << ")\n";
        for (std::size_t j = 0; j < outcome.attributes.size(); ++j)
            std::cout << "  " << outcome.attributes[j] << ": "
                      << format_distribution(outcome.groups[h].cells[0][j])
                      << "\n";
    }

    std::cout << "\nattribute weights ("
              << provenance_name(outcome.weight_provenance) << "):";
    for (double w : outcome.attribute_weights)
        std::cout << " " << format_number(w);
    std::cout << "\noverall: " << format_distribution(outcome.collective[0])
              << "\nE = " << format_two_tuple(outcome.expectations[0])
              << ", T = " << format_number(outcome.inaccuracies[0]) << "\n";
    return 0;
}
