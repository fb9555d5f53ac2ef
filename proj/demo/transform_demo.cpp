// Walks one distribution through a 5/7/9 hierarchy: up to the common
// level, back down to every member scale, and round trip.

#include <iostream>

#include "lingdist/lingdist.hpp"

using namespace lingdist;

int main() {
    const LinguisticScale s5(5);
    const LinguisticScale s7(7);
    const LinguisticScale s9(9);
    const auto ctx = build_context({s5, s7, s9});

    const auto m = parse_distribution_spec(s5, "0.3@1,0.5@2,0.2@3");
    std::cout << "assessment on granularity 5:  " << format_distribution(m)
              << "\n"
              << "expectation:                  "
              << format_two_tuple(expectation(m)) << "\n\n";

    const auto lifted = upcast(m, ctx);
    std::cout << "common level has granularity "
              << ctx.lcm_scale().granularity() << "\n"
              << "lifted:  " << format_distribution(lifted) << "\n\n";

    for (const auto& target : ctx.scales()) {
        const auto view = downcast(lifted, ctx, target);
        std::cout << "on granularity " << target.granularity() << ": "
                  << format_distribution(view) << "  (E = "
                  << format_two_tuple(expectation(view)) << ")\n";
    }

    const auto round_trip = downcast(lifted, ctx, s5);
    std::cout << "\nround trip reproduces the source: "
              << (distance_legacy(round_trip, m) < 1e-12 ? "yes" : "no")
              << "\n";
    return 0;
}
