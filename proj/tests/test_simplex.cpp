#include <catch2/catch_amalgamated.hpp>

#include <lingdist/simplex.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lp_oracle.hpp"
#include "testutil.hpp"

using lingdist::ConstraintSense;
using lingdist::LinearConstraint;
using lingdist::maximize_linear;
using lingdist::SolveError;

TEST_CASE("simplex solves a textbook maximization") {
    const std::vector<double> c{3.0, 2.0};
    const std::vector<LinearConstraint> rows{
        {{1.0, 1.0}, ConstraintSense::less_equal, 4.0},
        {{1.0, 3.0}, ConstraintSense::less_equal, 6.0},
    };
    const auto result = maximize_linear(c, rows);
    CHECK(result.objective == Catch::Approx(12.0).margin(1e-9));
    CHECK(result.solution[0] == Catch::Approx(4.0).margin(1e-9));
    CHECK(result.solution[1] == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("simplex handles equality rows") {
    const std::vector<double> c{1.0, 2.0};
    const std::vector<LinearConstraint> rows{
        {{1.0, 1.0}, ConstraintSense::equal, 1.0},
    };
    const auto result = maximize_linear(c, rows);
    CHECK(result.objective == Catch::Approx(2.0).margin(1e-9));
    CHECK(result.solution[1] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("simplex normalizes negative bounds") {
    // -x - y <= -1 is x + y >= 1.
    const std::vector<double> c{-1.0, -1.0};
    const std::vector<LinearConstraint> rows{
        {{-1.0, -1.0}, ConstraintSense::less_equal, -1.0},
    };
    const auto result = maximize_linear(c, rows);
    CHECK(result.objective == Catch::Approx(-1.0).margin(1e-9));
}

TEST_CASE("simplex reports infeasibility and unboundedness") {
    const std::vector<double> c{1.0};
    const std::vector<LinearConstraint> infeasible{
        {{1.0}, ConstraintSense::greater_equal, 2.0},
        {{1.0}, ConstraintSense::less_equal, 1.0},
    };
    CHECK_THROWS_AS(maximize_linear(c, infeasible), SolveError);

    const std::vector<double> c2{1.0, 1.0};
    const std::vector<LinearConstraint> open{
        {{1.0, -1.0}, ConstraintSense::less_equal, 1.0},
    };
    CHECK_THROWS_AS(maximize_linear(c2, open), SolveError);
}

TEST_CASE("simplex rejects malformed programs") {
    CHECK_THROWS_AS(maximize_linear(std::vector<double>{},
                                    std::vector<LinearConstraint>{}),
                    std::invalid_argument);
    const std::vector<LinearConstraint> short_row{
        {{1.0}, ConstraintSense::less_equal, 1.0},
    };
    CHECK_THROWS_AS(maximize_linear(std::vector<double>{1.0, 1.0}, short_row),
                    std::invalid_argument);
}

TEST_CASE("degenerate vertices do not cycle") {
    // Three constraints meet at (1, 0); Bland's rule must still terminate.
    const std::vector<double> c{1.0, 1.0};
    const std::vector<LinearConstraint> rows{
        {{1.0, 1.0}, ConstraintSense::less_equal, 1.0},
        {{1.0, 0.0}, ConstraintSense::less_equal, 1.0},
        {{1.0, 2.0}, ConstraintSense::less_equal, 1.0},
    };
    const auto result = maximize_linear(c, rows);
    CHECK(result.objective == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("simplex is deterministic") {
    const std::vector<double> c{1.0, 1.0, 1.0};
    const std::vector<LinearConstraint> rows{
        {{1.0, 1.0, 1.0}, ConstraintSense::equal, 1.0},
        {{1.0, 0.0, 0.0}, ConstraintSense::greater_equal, 0.2},
    };
    const auto first = maximize_linear(c, rows);
    const auto second = maximize_linear(c, rows);
    CHECK(first.solution == second.solution);
    CHECK(first.objective == second.objective);
}

TEST_CASE("simplex agrees with vertex enumeration on random polytopes") {
    auto rng = testutil::engine(0x0d0ac1e5);
    std::uniform_int_distribution<std::size_t> dims(2, 5);
    std::uniform_int_distribution<int> extra_rows(0, 3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> slack(0.0, 0.5);

    for (int round = 0; round < 300; ++round) {
        const std::size_t n = dims(rng);
        // Feasibility by construction: every extra row is satisfied with
        // room to spare by a known interior point of the simplex.
        const auto interior = testutil::random_simplex_point(rng, n);
        std::vector<LinearConstraint> rows{
            {std::vector<double>(n, 1.0), ConstraintSense::equal, 1.0},
        };
        const int extras = extra_rows(rng);
        for (int r = 0; r < extras; ++r) {
            std::vector<double> a(n);
            double at_interior = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                a[j] = coef(rng);
                at_interior += a[j] * interior[j];
            }
            const bool upper = (round + r) % 2 == 0;
            rows.push_back({std::move(a),
                            upper ? ConstraintSense::less_equal
                                  : ConstraintSense::greater_equal,
                            upper ? at_interior + slack(rng)
                                  : at_interior - slack(rng)});
        }

        std::vector<double> c(n);
        for (auto& v : c) v = coef(rng);

        const auto oracle = lp_oracle::best_vertex(c, rows);
        REQUIRE(oracle.has_value());
        const auto result = maximize_linear(c, rows);
        CHECK(result.objective ==
              Catch::Approx(oracle->objective).margin(1e-9));
    }
}
