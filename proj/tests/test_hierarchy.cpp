#include <catch2/catch_amalgamated.hpp>

#include <lingdist/hierarchy.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "testutil.hpp"

using lingdist::DistributionAssessment;
using lingdist::HierarchyContext;
using lingdist::LinguisticScale;
using lingdist::TwoTuple;

namespace {

const LinguisticScale s5(5);
const LinguisticScale s7(7);
const LinguisticScale s9(9);
const LinguisticScale s13(13);

}  // namespace

TEST_CASE("tf rescales 2-tuples by index span") {
    CHECK(tf(TwoTuple(s13, 3), s7) == TwoTuple(s7, 2, -0.5));
    CHECK(tf(TwoTuple(s13, 6), s7) == TwoTuple(s7, 3, 0.0));
    const TwoTuple t(s5, 2, 0.3);
    CHECK(tf(t, s5) == t);
}

TEST_CASE("tuple bridge splits mass between adjacent terms") {
    const auto up = tuple_to_distribution(s5, 2, 0.6);
    CHECK(up.proportion(2) == Catch::Approx(0.4).margin(1e-12));
    CHECK(up.proportion(3) == Catch::Approx(0.6).margin(1e-12));
    CHECK(up.proportion(0) == 0.0);
    CHECK(up.expectation_index() == Catch::Approx(2.6).margin(1e-12));

    const auto down = tuple_to_distribution(s5, 2, -0.3);
    CHECK(down.proportion(1) == Catch::Approx(0.3).margin(1e-12));
    CHECK(down.proportion(2) == Catch::Approx(0.7).margin(1e-12));

    const auto whole = tuple_to_distribution(TwoTuple(s5, 3));
    CHECK(whole.proportion(3) == 1.0);

    CHECK_THROWS_AS(tuple_to_distribution(s5, 2, 1.0), std::domain_error);
    CHECK_THROWS_AS(tuple_to_distribution(s5, 4, 0.6), std::domain_error);
    CHECK_THROWS_AS(tuple_to_distribution(s5, 0, -0.2), std::domain_error);
    CHECK_THROWS_AS(tuple_to_distribution(s5, 5, 0.0), std::out_of_range);
}

TEST_CASE("bridge expectation reproduces the tuple value") {
    auto rng = testutil::engine(0xb41d6e);
    for (int round = 0; round < 1000; ++round) {
        const LinguisticScale scale(testutil::random_odd_granularity(rng));
        const TwoTuple t = testutil::random_two_tuple(rng, scale);
        const auto m = tuple_to_distribution(t);
        CHECK(m.expectation_index() ==
              Catch::Approx(delta_inv(t)).margin(1e-12));
    }
}

TEST_CASE("hierarchy context finds the least common level") {
    CHECK(HierarchyContext({s5, s7}).lcm_scale().granularity() == 13);
    CHECK(HierarchyContext({s5, s7, s9}).lcm_scale().granularity() == 25);
    CHECK(HierarchyContext({s5}).lcm_scale().granularity() == 5);

    const HierarchyContext dedup({s5, LinguisticScale(5), s7});
    CHECK(dedup.scales().size() == 2);

    CHECK_THROWS_AS(HierarchyContext({}), std::invalid_argument);
    // lcm(512, 510) = 130560 blows past the supported common level.
    CHECK_THROWS_AS(
        HierarchyContext({LinguisticScale(513), LinguisticScale(511)}),
        std::invalid_argument);
}

TEST_CASE("stride is the index span ratio") {
    const HierarchyContext ctx({s5, s7});
    CHECK(ctx.stride(s5) == 3);
    CHECK(ctx.stride(s7) == 2);
    CHECK(ctx.contains(s5));
    CHECK_FALSE(ctx.contains(s9));
    CHECK_THROWS_AS(ctx.stride(s9), std::invalid_argument);
}

TEST_CASE("decomposition table re-expresses every common-level term") {
    const HierarchyContext ctx({s5, s7});
    const auto& table = decompose_level(ctx, s7);
    REQUIRE(table.size() == 13);
    for (int k = 0; k <= 12; ++k) {
        const auto& entry = table[static_cast<std::size_t>(k)];
        if (k % 2 == 0) {
            CHECK(entry.proportion(k / 2) == 1.0);
        } else {
            CHECK(entry.proportion((k - 1) / 2) == 0.5);
            CHECK(entry.proportion((k + 1) / 2) == 0.5);
        }
        CHECK(entry.expectation_index() ==
              Catch::Approx(k / 2.0).margin(1e-12));
    }
    CHECK_THROWS_AS(decompose_level(ctx, s9), std::invalid_argument);
}

TEST_CASE("upcast relocates proportions exactly") {
    const HierarchyContext ctx({s5, s7});
    const DistributionAssessment m(s5, {0.0, 0.3, 0.5, 0.2, 0.0});
    const auto lifted = upcast(m, ctx);
    CHECK(lifted.scale().granularity() == 13);
    CHECK(lifted.proportion(3) == 0.3);
    CHECK(lifted.proportion(6) == 0.5);
    CHECK(lifted.proportion(9) == 0.2);
    double off = 0.0;
    for (const int k : {0, 1, 2, 4, 5, 7, 8, 10, 11, 12})
        off += lifted.proportion(k);
    CHECK(off == 0.0);

    // Lifting something already on the common level changes nothing.
    CHECK(upcast(lifted, ctx) == lifted);
}

TEST_CASE("upcast reaches the 25-term level of the three-scale context") {
    const HierarchyContext ctx({s5, s7, s9});
    const DistributionAssessment cell(s5, {0.0, 0.0, 0.0, 0.4, 0.6});
    const auto lifted = upcast(cell, ctx);
    CHECK(lifted.proportion(18) == 0.4);
    CHECK(lifted.proportion(24) == 0.6);
}

TEST_CASE("downcast projects through the decomposition") {
    const HierarchyContext ctx({s5, s7});
    std::vector<double> lifted(13, 0.0);
    lifted[3] = 0.3;
    lifted[6] = 0.5;
    lifted[9] = 0.2;
    const auto common = DistributionAssessment::exact(s13, lifted);

    const auto projected = downcast(common, ctx, s7);
    const std::vector<double> want{0.0, 0.15, 0.15, 0.5, 0.1, 0.1, 0.0};
    for (int k = 0; k < 7; ++k)
        CHECK(projected.proportion(k) ==
              Catch::Approx(want[static_cast<std::size_t>(k)]).margin(1e-12));

    // Same projection phrased as dawa with the common-level proportions as
    // weights over the full decomposition table.
    const auto& table = decompose_level(ctx, s7);
    const auto averaged = dawa(table, common.proportions());
    CHECK(averaged == projected);

    CHECK_THROWS_AS(downcast(DistributionAssessment(s5, {1, 0, 0, 0, 0}),
                             ctx, s7),
                    std::invalid_argument);
}

TEST_CASE("transform composes the two stages") {
    const HierarchyContext ctx({s5, s7});

    const DistributionAssessment onto7(s5, {0.0, 0.3, 0.5, 0.2, 0.0});
    const auto seven = transform(onto7, ctx, s7);
    const std::vector<double> want7{0.0, 0.15, 0.15, 0.5, 0.1, 0.1, 0.0};
    for (int k = 0; k < 7; ++k)
        CHECK(seven.proportion(k) ==
              Catch::Approx(want7[static_cast<std::size_t>(k)]).margin(1e-12));

    const DistributionAssessment onto5(s7, {0.0, 0.25, 0.3, 0.45, 0.0, 0.0, 0.0});
    const auto five = transform(onto5, ctx, s5);
    CHECK(five.proportion(0) == Catch::Approx(0.0833).margin(5e-4));
    CHECK(five.proportion(1) == Catch::Approx(0.3667).margin(5e-4));
    CHECK(five.proportion(2) == Catch::Approx(0.55).margin(5e-4));

    CHECK(transform(onto7, ctx, s5) == onto7);
    CHECK_THROWS_AS(transform(onto7, ctx, s9), std::invalid_argument);
}

TEST_CASE("round trip through the common level is the identity") {
    const std::vector<LinguisticScale> members{LinguisticScale(3), s5, s7, s9};
    const HierarchyContext ctx(members);
    auto rng = testutil::engine(0x100551e5);
    for (int round = 0; round < 1200; ++round) {
        const auto& scale =
            members[round % members.size()];
        const auto m = testutil::random_distribution(rng, scale);
        const auto back = downcast(upcast(m, ctx), ctx, scale);
        for (int k = 0; k <= scale.max_index(); ++k)
            CHECK(back.proportion(k) ==
                  Catch::Approx(m.proportion(k)).margin(1e-12));
    }
}

TEST_CASE("transform keeps closure and rescales the expectation") {
    const std::vector<LinguisticScale> members{LinguisticScale(3), s5, s7, s9};
    const HierarchyContext ctx(members);
    auto rng = testutil::engine(0x7e5ca1e);
    for (int round = 0; round < 1200; ++round) {
        const auto& source = members[round % members.size()];
        const auto& target = members[(round / members.size()) % members.size()];
        const auto m = testutil::random_distribution(rng, source);
        const auto moved = transform(m, ctx, target);

        double sum = 0.0;
        for (double p : moved.proportions()) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(sum == Catch::Approx(1.0).margin(1e-9));

        const double scaled = m.expectation_index() * target.max_index() /
                              source.max_index();
        CHECK(moved.expectation_index() ==
              Catch::Approx(scaled).margin(1e-9));
    }
}
