#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "nptx/empirical.h"
#include "nptx/errors.h"
#include "nptx/rng.h"

using namespace nptx;

TEST_CASE("contamination slack values and guards") {
    CHECK(epsilon0_of(1000000, 1, 0.05) ==
          doctest::Approx(0.049173240688095359).epsilon(1e-14));
    CHECK(epsilon0_of(5000, 2, 0.1) == doctest::Approx(0.74044592864581457).epsilon(1e-14));
    CHECK_THROWS_AS(epsilon0_of(1, 1, 0.05), ConfigError);
    CHECK_THROWS_AS(epsilon0_of(100, 0, 0.05), ConfigError);
    CHECK_THROWS_AS(epsilon0_of(100, 1, 1.0), ConfigError);
    CHECK_THROWS_AS(epsilon0_of(100, 1, 0.0), ConfigError);

    const ErmConfig cfg{0.1, 0.02};  // budget rate 0.11
    CHECK(within_budget(11, 100, cfg));
    CHECK_FALSE(within_budget(12, 100, cfg));
    CHECK(within_budget(0, 1, cfg));
    CHECK_THROWS_AS(within_budget(0, 0, cfg), ConfigError);
}

TEST_CASE("threshold fit picks the cheapest feasible cut") {
    const auto cls = make_threshold_class(0.0, 1.0);
    const std::vector<double> s0{0.1, 0.5, 0.9};
    const std::vector<double> s1{0.2, 0.6, 0.8};

    // One false alarm allowed: the cut lands just below the covered block.
    const auto h = constrained_erm(cls, s0, s1, {0.3, 0.08});
    REQUIRE(h.has_value());
    const auto r = empirical_risks(*h, s0, s1);
    CHECK(r.type1 == doctest::Approx(1.0 / 3.0));
    CHECK(r.type2 == doctest::Approx(1.0 / 3.0));
    CHECK(std::get<IntervalUnion>(*h).parts[0].lo == doctest::Approx(0.6));

    // No false alarms allowed: only the empty-ish top cut survives.
    const auto strict = constrained_erm(cls, s0, s1, {0.3, 0.0});
    REQUIRE(strict.has_value());
    CHECK(std::get<IntervalUnion>(*strict).parts[0].lo == doctest::Approx(1.0));
    CHECK(empirical_risks(*strict, s0, s1).type1 == doctest::Approx(0.0));
}

TEST_CASE("threshold ties prefer fewer false alarms, then smaller cuts") {
    const auto cls = make_threshold_class(0.0, 1.0);
    const auto fa_break =
        constrained_erm(cls, std::vector<double>{0.3}, std::vector<double>{0.6, 0.8}, {1.0, 0.0});
    REQUIRE(fa_break.has_value());
    CHECK(std::get<IntervalUnion>(*fa_break).parts[0].lo == doctest::Approx(0.6));

    const auto small_break =
        constrained_erm(cls, std::vector<double>{0.9}, std::vector<double>{0.5}, {1.0, 0.0});
    REQUIRE(small_break.has_value());
    CHECK(std::get<IntervalUnion>(*small_break).parts[0].lo == doctest::Approx(0.0));
}

TEST_CASE("no feasible member yields nullopt") {
    const auto cls = make_threshold_class(0.0, 1.0);
    CHECK_FALSE(constrained_erm(cls, std::vector<double>{1.0}, std::vector<double>{0.5},
                                {0.0, 0.0})
                    .has_value());
    CHECK_THROWS_AS(constrained_erm(cls, std::vector<double>{}, std::vector<double>{0.5},
                                    {0.5, 0.0}),
                    ConfigError);
}

TEST_CASE("threshold fit matches a fine grid search") {
    const auto cls = make_threshold_class(0.0, 1.0);
    SplitRng rng(4242, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> s0(40), s1(60);
        for (auto& v : s0) v = rng.next_double();
        for (auto& v : s1) v = rng.next_double();
        std::sort(s0.begin(), s0.end());
        std::sort(s1.begin(), s1.end());
        const ErmConfig cfg{0.05 + 0.3 * rng.next_double(), 0.1};
        const auto h = constrained_erm(cls, s0, s1, cfg);

        // Counts only change at sample values, so scanning them (plus the
        // segment ends) visits every achievable score.
        std::vector<double> cuts{0.0, 1.0};
        cuts.insert(cuts.end(), s0.begin(), s0.end());
        cuts.insert(cuts.end(), s1.begin(), s1.end());
        std::int64_t best_miss = -1, best_fa = -1;
        for (double t : cuts) {
            std::int64_t fa = 0, miss = 0;
            for (double v : s0) fa += v >= t;
            for (double v : s1) miss += v < t;
            if (!within_budget(fa, 40, cfg)) continue;
            if (best_miss < 0 || miss < best_miss ||
                (miss == best_miss && fa < best_fa)) {
                best_miss = miss;
                best_fa = fa;
            }
        }

        if (best_miss < 0) {
            CHECK_FALSE(h.has_value());
            continue;
        }
        REQUIRE(h.has_value());
        const auto r = empirical_risks(*h, s0, s1);
        CHECK(std::llround(r.type2 * 60) == best_miss);
        CHECK(std::llround(r.type1 * 40) == best_fa);
    }
}

TEST_CASE("two-interval fit fuses at the seam when that is cheapest") {
    const auto cls = make_interval_pair_class(0.7, 0.1);
    const std::vector<double> s0{0.4, 0.5, 0.8};
    const std::vector<double> s1{0.15, 0.75, 0.9};
    const auto h = constrained_erm(cls, s0, s1, {0.3, 0.08});
    REQUIRE(h.has_value());
    CHECK(evaluate(*h, 0.7));
    CHECK(evaluate(*h, 0.75));
    CHECK(evaluate(*h, 0.9));
    CHECK_FALSE(evaluate(*h, 0.15));
    CHECK_FALSE(evaluate(*h, 0.5));
    const auto r = empirical_risks(*h, s0, s1);
    CHECK(r.type1 == doctest::Approx(1.0 / 3.0));
    CHECK(r.type2 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("labeling fit over atom samples") {
    const auto cls = make_all_labelings({"a", "b", "c"}, {}, {});
    const std::vector<std::int32_t> s0{0, 0, 1};
    const std::vector<std::int32_t> s1{1, 2, 2};

    const auto h = constrained_erm(cls, s0, s1, {1.0 / 3.0, 0.0});
    REQUIRE(h.has_value());
    CHECK_FALSE(evaluate(*h, std::int32_t{0}));
    CHECK(evaluate(*h, std::int32_t{1}));
    CHECK(evaluate(*h, std::int32_t{2}));

    const auto pinned =
        constrained_erm(make_all_labelings({"a", "b", "c"}, {}, {"c"}), s0, s1,
                        {1.0 / 3.0, 0.0});
    REQUIRE(pinned.has_value());
    CHECK(evaluate(*pinned, std::int32_t{1}));
    CHECK_FALSE(evaluate(*pinned, std::int32_t{2}));

    // Enumeration order settles exact ties: the later atom is turned on alone.
    const auto tied = constrained_erm(cls, std::vector<std::int32_t>{0},
                                      std::vector<std::int32_t>{2}, {1.0, 0.0});
    REQUIRE(tied.has_value());
    CHECK(evaluate(*tied, std::int32_t{2}));
    CHECK_FALSE(evaluate(*tied, std::int32_t{1}));
    CHECK_FALSE(evaluate(*tied, std::int32_t{0}));

    CHECK_FALSE(constrained_erm(make_all_labelings({"a", "b", "c"}, {"a"}, {}), s0, s1,
                                {0.0, 0.0})
                    .has_value());
}
