#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "nd/preprocess.hpp"
#include "nd/random.hpp"
#include "nd/time_series.hpp"

namespace {

nd::TimeSeries random_series(nd::Rng& rng, std::size_t n, bool positive) {
    std::vector<double> t(n), v(n);
    double acc = rng.uniform(-50.0, 50.0);
    for (std::size_t i = 0; i < n; ++i) {
        acc += rng.uniform(0.01, 2.0);
        t[i] = acc;
        v[i] = positive ? rng.uniform(1e-3, 1e4) : rng.uniform(-1e3, 1e3);
    }
    return nd::TimeSeries(std::move(t), std::move(v));
}

}  // namespace

TEST_CASE("implicit integer times normalize to exactly k/N") {
    const std::size_t n = 128;
    std::vector<double> t(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<double>(i);
        v[i] = std::sin(0.1 * static_cast<double>(i));
    }
    nd::TimeSeries s(std::move(t), std::move(v));
    auto p = nd::fit(s);
    for (std::size_t k = 0; k < n; ++k)
        REQUIRE(p.normalize_time(s.time(k)) == static_cast<double>(k) / 128.0);
}

TEST_CASE("value min-max endpoints map to 0 and 10") {
    nd::TimeSeries s({0.0, 1.0, 2.0}, {2.0, 3.0, 4.0});
    auto p = nd::fit(s);
    REQUIRE(p.normalize_value(2.0) == 0.0);
    REQUIRE(p.normalize_value(4.0) == 10.0);
    // v' = (v-2)*5 over the interior too
    REQUIRE(p.normalize_value(3.0) == Catch::Approx(5.0).margin(1e-12));
}

TEST_CASE("log filter composes scale(log(v)) with inverse exp(unscale(v'))") {
    const double e1 = std::exp(1.0), e3 = std::exp(3.0);
    nd::TimeSeries s({0.0, 1.0, 2.0}, {e1, std::exp(2.0), e3});
    auto p = nd::fit(s, true);
    REQUIRE(p.normalize_value(e1) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(p.normalize_value(e3) == Catch::Approx(10.0).margin(1e-12));
    REQUIRE(p.denormalize_value(10.0) == Catch::Approx(e3).epsilon(1e-12));
    REQUIRE(p.denormalize_value(0.0) == Catch::Approx(e1).epsilon(1e-12));
}

TEST_CASE("inverse endpoint without log") {
    nd::TimeSeries s({0.0, 1.0}, {2.0, 4.0});
    auto p = nd::fit(s);
    REQUIRE(p.denormalize_value(0.0) == Catch::Approx(2.0).epsilon(1e-12));
    REQUIRE(p.denormalize_value(10.0) == Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("constant values map to the midpoint and stay invertible") {
    nd::TimeSeries s({0.0, 1.0, 2.0}, {7.0, 7.0, 7.0});
    auto p = nd::fit(s);
    auto normalized = nd::apply(p, s);
    for (double v : normalized.values()) REQUIRE(v == 5.0);
    REQUIRE(p.denormalize_value(5.0) == 7.0);
}

TEST_CASE("domain errors") {
    nd::TimeSeries with_zero({0.0, 1.0}, {0.0, 2.0});
    REQUIRE_THROWS_AS(nd::fit(with_zero, true), nd::DataError);

    nd::TimeSeries negative({0.0, 1.0}, {-1.0, 2.0});
    REQUIRE_THROWS_AS(nd::fit(negative, true), nd::DataError);
}

TEST_CASE("training window lands in [0,1) and later times at >= 1") {
    nd::Rng rng(3);
    for (int rep = 0; rep < 30; ++rep) {
        auto s = random_series(rng, 4 + rng.index(60), false);
        auto p = nd::fit(s);
        auto normalized = nd::apply(p, s);
        const std::size_t n = s.size();
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(normalized.time(i) >= 0.0);
            REQUIRE(normalized.time(i) < 1.0);
            // span maps onto [0, (N-1)/N] up to rounding
            REQUIRE(normalized.time(i) <=
                    static_cast<double>(n - 1) / static_cast<double>(n) + 1e-12);
        }
        for (double v : normalized.values()) {
            REQUIRE(v >= -1e-12);
            REQUIRE(v <= 10.0 + 1e-12);
        }
        // one average sample spacing past the window reaches 1 (up to rounding)
        const double span = s.times().back() - s.times().front();
        const double next = s.times().back() + span / static_cast<double>(n - 1);
        REQUIRE(p.normalize_time(next) >= 1.0 - 1e-12);
        REQUIRE(p.normalize_time(next + span) > 1.0);
    }
}

TEST_CASE("apply then invert recovers values within 1e-12") {
    nd::Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const bool log_filter = rng.index(2) == 1;
        auto s = random_series(rng, 2 + rng.index(40), log_filter);
        auto p = nd::fit(s, log_filter);
        auto normalized = nd::apply(p, s);
        auto recovered = nd::invert_values(p, normalized.values());
        for (std::size_t i = 0; i < s.size(); ++i)
            REQUIRE(recovered[i] ==
                    Catch::Approx(s.value(i)).epsilon(1e-12).margin(1e-300));
    }
}

TEST_CASE("axis transforms are strictly increasing") {
    nd::Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = random_series(rng, 8, true);
        const bool log_filter = rng.index(2) == 1;
        auto p = nd::fit(s, log_filter);
        double a = rng.uniform(0.01, 100.0), b = a + rng.uniform(1e-6, 10.0);
        REQUIRE(p.normalize_value(a) < p.normalize_value(b));
        double ta = rng.uniform(-100.0, 100.0), tb = ta + rng.uniform(1e-6, 10.0);
        REQUIRE(p.normalize_time(ta) < p.normalize_time(tb));
    }
}

TEST_CASE("denormalize_time is the inverse of normalize_time") {
    nd::Rng rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = random_series(rng, 6, false);
        auto p = nd::fit(s);
        double t = rng.uniform(-1e3, 1e3);
        REQUIRE(p.denormalize_time(p.normalize_time(t)) ==
                Catch::Approx(t).epsilon(1e-12).margin(1e-9));
    }
}
