#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "nd/model.hpp"
#include "nd/random.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

/// Random model with O(1) parameters, for property tests.
nd::NDModel random_model(nd::Rng& rng, std::size_t n_sin, const nd::AugmentationSpec& aug) {
    auto m = nd::NDModel::init(n_sin, aug, rng.raw());
    for (auto& u : m.hidden) {
        u.input_weight = rng.uniform(-8.0, 8.0);
        u.bias = rng.uniform(-2.0, 2.0);
    }
    for (auto& w : m.output_weights) w = rng.uniform(-2.0, 2.0);
    m.output_bias = rng.uniform(-2.0, 2.0);
    return m;
}

}  // namespace

TEST_CASE("init lays out iDFT frequency pairs with cos/-sin phases") {
    auto m = nd::NDModel::init(4, nd::AugmentationSpec::none(), 0);
    std::vector<double> freqs, phases;
    for (const auto& u : m.hidden) {
        freqs.push_back(u.input_weight);
        phases.push_back(u.bias);
    }
    REQUIRE(freqs == std::vector<double>{2 * kPi, 2 * kPi, 4 * kPi, 4 * kPi});
    REQUIRE(phases == std::vector<double>{kPi / 2, kPi, kPi / 2, kPi});
}

TEST_CASE("even units compute cosines, odd units negated sines") {
    auto m = nd::NDModel::init(6, nd::AugmentationSpec::none(), 0);
    nd::Rng rng(5);
    for (int j = 0; j < 200; ++j) {
        double t = rng.uniform(-2.0, 2.0);
        for (std::size_t k = 0; k < 6; ++k) {
            const double bin_freq = 2.0 * kPi * static_cast<double>(k / 2 + 1);
            const double expected =
                (k % 2 == 0) ? std::cos(bin_freq * t) : -std::sin(bin_freq * t);
            const auto& u = m.hidden[k];
            REQUIRE(std::sin(u.input_weight * t + u.bias) ==
                    Catch::Approx(expected).margin(1e-12));
        }
    }
}

TEST_CASE("init is deterministic in the seed") {
    auto a = nd::NDModel::init(16, {10, 10, 10}, 1234);
    auto b = nd::NDModel::init(16, {10, 10, 10}, 1234);
    REQUIRE(a == b);
    auto c = nd::NDModel::init(16, {10, 10, 10}, 1235);
    REQUIRE(a != c);
}

TEST_CASE("init draws small output weights and identity-ish augmentation") {
    auto m = nd::NDModel::init(8, {10, 10, 10}, 99);
    REQUIRE(m.unit_count() == 38);
    REQUIRE(m.n_sinusoids == 8);
    for (double w : m.output_weights) REQUIRE(std::abs(w) <= 0.01);
    REQUIRE(std::abs(m.output_bias) <= 0.01);
    for (std::size_t i = 8; i < m.unit_count(); ++i) {
        REQUIRE(std::abs(m.hidden[i].input_weight - 1.0) <= 0.01);
        REQUIRE(std::abs(m.hidden[i].bias) <= 0.01);
        REQUIRE(m.hidden[i].kind != nd::ActivationKind::sinusoid);
    }
    // storage order: sinusoids, then linear, softplus, sigmoid blocks
    REQUIRE(m.hidden[8].kind == nd::ActivationKind::linear);
    REQUIRE(m.hidden[18].kind == nd::ActivationKind::softplus);
    REQUIRE(m.hidden[28].kind == nd::ActivationKind::sigmoid);
}

TEST_CASE("init rejects zero sinusoids") {
    REQUIRE_THROWS_AS(nd::NDModel::init(0, {1, 1, 1}, 0), nd::ConfigError);
}

TEST_CASE("zeroed output layer gives the zero function") {
    auto m = nd::NDModel::init(8, {3, 3, 3}, 7);
    for (auto& w : m.output_weights) w = 0.0;
    m.output_bias = 0.0;
    nd::Rng rng(1);
    for (int j = 0; j < 100; ++j) REQUIRE(m.forward(rng.uniform(-5.0, 5.0)) == 0.0);
}

TEST_CASE("single cosine unit hits known points") {
    auto m = nd::NDModel::init(1, nd::AugmentationSpec::none(), 0);
    m.output_weights[0] = 1.0;
    m.output_bias = 0.0;
    REQUIRE(m.forward(0.0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(m.forward(0.25) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("softplus and sigmoid stay finite and correct at extremes") {
    REQUIRE(nd::softplus(800.0) == Catch::Approx(800.0).epsilon(1e-12));
    REQUIRE(nd::softplus(-800.0) == Catch::Approx(0.0).margin(1e-300));
    REQUIRE(nd::softplus(0.0) == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    REQUIRE(nd::sigmoid(0.0) == 0.5);
    REQUIRE(nd::sigmoid(800.0) == 1.0);
    REQUIRE(nd::sigmoid(-800.0) == Catch::Approx(0.0).margin(1e-300));
}

TEST_CASE("decomposition sums to the forward output") {
    nd::Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        auto m = random_model(rng, 4 + rng.index(12), {2, 2, 2});
        for (int j = 0; j < 100; ++j) {
            double t = rng.uniform(-3.0, 3.0);
            double sum = 0.0;
            for (const auto& [label, contribution] : m.decompose(t)) sum += contribution;
            const double f = m.forward(t);
            REQUIRE(sum == Catch::Approx(f).epsilon(1e-12).margin(1e-12));
        }
    }
}

TEST_CASE("zero-amplitude unit contributes exactly zero") {
    nd::Rng rng(32);
    auto m = random_model(rng, 4, {1, 1, 1});
    m.output_weights[2] = 0.0;
    auto parts = m.decompose(0.37);
    REQUIRE(parts[2].second == 0.0);
}

TEST_CASE("component labels name the activation kinds") {
    auto m = nd::NDModel::init(2, {1, 1, 1}, 0);
    auto parts = m.decompose(0.1);
    REQUIRE(parts.size() == 6);
    REQUIRE(parts[0].first == "sinusoid_000");
    REQUIRE(parts[1].first == "sinusoid_001");
    REQUIRE(parts[2].first == "linear_000");
    REQUIRE(parts[3].first == "softplus_000");
    REQUIRE(parts[4].first == "sigmoid_000");
    REQUIRE(parts[5].first == "bias");
}

TEST_CASE("predict with identity preprocess equals forward") {
    nd::Rng rng(33);
    auto m = random_model(rng, 6, {1, 0, 0});
    m.preprocess = {};  // identity: offset 0, scale 1, no log
    std::vector<double> times{-0.5, 0.0, 0.3, 1.7};
    auto out = m.predict(times);
    for (std::size_t i = 0; i < times.size(); ++i) REQUIRE(out[i] == m.forward(times[i]));
}

TEST_CASE("predict exponentiates after unscaling for log-filtered models") {
    nd::Rng rng(34);
    auto m = random_model(rng, 4, nd::AugmentationSpec::none());
    m.preprocess.t_offset = 2.0;
    m.preprocess.t_scale = 3.0;
    m.preprocess.v_offset = 1.5;
    m.preprocess.v_scale = 0.25;
    m.preprocess.log_filter = true;
    double t_raw = 4.1;
    double expected = std::exp(m.forward((t_raw - 2.0) / 3.0) * 0.25 + 1.5);
    REQUIRE(m.predict({t_raw})[0] == Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("save then load reproduces the model bit for bit") {
    nd::Rng rng(35);
    auto path = std::filesystem::temp_directory_path() / "model_roundtrip.ndm";
    for (int rep = 0; rep < 5; ++rep) {
        auto m = random_model(rng, 3 + rng.index(10), {2, 2, 2});
        m.preprocess.t_offset = rng.uniform(-10.0, 10.0);
        m.preprocess.t_scale = rng.uniform(0.1, 10.0);
        m.preprocess.v_offset = rng.uniform(-10.0, 10.0);
        m.preprocess.v_scale = rng.uniform(0.1, 10.0);
        m.preprocess.log_filter = rng.index(2) == 1;
        m.save(path);
        auto back = nd::NDModel::load(path);
        REQUIRE(back == m);
        for (int j = 0; j < 100; ++j) {
            double t = rng.uniform(-20.0, 20.0);
            REQUIRE(back.predict({t})[0] == m.predict({t})[0]);
        }
    }
}

TEST_CASE("truncated and malformed model files are format errors") {
    auto dir = std::filesystem::temp_directory_path();
    auto m = nd::NDModel::init(4, {1, 1, 1}, 5);
    auto good = dir / "model_good.ndm";
    m.save(good);

    std::ifstream in(good);
    std::string all(std::istreambuf_iterator<char>(in), {});
    auto truncated = dir / "model_truncated.ndm";
    {
        std::ofstream out(truncated);
        out << all.substr(0, all.size() / 2);
    }
    REQUIRE_THROWS_AS(nd::NDModel::load(truncated), nd::FormatError);

    auto bad_version = dir / "model_badversion.ndm";
    {
        std::ofstream out(bad_version);
        out << "ndmodel v9\n" << all.substr(all.find('\n') + 1);
    }
    REQUIRE_THROWS_AS(nd::NDModel::load(bad_version), nd::FormatError);

    auto garbled = dir / "model_garbled.ndm";
    {
        std::ofstream out(garbled);
        out << "ndmodel v1\npreprocess 0 1 zz 1 0\n";
    }
    REQUIRE_THROWS_AS(nd::NDModel::load(garbled), nd::FormatError);

    REQUIRE_THROWS_AS(nd::NDModel::load(dir / "model_missing_zzz.ndm"), nd::IoError);
}

TEST_CASE("parameter vector round-trips through set_parameters") {
    nd::Rng rng(36);
    auto m = random_model(rng, 5, {1, 2, 0});
    auto p = m.parameters();
    REQUIRE(p.size() == m.parameter_count());
    auto copy = nd::NDModel::init(5, {1, 2, 0}, 0);
    copy.preprocess = m.preprocess;
    copy.set_parameters(p);
    REQUIRE(copy == m);
}
