#include <cmath>

#include "doctest.h"
#include "wiretap/channel.hpp"
#include "wiretap/errors.hpp"

using namespace wiretap;

TEST_CASE("snr conversion: 0, 10 and -10 dB") {
    CHECK(snr_db_to_variance(0.0) == doctest::Approx(1.0));
    CHECK(snr_db_to_variance(10.0) == doctest::Approx(0.1));
    CHECK(snr_db_to_variance(-10.0) == doctest::Approx(10.0));
}

TEST_CASE("bob channel: vanishing noise returns the input") {
    RngStream rng(7);
    Matrix x(4, 2);
    for (double& v : x.storage()) v = rng.gaussian();
    const Matrix y = bob_channel(x, 1e-30, rng);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::fabs(y.storage()[i] - x.storage()[i]) < 1e-10);
}

TEST_CASE("bob channel: sample mean and variance match the law of large numbers") {
    RngStream rng(1234);
    Matrix x(100000, 1);
    const Matrix y = bob_channel(x, 1.0, rng);
    double mean = 0.0;
    for (double v : y.storage()) mean += v;
    mean /= static_cast<double>(y.size());
    double var = 0.0;
    for (double v : y.storage()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(y.size() - 1);
    CHECK(std::fabs(mean) < 0.02);
    CHECK(std::fabs(var - 1.0) < 0.03);
}

TEST_CASE("channels: same seed gives identical outputs") {
    Matrix x(8, 3, 0.25);
    RngStream a(99), b(99);
    const Matrix ya = bob_channel(x, 0.5, a);
    const Matrix yb = bob_channel(x, 0.5, b);
    CHECK(ya.storage() == yb.storage());
}

TEST_CASE("channels: reject non-positive variance") {
    Matrix x(1, 1);
    RngStream rng(1);
    CHECK_THROWS_AS(bob_channel(x, 0.0, rng), ParamError);
    CHECK_THROWS_AS(eve_channel(x, -1.0, rng), ParamError);
}

TEST_CASE("eve channel: composed variance adds the stages") {
    RngStream rng(555);
    Matrix x(100000, 1);
    const Matrix y = bob_channel(x, 1.0, rng);
    const Matrix z = eve_channel(y, 1.0, rng);
    double mean = 0.0;
    for (double v : z.storage()) mean += v;
    mean /= static_cast<double>(z.size());
    double var = 0.0;
    for (double v : z.storage()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(z.size() - 1);
    CHECK(std::fabs(var - 2.0) < 0.05);
}

TEST_CASE("eve channel: vanishing extra noise returns bob's output") {
    RngStream rng(8);
    Matrix x(4, 2, 1.0);
    const Matrix y = bob_channel(x, 0.3, rng);
    const Matrix z = eve_channel(y, 1e-30, rng);
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(std::fabs(z.storage()[i] - y.storage()[i]) < 1e-10);
}

TEST_CASE("degradedness: eve's total noise variance dominates bob's") {
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        RngStream rng(seed);
        Matrix x(100000, 1);
        const Matrix y = bob_channel(x, 0.4, rng);
        const Matrix z = eve_channel(y, 0.7, rng);
        auto var_of = [](const Matrix& m) {
            double mean = 0.0;
            for (double v : m.storage()) mean += v;
            mean /= static_cast<double>(m.size());
            double var = 0.0;
            for (double v : m.storage()) var += (v - mean) * (v - mean);
            return var / static_cast<double>(m.size() - 1);
        };
        const double vy = var_of(y);  // Var(Y - X), x is zero
        const double vz = var_of(z);  // Var(Z - X)
        // 3-sigma band for a sample variance of n gaussians: sigma^2 sqrt(2/n)
        const double band_y = 3.0 * 0.4 * std::sqrt(2.0 / 100000.0);
        const double band_z = 3.0 * 1.1 * std::sqrt(2.0 / 100000.0);
        CHECK(std::fabs(vy - 0.4) < band_y);
        CHECK(std::fabs(vz - 1.1) < band_z);
        CHECK(vz > vy);
    }
}

TEST_CASE("noise stages are statistically independent") {
    RngStream rng(4321);
    Matrix x(100000, 1);
    const Matrix y = bob_channel(x, 1.0, rng);
    const Matrix z = eve_channel(y, 1.0, rng);
    // correlation between N_B = y and N_E = z - y
    double mean_b = 0.0, mean_e = 0.0;
    const auto n = static_cast<double>(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        mean_b += y.storage()[i];
        mean_e += z.storage()[i] - y.storage()[i];
    }
    mean_b /= n;
    mean_e /= n;
    double cov = 0.0, var_b = 0.0, var_e = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double db = y.storage()[i] - mean_b;
        const double de = (z.storage()[i] - y.storage()[i]) - mean_e;
        cov += db * de;
        var_b += db * db;
        var_e += de * de;
    }
    CHECK(std::fabs(cov / std::sqrt(var_b * var_e)) < 0.01);
}

TEST_CASE("split streams are reproducible and order-independent") {
    RngStream parent(2718);
    parent.next_u64();  // consuming the parent must not shift children
    RngStream childA = parent.split(4);
    RngStream childB = RngStream(2718).split(4);
    for (int i = 0; i < 16; ++i) CHECK(childA.next_u64() == childB.next_u64());
}
