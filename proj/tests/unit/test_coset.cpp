#include <cmath>
#include <vector>

#include "doctest.h"
#include "wiretap/coset.hpp"
#include "wiretap/errors.hpp"

using namespace wiretap;

namespace {

ClusterAssignment four_by_four() {
    ClusterAssignment a;
    a.labels = {0, 0, 1, 1, 2, 2, 3, 3, 0, 0, 1, 1, 2, 2, 3, 3};
    a.cluster_count = 4;
    a.cluster_size = 4;
    a.centers = Matrix(4, 2);
    // centers ordered so message labels differ from raw cluster ids
    a.centers(0, 0) = 2.0;
    a.centers(1, 0) = -1.0;
    a.centers(2, 0) = 0.5;
    a.centers(3, 0) = -3.0;
    return a;
}

}  // namespace

TEST_CASE("coset: message labels follow the center ordering") {
    const CosetCode code = make_coset_code(four_by_four());
    // centers sorted by first coordinate: cluster 3 (-3), 1 (-1), 2 (0.5), 0 (2)
    CHECK(code.cluster_of_message == std::vector<int>{3, 1, 2, 0});
    CHECK(code.message_of_cluster == std::vector<int>{3, 1, 2, 0});
    CHECK(code.secure_message_count() == 4);
    CHECK(code.symbols_per_message() == 4);
}

TEST_CASE("coset: center ties fall back to the second coordinate") {
    ClusterAssignment a;
    a.labels = {0, 0, 1, 1};
    a.cluster_count = 2;
    a.cluster_size = 2;
    a.centers = Matrix(2, 2);
    a.centers(0, 0) = 1.0;
    a.centers(0, 1) = 5.0;
    a.centers(1, 0) = 1.0;
    a.centers(1, 1) = -5.0;
    const CosetCode code = make_coset_code(a);
    CHECK(code.cluster_of_message == std::vector<int>{1, 0});
}

TEST_CASE("coset: singleton clusters give a deterministic permutation") {
    ClusterAssignment a;
    a.labels = {0, 1, 2, 3};
    a.cluster_count = 4;
    a.cluster_size = 1;
    a.centers = Matrix(4, 1);
    for (std::size_t i = 0; i < 4; ++i) a.centers(i, 0) = static_cast<double>(i);
    const CosetCode code = make_coset_code(a);

    RngStream rng(1);
    for (int m = 0; m < 4; ++m) {
        CHECK(encode_secure(code, m, rng) == m);  // centers already sorted
        CHECK(decode_secure(code, m) == m);
    }
}

TEST_CASE("coset: within-cluster draw is uniform") {
    const CosetCode code = make_coset_code(four_by_four());
    RngStream rng(99);
    for (int m = 0; m < 4; ++m) {
        std::vector<long> counts(16, 0);
        const long draws = 100000;
        for (long i = 0; i < draws; ++i) counts[static_cast<std::size_t>(encode_secure(code, m, rng))] += 1;
        for (int sym = 0; sym < 16; ++sym) {
            const double freq = static_cast<double>(counts[static_cast<std::size_t>(sym)]) / draws;
            if (decode_secure(code, sym) == m) {
                CHECK(std::fabs(freq - 0.25) < 0.01);
            } else {
                CHECK(counts[static_cast<std::size_t>(sym)] == 0);
            }
        }
    }
}

TEST_CASE("coset: seeded encoding reproduces the symbol sequence") {
    const CosetCode code = make_coset_code(four_by_four());
    RngStream a(5), b(5);
    for (int i = 0; i < 200; ++i) {
        const int m = i % 4;
        CHECK(encode_secure(code, m, a) == encode_secure(code, m, b));
    }
}

TEST_CASE("coset: decode is the cluster lookup for all symbols") {
    const ClusterAssignment a = four_by_four();
    const CosetCode code = make_coset_code(a);
    for (int sym = 0; sym < 16; ++sym) {
        const int msg = decode_secure(code, sym);
        CHECK(code.cluster_of_message[static_cast<std::size_t>(msg)] ==
              a.labels[static_cast<std::size_t>(sym)]);
    }
    CHECK_THROWS_AS(decode_secure(code, 16), ParamError);
    CHECK_THROWS_AS(decode_secure(code, -1), ParamError);
    RngStream rng(3);
    CHECK_THROWS_AS(encode_secure(code, 4, rng), ParamError);
}

TEST_CASE("coset: noiseless round trip always recovers the message") {
    const CosetCode code = make_coset_code(four_by_four());
    RngStream rng(77);
    for (int i = 0; i < 1000; ++i) {
        const int m = i % 4;
        CHECK(decode_secure(code, encode_secure(code, m, rng)) == m);
    }
}

TEST_CASE("coset: message errors never exceed symbol errors") {
    // decoding through any confusion pattern: a correct symbol implies a
    // correct message, so the message error rate is a coarsening
    const CosetCode code = make_coset_code(four_by_four());
    RngStream rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix confusion(16, 16);
        for (std::size_t s = 0; s < 16; ++s) {
            double sum = 0.0;
            for (std::size_t d = 0; d < 16; ++d) {
                confusion(s, d) = rng.uniform();
                sum += confusion(s, d);
            }
            for (std::size_t d = 0; d < 16; ++d) confusion(s, d) /= sum;
        }
        double symbol_err = 0.0, message_err = 0.0;
        for (std::size_t s = 0; s < 16; ++s) {
            for (std::size_t d = 0; d < 16; ++d) {
                if (d != s) symbol_err += confusion(s, d) / 16.0;
                if (decode_secure(code, static_cast<int>(d)) != decode_secure(code, static_cast<int>(s)))
                    message_err += confusion(s, d) / 16.0;
            }
        }
        CHECK(message_err <= symbol_err + 1e-12);
    }
}

TEST_CASE("coset: rate accounting") {
    const CosetCode code = make_coset_code(four_by_four());
    CHECK(secure_rate_bits_per_use(code, 2) == doctest::Approx(1.0));        // log2(4)/2
    CHECK(unsecured_rate_bits_per_use(16, 2) == doctest::Approx(2.0));       // log2(16)/2
    CHECK(secure_rate_bits_per_use(code, 32) == doctest::Approx(0.0625));    // log2(4)/32
}
