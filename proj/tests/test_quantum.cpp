#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "spdh/quantum.hpp"
#include "spdh/errors.hpp"

using namespace spdh;

namespace {

double mass_at(const AmplitudeVector& v, uint64_t k) { return std::norm(v.amp[k]); }

// integers closest to the multiples jM/r, j = 0..r-1 (no ties occur for
// power-of-two M)
std::set<uint64_t> peak_set(uint64_t r, uint64_t m) {
    std::set<uint64_t> peaks;
    for (uint64_t j = 0; j < r; ++j) {
        double target = double(j) * double(m) / double(r);
        auto k = uint64_t(std::llround(target));
        peaks.insert(k % m);
    }
    return peaks;
}

} // namespace

TEST_SUITE("quantum") {

TEST_CASE("collapsed_state support and normalization") {
    SUBCASE("full support when r = 1") {
        AmplitudeVector v = collapsed_state(0, 1, 8);
        for (uint64_t k = 0; k < 8; ++k) CHECK(mass_at(v, k) == doctest::Approx(1.0 / 8));
    }
    SUBCASE("x0=3 r=4 M=16") {
        AmplitudeVector v = collapsed_state(3, 4, 16);
        std::set<uint64_t> support{3, 7, 11, 15};
        for (uint64_t k = 0; k < 16; ++k) {
            if (support.count(k)) {
                CHECK(v.amp[k].real() == doctest::Approx(0.5));
            } else {
                CHECK(mass_at(v, k) == 0.0);
            }
        }
    }
    SUBCASE("normalized for random parameters") {
        Rng rng(4);
        for (int trial = 0; trial < 1000; ++trial) {
            uint64_t m = uint64_t(1) << (3 + rng.below(8));
            uint64_t r = 1 + rng.below(m / 2);
            uint64_t x0 = rng.below(m);
            AmplitudeVector v = collapsed_state(x0, r, m);
            REQUIRE(norm_l2(v) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("empty support is rejected") {
        CHECK_THROWS_AS(collapsed_state(16, 4, 16), InputError);
        CHECK_THROWS_AS(collapsed_from_support({}, 16), InputError);
    }
}

TEST_CASE("dft basics") {
    SUBCASE("delta at zero becomes uniform") {
        AmplitudeVector v;
        v.amp.assign(16, {0, 0});
        v.amp[0] = {1, 0};
        dft_in_place(v);
        for (uint64_t k = 0; k < 16; ++k) {
            CHECK(v.amp[k].real() == doctest::Approx(0.25).epsilon(1e-12));
            CHECK(v.amp[k].imag() == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("uniform becomes delta at zero") {
        AmplitudeVector v;
        v.amp.assign(16, {0.25, 0});
        dft_in_place(v);
        CHECK(mass_at(v, 0) == doctest::Approx(1.0).epsilon(1e-12));
        for (uint64_t k = 1; k < 16; ++k) CHECK(mass_at(v, k) < 1e-18);
    }
    SUBCASE("non-power-of-two is rejected") {
        AmplitudeVector v;
        v.amp.assign(12, {0, 0});
        CHECK_THROWS_AS(dft_in_place(v), InputError);
    }
    SUBCASE("matches the direct transform on small sizes") {
        Rng rng(7);
        AmplitudeVector v;
        v.amp.resize(8);
        for (auto& c : v.amp) c = {rng.unit() - 0.5, rng.unit() - 0.5};
        AmplitudeVector out = dft(v);
        for (uint64_t k = 0; k < 8; ++k) {
            std::complex<double> acc{0, 0};
            for (uint64_t j = 0; j < 8; ++j) {
                double ang = 2.0 * std::numbers::pi * double(j * k % 8) / 8.0;
                acc += v.amp[j] * std::polar(1.0, ang);
            }
            acc /= std::sqrt(8.0);
            CHECK(std::abs(out.amp[k] - acc) < 1e-12);
        }
    }
}

TEST_CASE("dft unitarity on 1000 random vectors") {
    Rng rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        uint64_t m = uint64_t(1) << (1 + rng.below(9));
        AmplitudeVector v;
        v.amp.resize(m);
        double norm = 0;
        for (auto& c : v.amp) {
            c = {rng.unit() - 0.5, rng.unit() - 0.5};
            norm += std::norm(c);
        }
        norm = std::sqrt(norm);
        for (auto& c : v.amp) c /= norm;
        AmplitudeVector out = dft(v);
        REQUIRE(std::abs(norm_l2(out) - 1.0) < 1e-9);
    }
}

TEST_CASE("exact divisor law: mass exactly on multiples of M/r") {
    for (uint64_t x0 : {uint64_t(0), uint64_t(2), uint64_t(3)}) {
        AmplitudeVector v = dft(collapsed_state(x0, 4, 16));
        double on_peaks = 0;
        for (uint64_t k : {0, 4, 8, 12}) {
            CHECK(mass_at(v, k) == doctest::Approx(0.25).epsilon(1e-9));
            on_peaks += mass_at(v, k);
        }
        CHECK(on_peaks == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("sampling") {
    SUBCASE("delta vector always yields its basis index") {
        AmplitudeVector v;
        v.amp.assign(16, {0, 0});
        v.amp[7] = {1, 0};
        Rng rng(3);
        for (int i = 0; i < 100; ++i) CHECK(sample_outcome(v, rng) == 7);
    }
    SUBCASE("uniform frequencies within 3 sigma") {
        AmplitudeVector v;
        v.amp.assign(4, {0.5, 0});
        Rng rng(5);
        std::array<uint64_t, 4> counts{};
        const int draws = 10000;
        for (int i = 0; i < draws; ++i) ++counts[sample_outcome(v, rng)];
        const double sigma = std::sqrt(draws * 0.25 * 0.75);
        for (uint64_t c : counts) {
            CHECK(std::abs(double(c) - draws * 0.25) <= 3 * sigma);
        }
    }
    SUBCASE("exact divisor outcomes are multiples of M/r") {
        AmplitudeVector v = dft(collapsed_state(5, 8, 64));
        Rng rng(9);
        for (int i = 0; i < 500; ++i) CHECK(sample_outcome(v, rng) % 8 == 0);
    }
}

TEST_CASE("continued fraction convergents") {
    SUBCASE("a = 0 gives denominator 1") {
        CHECK(convergent_denominators(0, 16, 16) == std::vector<uint64_t>{1});
    }
    SUBCASE("5/16 expands to denominators 1, 3, 16") {
        CHECK(convergent_denominators(5, 16, 16) == std::vector<uint64_t>{1, 3, 16});
        CHECK(convergent_denominators(5, 16, 10) == std::vector<uint64_t>{1, 3});
    }
    SUBCASE("convergents are coprime with strictly increasing denominators") {
        Rng rng(21);
        for (int trial = 0; trial < 2000; ++trial) {
            uint64_t m = uint64_t(1) << (2 + rng.below(14));
            uint64_t a = rng.below(m);
            uint64_t last = 0;
            for (const Convergent& c : convergents(a, m)) {
                REQUIRE(std::gcd(c.numerator, c.denominator) == 1);
                REQUIRE(c.denominator > last);
                REQUIRE(c.denominator <= m);
                last = c.denominator;
            }
        }
    }
    SUBCASE("planted peaks recover the period for coprime j") {
        const uint64_t m = 1 << 10;
        for (uint64_t r = 2; r <= 32; ++r) {
            for (uint64_t j = 1; j < r; ++j) {
                if (std::gcd(j, r) != 1) continue;
                auto a = uint64_t(std::llround(double(j) * double(m) / double(r)));
                auto denoms = convergent_denominators(a % m, m, r);
                bool found = false;
                for (uint64_t d : denoms) found = found || d == r;
                REQUIRE(found);
            }
        }
    }
    SUBCASE("best approximations all appear (completeness)") {
        // |a/m - c/d| < 1/(2d^2) in exact integers: |a*d - c*m| * 2d < m
        const uint64_t m = 1 << 10;
        Rng rng(31);
        for (int trial = 0; trial < 300; ++trial) {
            uint64_t a = rng.below(m);
            auto denoms = convergent_denominators(a, m, m);
            auto limit = uint64_t(std::sqrt(double(m) / 2));
            for (uint64_t d = 1; d <= limit; ++d) {
                for (uint64_t c = a * d / m; c <= a * d / m + 1; ++c) {
                    uint64_t ad = a * d, cm = c * m;
                    uint64_t diff = ad > cm ? ad - cm : cm - ad;
                    if (diff * 2 * d < m) {
                        uint64_t reduced = d / std::gcd(c == 0 ? d : c, d);
                        bool found = false;
                        for (uint64_t q : denoms) found = found || q == reduced;
                        REQUIRE(found);
                    }
                }
            }
        }
    }
}

TEST_CASE("measurement concentration: peak mass at least 4/pi^2") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        uint64_t r = 1 + rng.below(32);
        uint64_t need = r * r + r;
        uint64_t m = 1;
        while (m < need) m <<= 1;
        uint64_t x0 = rng.below(r + 1); // first occurrence of a cycle value is <= n <= bound
        AmplitudeVector v = dft(collapsed_state(x0, r, m));
        double mass = 0;
        for (uint64_t k : peak_set(r, m)) mass += mass_at(v, k);
        REQUIRE(mass >= 4.0 / (std::numbers::pi * std::numbers::pi) - 1e-3);
    }
}

} // TEST_SUITE
