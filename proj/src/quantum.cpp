#include "spdh/quantum.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "spdh/errors.hpp"

namespace spdh {

namespace {

void require_power_of_two(uint64_t m) {
    if (m == 0 || !std::has_single_bit(m)) {
        throw InputError("register length must be a power of two");
    }
}

} // namespace

AmplitudeVector collapsed_state(uint64_t x0, uint64_t step, uint64_t m) {
    require_power_of_two(m);
    if (step == 0) throw InputError("collapsed_state requires step >= 1");
    if (x0 >= m) throw InputError("collapsed_state requires x0 < M");
    uint64_t support = (m - x0 + step - 1) / step;
    AmplitudeVector v;
    v.amp.assign(m, {0.0, 0.0});
    const double a = 1.0 / std::sqrt(double(support));
    for (uint64_t k = x0; k < m; k += step) v.amp[k] = {a, 0.0};
    return v;
}

AmplitudeVector collapsed_from_support(std::span<const uint64_t> support, uint64_t m) {
    require_power_of_two(m);
    if (support.empty()) throw InputError("collapsed state needs non-empty support");
    AmplitudeVector v;
    v.amp.assign(m, {0.0, 0.0});
    const double a = 1.0 / std::sqrt(double(support.size()));
    for (uint64_t k : support) {
        if (k >= m) throw InputError("support index out of range");
        v.amp[k] = {a, 0.0};
    }
    return v;
}

void dft_in_place(AmplitudeVector& v) {
    const size_t m = v.size();
    require_power_of_two(m);
    auto& a = v.amp;

    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < m; ++i) {
        size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // radix-2 butterflies, positive-exponent kernel
    for (size_t len = 2; len <= m; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / double(len);
        const std::complex<double> wl = std::polar(1.0, ang);
        for (size_t i = 0; i < m; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> t = w * a[i + j + len / 2];
                a[i + j] = u + t;
                a[i + j + len / 2] = u - t;
                w *= wl;
            }
        }
    }

    const double scale = 1.0 / std::sqrt(double(m));
    for (auto& c : a) c *= scale;
}

AmplitudeVector dft(AmplitudeVector v) {
    dft_in_place(v);
    return v;
}

double norm_l2(const AmplitudeVector& v) {
    double acc = 0.0;
    for (const auto& c : v.amp) acc += std::norm(c);
    return std::sqrt(acc);
}

uint64_t sample_outcome(const AmplitudeVector& v, Rng& rng) {
    const double u = rng.unit();
    double cum = 0.0;
    for (size_t k = 0; k < v.size(); ++k) {
        cum += std::norm(v.amp[k]);
        if (u < cum) return k;
    }
    return v.size() - 1; // rounding slack lands on the last outcome
}

std::vector<Convergent> convergents(uint64_t a, uint64_t m) {
    if (m == 0 || a >= m) throw InputError("convergents require 0 <= a < m");
    std::vector<Convergent> out;
    uint64_t p_prev = 1, q_prev = 0; // p_{-1}/q_{-1}
    uint64_t p_cur = 0, q_cur = 1;   // a0 = 0 since a < m
    out.push_back({p_cur, q_cur});
    uint64_t num = a, den = m;
    while (num != 0) {
        uint64_t term = den / num;
        uint64_t rem = den % num;
        uint64_t p_next = term * p_cur + p_prev;
        uint64_t q_next = term * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        if (q_cur == out.back().denominator) {
            out.back() = {p_cur, q_cur}; // a1 = 1 repeats denominator 1
        } else {
            out.push_back({p_cur, q_cur});
        }
        den = num;
        num = rem;
    }
    return out;
}

std::vector<uint64_t> convergent_denominators(uint64_t a, uint64_t m, uint64_t bound) {
    std::vector<uint64_t> out;
    for (const Convergent& c : convergents(a, m)) {
        if (c.denominator > bound) break;
        out.push_back(c.denominator);
    }
    return out;
}

} // namespace spdh
