#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "spdh/rng.hpp"

namespace spdh {

/// State of one register over basis {|0>, ..., |M-1>}, M a power of two.
struct AmplitudeVector {
    std::vector<std::complex<double>> amp;

    size_t size() const { return amp.size(); }
};

/// Uniform superposition over {x0 + j*step < m}; the state left in the first
/// register after the second register collapses onto a cycle value.
AmplitudeVector collapsed_state(uint64_t x0, uint64_t step, uint64_t m);

/// Uniform superposition over an arbitrary support set (handles classes that
/// pick up the k = 0 convention slot).
AmplitudeVector collapsed_from_support(std::span<const uint64_t> support, uint64_t m);

/// out[k] = (1/sqrt(M)) * sum_j v[j] exp(2*pi*i*j*k/M). Unitary; length must
/// be a power of two.
void dft_in_place(AmplitudeVector& v);
AmplitudeVector dft(AmplitudeVector v);

double norm_l2(const AmplitudeVector& v);

/// Born-rule measurement: k with probability |v[k]|^2.
uint64_t sample_outcome(const AmplitudeVector& v, Rng& rng);

struct Convergent {
    uint64_t numerator = 0;
    uint64_t denominator = 1;
};

/// Continued-fraction convergents of a/m, lowest terms, strictly increasing
/// denominators. Requires 0 <= a < m.
std::vector<Convergent> convergents(uint64_t a, uint64_t m);

/// Denominators of the convergents of a/m that are <= bound, ascending.
std::vector<uint64_t> convergent_denominators(uint64_t a, uint64_t m, uint64_t bound);

} // namespace spdh
