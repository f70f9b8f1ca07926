#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spdh/holomorph.hpp"

namespace spdh::testing {

struct Fixture {
    std::string name;
    std::shared_ptr<const Platform> platform;
    std::optional<EndoDescriptor> endo;
    Element g;
    uint64_t known_index = 0;  // planted by construction, 0 = unknown
    uint64_t known_period = 0;

    BasePair base() const { return BasePair{platform.get(), g, *endo}; }
};

/// Monogenic monoid {1, a, ..., a^(index+period-1)} with the designed orbit
/// shape for g = a under the identity endomorphism; an optional absorbing
/// zero pads the order. endo_exp builds the table endo a -> a^endo_exp.
Fixture monogenic(uint64_t index, uint64_t period, bool with_zero = false,
                  uint64_t endo_exp = 1);

/// Cyclic group of the given order written multiplicatively as a table, with
/// the multiplication-by-c endomorphism.
Fixture cyclic(uint32_t order, uint32_t endo_mult, uint32_t gen = 1);

Fixture unipotent_z5();      // n=1, r=5
Fixture idempotent_cayley(); // n=1, r=1
Fixture idempotent_matrix(); // n=1, r=1
Fixture m3_z101_inner();     // conjugation by a 3-cycle, n=1, r=150
Fixture m3_z101_tail_small(); // n=2, r=4
Fixture m3_z101_tail_big();   // n=2, r=100
Fixture gf4_frobenius();      // n=1, r=6

/// O(x) left fold oracle, independent of the square-and-multiply path.
Element naive_sd_pow(const BasePair& base, uint64_t x);

/// Small enumerable fixtures for exhaustive oracle sweeps.
std::vector<Fixture> oracle_fixtures();

} // namespace spdh::testing
