#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spdh/holomorph.hpp"

namespace spdh {

/// Index n and period r of a base pair: the orbit {sd_pow(1), sd_pow(2), ...}
/// is a tail of n-1 elements followed by a cycle of r elements, n + r - 1
/// distinct values in total.
struct OrbitProfile {
    uint64_t index = 0;
    uint64_t period = 0;
    uint64_t total = 0;   // index + period - 1
    Element cycle_anchor; // sd_pow(index)
};

/// Ground-truth oracle: walk the orbit keeping every element until the first
/// repeat. Throws CapExceededError when no repeat shows up within cap steps.
OrbitProfile brute_force_profile(const BasePair& base, uint64_t cap);

/// Brent cycle detection on the orbit self-map: same (n, r) as the oracle in
/// O(n + r) multiplications and O(1) stored elements. step_limit = 0 walks
/// without a cap.
OrbitProfile brent_profile(const BasePair& base, uint64_t step_limit = 0);

constexpr uint32_t kMaxSimQubits = 22;

/// Smallest l with 2^l >= bound^2 + bound; throws when it exceeds
/// kMaxSimQubits.
uint32_t qubits_for_bound(uint64_t orbit_bound);

struct QuantumRunConfig {
    uint32_t qubits = 0;       // register length l, M = 2^l
    uint32_t max_retries = 20; // independent trials before giving up
    uint64_t rng_seed = 0;
};

/// First-occurrence classes of sd_pow over {0, ..., m-1}, with the k = 0 slot
/// holding the identity by convention.
struct OrbitTabulation {
    uint64_t m = 0;
    std::vector<uint32_t> class_of;               // class id per k
    std::vector<std::vector<uint64_t>> members;   // ascending k per class
    std::vector<Element> representative;          // element per class
};

OrbitTabulation tabulate_orbit(const BasePair& base, uint64_t m);

struct PeriodTrial {
    uint64_t trial = 0;
    bool cycle_class = false; // observed second-register class has size > 1
    uint64_t measured = 0;    // post-transform measurement outcome
    std::vector<uint64_t> candidates;
    std::optional<uint64_t> verified;
};

struct PeriodRecovery {
    std::optional<uint64_t> period;
    std::vector<PeriodTrial> trials;
};

/// Amplitude-level run of the period-finding procedure: tabulate sd_pow over
/// {0..M-1}, measure the second register by exact marginal sampling, Fourier
/// transform the collapsed first register, measure, and reconstruct period
/// candidates by continued fractions. Candidates are only returned after an
/// exact verification against the orbit, so any non-empty result equals the
/// true period. Retries pool candidate denominators and test their least
/// common multiples before giving up.
PeriodRecovery period_recovery_sim(const BasePair& base, const QuantumRunConfig& cfg,
                                   uint64_t orbit_bound);

/// Minimal n in [start, end] with advance(period, sd_pow(n)) = sd_pow(n);
/// the caller must guarantee start <= n <= end and that period is the true
/// period. Each probe costs one sd_pow plus one advance.
uint64_t binary_search_index(const BasePair& base, uint64_t start, uint64_t end,
                             uint64_t period, uint64_t* probes = nullptr);

/// Minimal t in [start, end] with advance(t, target) on the cycle; for a tail
/// element target = sd_pow(x) this yields t = n - x.
uint64_t binary_search_tail(const BasePair& base, const Element& target, uint64_t start,
                            uint64_t end, uint64_t period, uint64_t* probes = nullptr);

} // namespace spdh
