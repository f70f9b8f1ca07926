#include "spdh/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "spdh/quantum.hpp"

namespace spdh {

OrbitProfile brute_force_profile(const BasePair& base, uint64_t cap) {
    base.p().require_same(base.g);
    std::unordered_map<Element, uint64_t, ElementHash> first_seen;
    Element cur = base.g;
    for (uint64_t k = 1; k <= cap; ++k) {
        auto [it, fresh] = first_seen.try_emplace(cur, k);
        if (!fresh) {
            uint64_t n = it->second;
            uint64_t r = k - n;
            return OrbitProfile{n, r, n + r - 1, sd_pow(base, n)};
        }
        cur = orbit_step(base, cur);
    }
    throw CapExceededError("orbit exceeds cap");
}

OrbitProfile brent_profile(const BasePair& base, uint64_t step_limit) {
    base.p().require_same(base.g);
    const uint64_t limit = step_limit == 0 ? UINT64_MAX : step_limit;
    uint64_t steps = 0;
    auto advance_checked = [&](const Element& e) {
        if (++steps > limit) throw CapExceededError("orbit exceeds cap");
        return orbit_step(base, e);
    };

    // power-of-two search for the cycle length
    uint64_t power = 1, lambda = 1;
    Element tortoise = base.g;
    Element hare = advance_checked(base.g);
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = advance_checked(hare);
        ++lambda;
    }

    // tail length: walk two cursors lambda apart
    Element ahead = base.g;
    for (uint64_t i = 0; i < lambda; ++i) ahead = advance_checked(ahead);
    Element behind = base.g;
    uint64_t mu = 0;
    while (behind != ahead) {
        behind = advance_checked(behind);
        ahead = advance_checked(ahead);
        ++mu;
    }

    uint64_t n = mu + 1; // sequence starts at exponent 1
    return OrbitProfile{n, lambda, n + lambda - 1, sd_pow(base, n)};
}

uint32_t qubits_for_bound(uint64_t orbit_bound) {
    if (orbit_bound == 0) throw InputError("orbit bound must be positive");
    if (orbit_bound > 2047) { // 2047^2 + 2047 is the largest fit under 2^22
        throw InputError("orbit bound too large for amplitude simulation");
    }
    const uint64_t need = orbit_bound * orbit_bound + orbit_bound;
    uint32_t l = 0;
    while ((uint64_t(1) << l) < need) ++l;
    return l;
}

OrbitTabulation tabulate_orbit(const BasePair& base, uint64_t m) {
    base.p().require_same(base.g);
    OrbitTabulation tab;
    tab.m = m;
    tab.class_of.resize(m);
    std::unordered_map<Element, uint32_t, ElementHash> ids;
    Element cur = base.p().identity();
    for (uint64_t k = 0; k < m; ++k) {
        if (k == 1) {
            cur = base.g;
        } else if (k >= 2) {
            cur = orbit_step(base, cur);
        }
        auto [it, fresh] = ids.try_emplace(cur, uint32_t(ids.size()));
        if (fresh) {
            tab.members.emplace_back();
            tab.representative.push_back(cur);
        }
        tab.class_of[k] = it->second;
        tab.members[it->second].push_back(k);
    }
    return tab;
}

namespace {

uint64_t gcd64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

PeriodRecovery period_recovery_sim(const BasePair& base, const QuantumRunConfig& cfg,
                                   uint64_t orbit_bound) {
    if (cfg.qubits == 0 || cfg.qubits > kMaxSimQubits) {
        throw InputError("qubit count out of simulation range");
    }
    if (orbit_bound == 0 || orbit_bound > 2047) {
        throw InputError("orbit bound out of simulation range");
    }
    const uint64_t m = uint64_t(1) << cfg.qubits;
    if (m < orbit_bound * orbit_bound + orbit_bound) {
        throw InputError("register too small: 2^l must reach bound^2 + bound");
    }

    const OrbitTabulation tab = tabulate_orbit(base, m);
    const Element s_m = sd_pow(base, m);

    auto verifies = [&](uint64_t d) {
        return d >= 1 && d <= orbit_bound && advance(base, d, s_m) == s_m;
    };
    // Any verified d is a multiple of the period, so the smallest verified
    // divisor of d is the period itself.
    auto minimize = [&](uint64_t d) {
        std::vector<uint64_t> divisors;
        for (uint64_t i = 1; i * i <= d; ++i) {
            if (d % i == 0) {
                divisors.push_back(i);
                divisors.push_back(d / i);
            }
        }
        std::sort(divisors.begin(), divisors.end());
        for (uint64_t v : divisors) {
            if (verifies(v)) return v;
        }
        return d;
    };

    PeriodRecovery out;
    std::set<uint64_t> pool;
    const Rng root(cfg.rng_seed);
    for (uint32_t trial = 0; trial < cfg.max_retries; ++trial) {
        Rng rng = root.fork(trial);

        // measure the second register: a uniform k and its class give the
        // exact |preimage| / M marginal
        uint64_t k0 = rng.below(m);
        uint32_t cls = tab.class_of[k0];
        const auto& support = tab.members[cls];

        AmplitudeVector state = collapsed_from_support(support, m);
        dft_in_place(state);
        uint64_t measured = sample_outcome(state, rng);

        PeriodTrial trace;
        trace.trial = trial;
        trace.cycle_class = support.size() > 1;
        trace.measured = measured;
        trace.candidates = convergent_denominators(measured, m, orbit_bound);

        for (uint64_t d : trace.candidates) {
            if (verifies(d)) {
                trace.verified = minimize(d);
                break;
            }
        }
        pool.insert(trace.candidates.begin(), trace.candidates.end());
        if (!trace.verified) {
            // combine with retained candidates: partial denominators r/d1,
            // r/d2 from different measurements recombine to r via the lcm
            for (uint64_t d : trace.candidates) {
                for (uint64_t e : pool) {
                    uint64_t g = gcd64(d, e);
                    uint64_t l = d / g * e;
                    if (l <= orbit_bound && verifies(l)) {
                        trace.verified = minimize(l);
                        break;
                    }
                }
                if (trace.verified) break;
            }
        }

        bool done = trace.verified.has_value();
        if (done) out.period = trace.verified;
        out.trials.push_back(std::move(trace));
        if (done) return out;
    }
    return out;
}

uint64_t binary_search_index(const BasePair& base, uint64_t start, uint64_t end,
                             uint64_t period, uint64_t* probes) {
    if (start > end) throw InputError("binary search needs start <= end");
    if (start == end) return start;
    uint64_t mid = start + (end - start) / 2;
    if (probes != nullptr) ++*probes;
    Element s_mid = sd_pow(base, mid);
    if (advance(base, period, s_mid) != s_mid) {
        return binary_search_index(base, mid + 1, end, period, probes);
    }
    return binary_search_index(base, start, mid, period, probes);
}

uint64_t binary_search_tail(const BasePair& base, const Element& target, uint64_t start,
                            uint64_t end, uint64_t period, uint64_t* probes) {
    if (start > end) throw InputError("binary search needs start <= end");
    if (start == end) return start;
    uint64_t mid = start + (end - start) / 2;
    if (probes != nullptr) ++*probes;
    Element shifted = advance(base, mid, target);
    if (advance(base, period, shifted) != shifted) {
        return binary_search_tail(base, target, mid + 1, end, period, probes);
    }
    return binary_search_tail(base, target, start, mid, period, probes);
}

} // namespace spdh
