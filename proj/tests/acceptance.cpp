// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each check pins its tolerance in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <unordered_map>

#include "fixtures.hpp"
#include "spdh/protocol.hpp"
#include "spdh/quantum.hpp"

using namespace spdh;
using namespace spdh::testing;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(std::string msg) { g_notes.push_back(std::move(msg)); }

struct Criterion {
    const char* label;
    bool (*run)();
};

bool expect(bool ok, const std::string& what) {
    if (!ok) note("FAILED: " + what);
    return ok;
}

// --- 1. protocol correctness -----------------------------------------------

bool protocol_correctness() {
    bool ok = true;
    for (const Fixture& f : {monogenic(3, 2, true), unipotent_z5(), m3_z101_inner(),
                             idempotent_cayley()}) {
        BasePair base = f.base();
        OrbitProfile profile = brent_profile(base);
        Rng rng(0xACC01);
        for (int i = 0; i < 100; ++i) {
            KeyPair alice = spdh_keygen(base, profile, rng);
            KeyPair bob = spdh_keygen(base, profile, rng);
            Element k_a = spdh_derive(base, alice, bob.public_value);
            Element k_b = spdh_derive(base, bob, alice.public_value);
            ok &= expect(k_a == k_b, f.name + ": K_A != K_B");
            ok &= expect(k_a == sd_pow(base, alice.secret + bob.secret),
                         f.name + ": K != sd_pow(x+y)");
        }
    }
    return ok;
}

// --- 2. structure of the orbit ---------------------------------------------

bool orbit_structure() {
    bool ok = true;
    std::vector<Fixture> fixtures = oracle_fixtures();
    fixtures.push_back(cyclic(64, 1));
    fixtures.push_back(monogenic(20, 30, true));
    for (const Fixture& f : fixtures) {
        const Platform& p = *f.platform;
        if (p.count() > 64) continue;
        for (uint64_t gi = 0; gi < p.count(); ++gi) {
            BasePair base = f.base();
            base.g = p.at(gi);
            OrbitProfile prof = brute_force_profile(base, p.count() + 2);
            const uint64_t n = prof.index, r = prof.period;

            // the first n+r-1 values are pairwise distinct and exhaust X
            std::set<std::vector<uint64_t>> seen;
            Element cur = base.g;
            for (uint64_t k = 1; k <= prof.total; ++k) {
                ok &= expect(seen.insert(cur.words).second,
                             f.name + ": duplicate below n+r");
                cur = orbit_step(base, cur);
            }
            ok &= expect(cur == prof.cycle_anchor, f.name + ": orbit does not wrap to s(n)");

            // s(n+x) = s(n+y) iff x = y (mod r), for x, y up to 3r
            std::vector<Element> s_from_n; // s(n+x), x in [0, 3r]
            Element e = sd_pow(base, n);
            for (uint64_t x = 0; x <= 3 * r; ++x) {
                s_from_n.push_back(e);
                e = orbit_step(base, e);
            }
            for (uint64_t x = 0; x <= 3 * r; ++x) {
                for (uint64_t y = x; y <= 3 * r; ++y) {
                    bool equal = s_from_n[x] == s_from_n[y];
                    bool congruent = (x % r) == (y % r);
                    if (equal != congruent) {
                        ok &= expect(false, f.name + ": congruence law breaks at (" +
                                                std::to_string(x) + "," + std::to_string(y) + ")");
                    }
                }
            }
        }
    }
    return ok;
}

// --- 3. action axioms --------------------------------------------------------

bool action_axioms() {
    bool ok = true;
    for (auto make : {+[] { return idempotent_cayley(); }, +[] { return monogenic(3, 2, true); },
                      +[] { return unipotent_z5(); }, +[] { return monogenic(5, 7); },
                      +[] { return cyclic(1024, 1); }, +[] { return cyclic(4096, 1); }}) {
        Fixture f = make();
        BasePair base = f.base();
        OrbitProfile prof = brent_profile(base);
        ActionReport report = verify_action(CycleAction(base, prof));
        ok &= expect(report.passed && report.witnesses.empty(),
                     f.name + ": action axioms failed");
    }

    // mutation: a corrupted action must produce a witness
    Fixture f = cyclic(12, 1);
    BasePair base = f.base();
    OrbitProfile prof = brent_profile(base);
    CycleAction action(base, prof);
    std::vector<Element> cycle;
    Element cur = prof.cycle_anchor;
    for (uint64_t i = 0; i < prof.period; ++i) {
        cycle.push_back(cur);
        cur = orbit_step(base, cur);
    }
    auto real_act = [&](uint64_t j, const Element& c) {
        return action.act(ResidueClass::of(j, prof.period), CyclePoint{c, std::nullopt}).element;
    };
    auto freeness_mutation = [&](uint64_t j, const Element& c) {
        return j == 0 ? c : real_act((j + 1) % prof.period, c);
    };
    auto compat_mutation = [&](uint64_t j, const Element& c) {
        uint64_t jj = j == 2 ? 3 : j == 3 ? 2 : j;
        return real_act(jj, c);
    };
    ActionReport m1 = verify_action_fn(prof.period, cycle, freeness_mutation);
    ActionReport m2 = verify_action_fn(prof.period, cycle, compat_mutation);
    ok &= expect(!m1.passed && !m1.witnesses.empty(), "freeness mutation not caught");
    ok &= expect(!m2.passed && !m2.witnesses.empty(), "compatibility mutation not caught");
    return ok;
}

// --- 4. oracle equivalences --------------------------------------------------

bool oracle_equivalences() {
    bool ok = true;

    // brent == brute force on 500 random enumerable instances
    Rng rng(0xACC04);
    for (int trial = 0; trial < 500; ++trial) {
        Fixture f = rng.below(3) == 0
                        ? cyclic(uint32_t(2 + rng.below(30)), uint32_t(1 + rng.below(6)),
                                 uint32_t(1 + rng.below(4)))
                        : monogenic(1 + rng.below(10), 1 + rng.below(10), rng.below(2) == 1,
                                    rng.below(4));
        BasePair base = f.base();
        base.g = base.p().at(rng.below(base.p().count()));
        OrbitProfile a = brute_force_profile(base, 8192);
        OrbitProfile b = brent_profile(base);
        ok &= expect(a.index == b.index && a.period == b.period &&
                         a.cycle_anchor == b.cycle_anchor,
                     f.name + ": brent/brute disagree");
    }

    // three gadlp routes on all cycle pairs, exhaustively up to r = 128
    for (auto make : {+[] { return idempotent_cayley(); }, +[] { return monogenic(3, 2, true); },
                      +[] { return unipotent_z5(); }, +[] { return monogenic(5, 7); },
                      +[] { return monogenic(7, 24, true); }, +[] { return cyclic(128, 1); }}) {
        Fixture f = make();
        BasePair base = f.base();
        OrbitProfile prof = brent_profile(base);
        CycleAction action(base, prof);
        const uint64_t r = prof.period;
        std::vector<Element> cycle;
        Element cur = prof.cycle_anchor;
        for (uint64_t i = 0; i < r; ++i) {
            cycle.push_back(cur);
            cur = orbit_step(base, cur);
        }
        for (uint64_t i = 0; i < r; ++i) {
            CyclePoint x{cycle[i], i};
            for (uint64_t j = 0; j < r; ++j) {
                CyclePoint y{cycle[j], j};
                uint64_t expected = (j + r - i) % r;
                uint64_t brute = gadlp_brute(action, x, y).value;
                uint64_t bsgs = gadlp_bsgs(action, x, y).value;
                uint64_t shift = gadlp_solve(action, x, y, GadlpMethod::HiddenShift).value;
                if (brute != expected || bsgs != expected || shift != expected) {
                    ok &= expect(false, f.name + ": route mismatch at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
                }
            }
        }
    }

    // r = 1024: enumeration oracle over all pairs; the solvers are tied to
    // the same oracle on anchored rows and a pseudorandom sample (a full
    // per-pair brute/hidden-shift sweep is O(r^3) at this size)
    {
        Fixture f = cyclic(1024, 1);
        BasePair base = f.base();
        OrbitProfile prof = brent_profile(base);
        CycleAction action(base, prof);
        const uint64_t r = prof.period;
        std::vector<Element> cycle;
        std::unordered_map<Element, uint64_t, ElementHash> index;
        Element cur = prof.cycle_anchor;
        for (uint64_t i = 0; i < r; ++i) {
            cycle.push_back(cur);
            index.emplace(cur, i);
            cur = orbit_step(base, cur);
        }
        // all pairs: the unique scan answer matches exponent arithmetic
        const ResidueClass one = ResidueClass::of(1, r);
        for (uint64_t i = 0; i < r; ++i) {
            CyclePoint walk{cycle[i], i};
            for (uint64_t k = 0; k < r; ++k) {
                uint64_t j = index.at(walk.element);
                if (j != (i + k) % r) {
                    ok &= expect(false, "cyclic(1024): scan diverges");
                    break;
                }
                walk = action.act(one, walk);
            }
        }
        Rng prng(0xACC14);
        for (int t = 0; t < 1024; ++t) {
            uint64_t i = t == 0 ? 0 : prng.below(r);
            uint64_t j = prng.below(r);
            CyclePoint x{cycle[i], i};
            CyclePoint y{cycle[j], j};
            uint64_t expected = (j + r - i) % r;
            ok &= expect(gadlp_bsgs(action, x, y).value == expected, "cyclic(1024): bsgs");
            if (t % 8 == 0) {
                ok &= expect(gadlp_brute(action, x, y).value == expected, "cyclic(1024): brute");
                ok &= expect(gadlp_solve(action, x, y, GadlpMethod::HiddenShift).value == expected,
                             "cyclic(1024): hidden shift");
            }
        }
    }
    return ok;
}

// --- 5. quantum period recovery ---------------------------------------------

bool quantum_period_recovery() {
    bool ok = true;
    const double bound_4pi2 = 4.0 / (std::numbers::pi * std::numbers::pi); // 0.4052847...
    for (auto make : {+[] { return monogenic(3, 2, true); }, +[] { return unipotent_z5(); },
                      +[] { return idempotent_cayley(); }, +[] { return monogenic(5, 7); },
                      +[] { return cyclic(7, 2); }}) {
        Fixture f = make();
        BasePair base = f.base();
        OrbitProfile prof = brent_profile(base);
        if (prof.index + prof.period > 32) {
            ok &= expect(false, f.name + ": fixture exceeds n+r <= 32");
            continue;
        }
        const uint64_t bound = prof.total + 1; // n + r
        QuantumRunConfig cfg;
        cfg.qubits = qubits_for_bound(bound);
        cfg.max_retries = 1;
        const uint64_t m = uint64_t(1) << cfg.qubits;

        // (a) soundness and (b) single-trial success rate over 500 seeded runs
        int successes = 0;
        for (uint64_t seed = 0; seed < 500; ++seed) {
            cfg.rng_seed = seed;
            PeriodRecovery rec = period_recovery_sim(base, cfg, bound);
            if (rec.period) {
                if (*rec.period != prof.period) {
                    ok &= expect(false, f.name + ": sim returned a wrong period");
                }
                ++successes;
            }
        }
        ok &= expect(successes >= 100, f.name + ": success rate " +
                                           std::to_string(successes) + "/500 < 0.2");

        // (c) analytic post-transform mass on the closest integers to jM/r,
        // for every cycle class; tolerance +0/-0.001 around 4/pi^2
        OrbitTabulation tab = tabulate_orbit(base, m);
        std::set<uint64_t> peaks;
        for (uint64_t j = 0; j < prof.period; ++j) {
            double target = double(j) * double(m) / double(prof.period);
            peaks.insert(uint64_t(std::llround(target)) % m);
        }
        for (size_t c = 0; c < tab.members.size(); ++c) {
            if (tab.members[c].size() <= 1) continue; // tail class
            AmplitudeVector v = collapsed_from_support(tab.members[c], m);
            dft_in_place(v);
            double mass = 0;
            for (uint64_t k : peaks) mass += std::norm(v.amp[k]);
            if (mass < bound_4pi2 - 1e-3) {
                ok &= expect(false, f.name + ": peak mass " + std::to_string(mass) +
                                        " below 4/pi^2 for class " + std::to_string(c));
            }
        }
    }
    return ok;
}

// --- 6. index recovery --------------------------------------------------------

bool index_recovery() {
    bool ok = true;
    Rng rng(0xACC06);
    for (int trial = 0; trial < 500; ++trial) {
        Fixture f = rng.below(3) == 0
                        ? cyclic(uint32_t(2 + rng.below(30)), uint32_t(1 + rng.below(6)))
                        : monogenic(1 + rng.below(12), 1 + rng.below(12), rng.below(2) == 1,
                                    rng.below(4));
        BasePair base = f.base();
        base.g = base.p().at(rng.below(base.p().count()));
        OrbitProfile prof = brute_force_profile(base, 8192);
        const uint64_t m = uint64_t(1) << qubits_for_bound(prof.total + 1);
        uint64_t probes = 0;
        uint64_t n = binary_search_index(base, 1, m, prof.period, &probes);
        ok &= expect(n == prof.index, f.name + ": index mismatch");
        uint64_t log2m = 0;
        while ((uint64_t(1) << log2m) < m) ++log2m;
        ok &= expect(probes <= log2m + 1, f.name + ": too many probes");
    }
    return ok;
}

// --- 7. end-to-end attack ------------------------------------------------------

bool end_to_end_attack() {
    bool ok = true;
    for (auto make : {+[] { return monogenic(3, 2, true); }, +[] { return unipotent_z5(); },
                      +[] { return idempotent_cayley(); }, +[] { return m3_z101_tail_small(); },
                      +[] { return gf4_frobenius(); }}) {
        Fixture f = make();
        BasePair base = f.base();
        OrbitProfile prof = brent_profile(base);
        Rng rng(0xACC07);
        int tail_plants = 0, cycle_plants = 0;
        for (int i = 0; i < 100; ++i) {
            uint64_t x = 1 + rng.below(prof.total);
            if (i == 0 && prof.index > 1) x = 1; // force one tail plant when one exists
            if (x < prof.index) {
                ++tail_plants;
            } else {
                ++cycle_plants;
            }
            SdlpInstance inst{f.platform, f.g, f.endo, sd_pow(base, x), prof.total, x};
            auto res = solve_sdlp(inst, SolveOptions{});
            bool good = res.has_value() && res->x == x && res->gadlp_queries <= 1;
            ok &= expect(good, f.name + ": exact recovery failed at x=" + std::to_string(x));
        }
        ok &= expect(cycle_plants > 0, f.name + ": no cycle plants");
        if (prof.index > 1) ok &= expect(tail_plants > 0, f.name + ": no tail plants");
    }

    // qsim-profiled attack with retries: at least 99/100
    {
        Fixture f = unipotent_z5();
        BasePair base = f.base();
        OrbitProfile prof = brent_profile(base);
        Rng rng(0xACC17);
        int good = 0;
        for (int i = 0; i < 100; ++i) {
            uint64_t x = 1 + rng.below(prof.total);
            SdlpInstance inst{f.platform, f.g, f.endo, sd_pow(base, x), prof.total, x};
            SolveOptions opts;
            opts.profile = ProfileMethod::Qsim;
            opts.retries = 20;
            opts.seed = uint64_t(i);
            auto res = solve_sdlp(inst, opts);
            if (res && res->x == x && res->gadlp_queries <= 1) ++good;
        }
        ok &= expect(good >= 99, "qsim attack succeeded only " + std::to_string(good) + "/100");
    }
    return ok;
}

// --- 8. transform numerics -----------------------------------------------------

bool dft_numerics() {
    bool ok = true;
    Rng rng(0xACC08);
    for (int trial = 0; trial < 1000; ++trial) {
        uint64_t m = uint64_t(1) << (1 + rng.below(10));
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
        if (std::abs(norm_l2(out) - 1.0) > 1e-9) {
            ok &= expect(false, "unitarity violated at trial " + std::to_string(trial));
        }
    }

    // exact-divisor peak law: r | M concentrates all mass on multiples of M/r
    for (auto [x0, r, m] : {std::tuple<uint64_t, uint64_t, uint64_t>{0, 4, 16},
                            {3, 4, 16},
                            {5, 8, 64},
                            {17, 32, 1024}}) {
        AmplitudeVector v = dft(collapsed_state(x0, r, m));
        double off_peak = 0, on_peak = 0;
        for (uint64_t k = 0; k < m; ++k) {
            if (k % (m / r) == 0) {
                on_peak += std::norm(v.amp[k]);
            } else {
                off_peak += std::norm(v.amp[k]);
            }
        }
        ok &= expect(off_peak <= 1e-9, "peak leakage above 1e-9");
        ok &= expect(std::abs(on_peak - 1.0) <= 1e-9, "peak mass not 1");
        // with full-length support the peaks are exactly uniform, any x0
        uint64_t s_r = (m - x0 + r - 1) / r;
        if (s_r == m / r) {
            for (uint64_t k = 0; k < m; k += m / r) {
                if (std::abs(std::norm(v.amp[k]) - 1.0 / double(r)) > 1e-9) {
                    ok &= expect(false, "exact-divisor peaks not uniform");
                }
            }
        }
    }
    return ok;
}

} // namespace

int main() {
    const Criterion criteria[] = {
        {"1. protocol correctness (100 seeded exchanges, 4 fixtures)", protocol_correctness},
        {"2. orbit structure (size n+r-1, congruence law, |G| <= 64)", orbit_structure},
        {"3. action axioms (exhaustive up to r = 4096, mutation witnesses)", action_axioms},
        {"4. oracle equivalences (brent/brute, gadlp routes)", oracle_equivalences},
        {"5. quantum period recovery (soundness, rate >= 0.2, mass >= 4/pi^2)",
         quantum_period_recovery},
        {"6. index recovery (500 instances, probe bound)", index_recovery},
        {"7. end-to-end attack (exact recovery, <= 1 query, qsim >= 99/100)", end_to_end_attack},
        {"8. transform numerics (unitarity 1e-9, exact-divisor peaks)", dft_numerics},
    };

    for (const Criterion& c : criteria) {
        g_notes.clear();
        auto start = std::chrono::steady_clock::now();
        bool passed = false;
        try {
            passed = c.run();
        } catch (const std::exception& e) {
            note(std::string("exception: ") + e.what());
        }
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
        std::printf("[%s] %-68s (%.2fs)\n", passed ? "PASS" : "FAIL", c.label, elapsed.count());
        for (size_t i = 0; i < g_notes.size() && i < 10; ++i) {
            std::printf("       %s\n", g_notes[i].c_str());
        }
        if (!passed) ++g_failures;
    }
    if (g_failures != 0) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
