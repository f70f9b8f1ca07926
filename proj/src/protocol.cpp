#include "spdh/protocol.hpp"

#include <ostream>
#include <sstream>
#include <vector>

namespace spdh {

KeyPair spdh_keygen(const BasePair& base, const OrbitProfile& profile, Rng& rng) {
    uint64_t x = 1 + rng.below(profile.total);
    return spdh_keypair(base, x);
}

KeyPair spdh_keypair(const BasePair& base, uint64_t secret) {
    if (secret == 0) throw InputError("secret exponent must be positive");
    return KeyPair{secret, sd_pow(base, secret)};
}

Element spdh_derive(const BasePair& base, const KeyPair& own, const Element& peer_public) {
    base.p().require_same(peer_public);
    return advance(base, own.secret, peer_public);
}

bool probably_commutative(const Platform& p, uint64_t samples, Rng& rng) {
    if (p.enumerable() && p.count() <= 512) {
        const uint64_t n = p.count();
        for (uint64_t i = 0; i < n; ++i) {
            Element a = p.at(i);
            for (uint64_t j = i + 1; j < n; ++j) {
                Element b = p.at(j);
                if (p.mul(a, b) != p.mul(b, a)) return false;
            }
        }
        return true;
    }
    for (uint64_t s = 0; s < samples; ++s) {
        Element a = random_element(p, rng);
        Element b = random_element(p, rng);
        if (p.mul(a, b) != p.mul(b, a)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// File formats

namespace {

struct KvLines {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::optional<std::string> planted;

    const std::string* find(const std::string& key) const {
        const std::string* out = nullptr;
        for (const auto& [k, v] : pairs) {
            if (k == key) out = &v;
        }
        return out;
    }

    const std::string& require(const std::string& key) const {
        const std::string* v = find(key);
        if (v == nullptr) throw InputError("missing line: " + key + "=");
        return *v;
    }
};

KvLines split_lines(std::string_view text) {
    KvLines out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                              : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.starts_with("#planted ")) {
            out.planted = std::string(line.substr(9));
            continue;
        }
        if (line.front() == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw InputError("malformed line (expected key=value)");
        out.pairs.emplace_back(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    }
    return out;
}

uint64_t parse_decimal(std::string_view s, const char* what) {
    if (s.empty()) throw InputError(std::string("missing integer for ") + what);
    uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw InputError(std::string("bad integer for ") + what);
        v = v * 10 + uint64_t(c - '0');
    }
    return v;
}

std::pair<std::shared_ptr<const Platform>, EndoDescriptor>
load_base(const KvLines& kv, const std::string& base_dir) {
    LoadedPlatform loaded = parse_platform_config(kv.require("platform"), base_dir);
    const std::string* endo_line = kv.find("endo");
    std::string endo_cfg;
    if (endo_line != nullptr && *endo_line != "file") {
        endo_cfg = *endo_line;
    } else if (loaded.endo_config) {
        endo_cfg = *loaded.endo_config;
    } else {
        throw InputError("missing line: endo=");
    }
    EndoDescriptor endo = parse_endo(*loaded.platform, endo_cfg);
    return {std::move(loaded.platform), std::move(endo)};
}

std::optional<uint64_t> planted_field(const std::string& planted, std::string_view key) {
    std::istringstream in(planted);
    std::string tok;
    while (in >> tok) {
        if (std::string_view(tok).starts_with(key)) {
            return parse_decimal(std::string_view(tok).substr(key.size()), "planted value");
        }
    }
    return std::nullopt;
}

} // namespace

std::string serialize_transcript(const Transcript& t) {
    const Platform& p = *t.platform;
    std::ostringstream os;
    os << "format=spdh-v1\n";
    os << "platform=" << p.config() << '\n';
    os << "g=" << to_hex(p.encode(t.g)) << '\n';
    os << "endo=" << format_endo(p, *t.endo) << '\n';
    os << "A=" << to_hex(p.encode(t.alice_public)) << '\n';
    os << "B=" << to_hex(p.encode(t.bob_public)) << '\n';
    if (t.planted) {
        os << "#planted x=" << t.planted->first << " y=" << t.planted->second << '\n';
    }
    return os.str();
}

Transcript parse_transcript(std::string_view text, const std::string& base_dir) {
    KvLines kv = split_lines(text);
    if (kv.require("format") != "spdh-v1") throw InputError("unsupported transcript format");
    auto [platform, endo] = load_base(kv, base_dir);
    Transcript t;
    t.g = platform->decode(parse_hex(kv.require("g")));
    t.alice_public = platform->decode(parse_hex(kv.require("A")));
    t.bob_public = platform->decode(parse_hex(kv.require("B")));
    t.platform = std::move(platform);
    t.endo = std::move(endo);
    if (kv.planted) {
        auto x = planted_field(*kv.planted, "x=");
        auto y = planted_field(*kv.planted, "y=");
        if (!x || !y) throw InputError("planted section needs x= and y=");
        t.planted = {*x, *y};
    }
    return t;
}

std::string serialize_instance(const SdlpInstance& inst, bool include_planted) {
    const Platform& p = *inst.platform;
    std::ostringstream os;
    os << "format=spdh-sdlp-v1\n";
    os << "platform=" << p.config() << '\n';
    os << "g=" << to_hex(p.encode(inst.g)) << '\n';
    os << "endo=" << format_endo(p, *inst.endo) << '\n';
    os << "target=" << to_hex(p.encode(inst.target)) << '\n';
    os << "bound=" << inst.bound << '\n';
    if (include_planted && inst.planted_x) {
        os << "#planted x=" << *inst.planted_x << '\n';
    }
    return os.str();
}

SdlpInstance parse_instance(std::string_view text, const std::string& base_dir) {
    KvLines kv = split_lines(text);
    if (kv.require("format") != "spdh-sdlp-v1") throw InputError("unsupported instance format");
    auto [platform, endo] = load_base(kv, base_dir);
    SdlpInstance inst;
    inst.g = platform->decode(parse_hex(kv.require("g")));
    inst.target = platform->decode(parse_hex(kv.require("target")));
    inst.bound = parse_decimal(kv.require("bound"), "bound");
    inst.platform = std::move(platform);
    inst.endo = std::move(endo);
    if (kv.planted) inst.planted_x = planted_field(*kv.planted, "x=");
    return inst;
}

// ---------------------------------------------------------------------------
// Solvers

namespace {

void emit_trace(std::ostream* trace, const PeriodRecovery& rec) {
    if (trace == nullptr) return;
    for (const PeriodTrial& t : rec.trials) {
        *trace << "trial=" << t.trial << " observed=" << (t.cycle_class ? "cycle" : "tail")
               << " measured=" << t.measured << " candidates=";
        for (size_t i = 0; i < t.candidates.size(); ++i) {
            if (i) *trace << ',';
            *trace << t.candidates[i];
        }
        *trace << " result=";
        if (t.verified) {
            *trace << *t.verified;
        } else {
            *trace << "fail";
        }
        *trace << '\n';
    }
}

} // namespace

std::optional<SolveResult> solve_sdlp(const SdlpInstance& inst, const SolveOptions& opts) {
    const BasePair base = inst.base();
    base.p().require_same(inst.target);

    SolveResult result;
    if (opts.profile == ProfileMethod::Qsim) {
        uint64_t bound = 0;
        if (opts.bound) {
            bound = *opts.bound;
        } else if (inst.bound > 0) {
            bound = inst.bound + 1; // instance bound is n+r-1; the sim wants n+r
        } else {
            throw InputError("qsim profiling needs an orbit bound");
        }
        QuantumRunConfig cfg;
        cfg.qubits = qubits_for_bound(bound);
        cfg.max_retries = opts.retries;
        cfg.rng_seed = opts.seed;
        PeriodRecovery rec = period_recovery_sim(base, cfg, bound);
        emit_trace(opts.trace, rec);
        result.qsim_trials = uint32_t(rec.trials.size());
        if (!rec.period) return std::nullopt;
        uint64_t r = *rec.period;
        const uint64_t m = uint64_t(1) << cfg.qubits;
        uint64_t n = binary_search_index(base, 1, m, r);
        // guard the search preconditions: n must be the minimal cycle entry
        Element s_n = sd_pow(base, n);
        if (advance(base, r, s_n) != s_n) throw Error("index search postcondition failed");
        if (n > 1) {
            Element s_prev = sd_pow(base, n - 1);
            if (advance(base, r, s_prev) == s_prev) throw Error("index search postcondition failed");
        }
        result.profile = OrbitProfile{n, r, n + r - 1, std::move(s_n)};
    } else if (opts.profile == ProfileMethod::Brute) {
        uint64_t bound = opts.bound.value_or(inst.bound);
        if (bound == 0) throw InputError("brute profiling needs an orbit bound");
        result.profile = brute_force_profile(base, bound + 1);
    } else {
        result.profile = brent_profile(base);
    }

    const uint64_t n = result.profile.index;
    const uint64_t r = result.profile.period;
    if (advance(base, r, inst.target) == inst.target) {
        // cycle case: one discrete-log query against the anchor
        CycleAction action(base, result.profile);
        ResidueClass delta = gadlp_solve(action, action.anchor(),
                                         CyclePoint{inst.target, std::nullopt}, opts.gadlp);
        result.gadlp_queries = 1;
        result.x = n + delta.value;
    } else {
        result.tail_path = true;
        uint64_t t = binary_search_tail(base, inst.target, 1, n, r);
        result.x = n - t;
    }
    if (sd_pow(base, result.x) != inst.target) {
        throw InputError("target is not a power of the base pair");
    }
    return result;
}

Generated gen_instance(std::shared_ptr<const Platform> platform, const Element& g,
                       const EndoDescriptor& endo, Rng& rng, GenMode mode,
                       bool planted_in_transcript, uint64_t step_limit) {
    BasePair base{platform.get(), g, endo};
    OrbitProfile profile = brent_profile(base, step_limit);

    Generated out;
    out.instance.platform = platform;
    out.instance.g = g;
    out.instance.endo = endo;
    out.instance.bound = profile.total;

    if (mode == GenMode::Planted) {
        uint64_t x = 1 + rng.below(profile.total);
        out.instance.planted_x = x;
        out.instance.target = sd_pow(base, x);
        return out;
    }

    KeyPair alice = spdh_keygen(base, profile, rng);
    KeyPair bob = spdh_keygen(base, profile, rng);
    out.instance.planted_x = alice.secret;
    out.instance.target = alice.public_value;

    Transcript t;
    t.platform = std::move(platform);
    t.g = g;
    t.endo = endo;
    t.alice_public = alice.public_value;
    t.bob_public = bob.public_value;
    if (planted_in_transcript) t.planted = {alice.secret, bob.secret};
    out.transcript = std::move(t);
    return out;
}

std::optional<AttackResult> attack_transcript(const Transcript& t, const SolveOptions& opts) {
    SdlpInstance inst;
    inst.platform = t.platform;
    inst.g = t.g;
    inst.endo = t.endo;
    inst.target = t.alice_public;
    inst.bound = 0; // the adversary does not know the orbit size
    auto solved = solve_sdlp(inst, opts);
    if (!solved) return std::nullopt;
    BasePair base = t.base();
    AttackResult out{advance(base, solved->x, t.bob_public), std::move(*solved)};
    return out;
}

} // namespace spdh
