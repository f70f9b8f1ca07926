// Command-line surface for the spdh toolkit: key exchange, orbit profiling,
// discrete-log solvers and the end-to-end transcript attack.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "spdh/protocol.hpp"

namespace {

using namespace spdh;

struct BaseArgs {
    std::string platform_cfg;
    std::string endo_cfg;
    std::string g_hex;
};

void add_base_options(CLI::App* cmd, BaseArgs& args, bool need_g = true) {
    cmd->add_option("--platform", args.platform_cfg, "platform config string")->required();
    cmd->add_option("--endo", args.endo_cfg,
                    "endomorphism descriptor (defaults to one embedded in the platform config)");
    auto* g = cmd->add_option("--g", args.g_hex, "base element, hex payload");
    if (need_g) g->required();
}

struct LoadedBase {
    std::shared_ptr<const Platform> platform;
    std::optional<EndoDescriptor> endo;
    std::optional<Element> g;

    BasePair base() const { return BasePair{platform.get(), *g, *endo}; }
};

LoadedBase load_base(const BaseArgs& args) {
    LoadedBase out;
    LoadedPlatform loaded = parse_platform_config(args.platform_cfg);
    out.platform = std::move(loaded.platform);
    std::string endo_cfg = args.endo_cfg;
    if (endo_cfg.empty() || endo_cfg == "file") {
        if (!loaded.endo_config) throw InputError("no endomorphism given; pass --endo");
        endo_cfg = *loaded.endo_config;
    }
    out.endo = parse_endo(*out.platform, endo_cfg);
    if (!args.g_hex.empty()) out.g = out.platform->decode(parse_hex(args.g_hex));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

std::string dir_of(const std::string& path) {
    return std::filesystem::path(path).parent_path().string();
}

std::string hex_of(const Platform& p, const Element& e) { return to_hex(p.encode(e)); }

OrbitProfile parse_profile_file(const Platform& p, const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    OrbitProfile profile;
    bool have_n = false, have_r = false, have_anchor = false;
    while (std::getline(in, line)) {
        if (line.starts_with("n=")) {
            profile.index = std::stoull(line.substr(2));
            have_n = true;
        } else if (line.starts_with("r=")) {
            profile.period = std::stoull(line.substr(2));
            have_r = true;
        } else if (line.starts_with("anchor=")) {
            profile.cycle_anchor = p.decode(parse_hex(line.substr(7)));
            have_anchor = true;
        }
    }
    if (!have_n || !have_r || !have_anchor) {
        throw InputError("profile file needs n=, r= and anchor= lines");
    }
    profile.total = profile.index + profile.period - 1;
    return profile;
}

std::string format_profile(const Platform& p, const OrbitProfile& profile) {
    std::ostringstream os;
    os << "n=" << profile.index << "\nr=" << profile.period << "\ntotal=" << profile.total
       << "\nanchor=" << hex_of(p, profile.cycle_anchor) << '\n';
    return os.str();
}

ProfileMethod parse_profile_method(const std::string& s) {
    if (s == "brute") return ProfileMethod::Brute;
    if (s == "brent") return ProfileMethod::Brent;
    if (s == "qsim") return ProfileMethod::Qsim;
    throw InputError("unknown profile method: " + s);
}

GadlpMethod parse_gadlp_method(const std::string& s) {
    if (s == "brute") return GadlpMethod::Brute;
    if (s == "bsgs") return GadlpMethod::Bsgs;
    if (s == "hidden-shift") return GadlpMethod::HiddenShift;
    throw InputError("unknown gadlp method: " + s);
}

void warn_if_commutative(const Platform& p, uint64_t seed) {
    Rng rng(seed ^ 0x77a5f1ull);
    if (probably_commutative(p, 64, rng)) {
        std::cerr << "warning: platform looks commutative; A*B equals the shared key\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"semidirect product key exchange and discrete-log toolkit"};
    app.require_subcommand(1);

    // ---- platform validate
    auto* platform_cmd = app.add_subcommand("platform", "platform utilities");
    platform_cmd->require_subcommand(1);
    auto* validate = platform_cmd->add_subcommand("validate", "check semigroup and endo laws");
    BaseArgs validate_args;
    add_base_options(validate, validate_args, /*need_g=*/false);
    uint64_t validate_samples = 1000;
    uint64_t validate_seed = 0;
    validate->add_option("--samples", validate_samples, "random triples when not exhaustive");
    validate->add_option("--seed", validate_seed, "sampling seed");
    validate->callback([&] {
        LoadedBase lb = load_base(validate_args);
        Rng rng(validate_seed);
        ValidationReport report =
            validate_platform(*lb.platform, lb.endo ? &*lb.endo : nullptr, validate_samples, rng);
        std::cout << "mode=" << (report.exhaustive ? "exhaustive" : "sampled")
                  << " checks=" << report.checks << '\n';
        for (const auto& f : report.failures) std::cout << "failure: " << f << '\n';
        std::cout << (report.passed ? "PASS" : "FAIL") << '\n';
        if (!report.passed) throw Error("validation failed");
    });

    // ---- orbit profile
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit index/period recovery");
    orbit_cmd->require_subcommand(1);
    auto* profile_cmd = orbit_cmd->add_subcommand("profile", "recover the index and period");
    BaseArgs profile_args;
    add_base_options(profile_cmd, profile_args);
    std::string profile_method = "brent";
    uint64_t profile_cap = 0, profile_bound = 0, profile_seed = 0;
    uint32_t profile_retries = 20;
    std::string profile_out;
    profile_cmd->add_option("--method", profile_method, "brute|brent|qsim");
    profile_cmd->add_option("--cap", profile_cap, "step cap for brute/brent walks");
    profile_cmd->add_option("--bound", profile_bound,
                            "orbit bound N (brute cap, and qsim register M = 2^l >= N^2+N)");
    profile_cmd->add_option("--seed", profile_seed, "qsim seed");
    profile_cmd->add_option("--retries", profile_retries, "qsim retries");
    profile_cmd->add_option("--out", profile_out, "write profile to file");
    profile_cmd->callback([&] {
        LoadedBase lb = load_base(profile_args);
        BasePair base = lb.base();
        OrbitProfile profile;
        if (profile_method == "brute") {
            uint64_t cap = profile_cap != 0 ? profile_cap
                           : profile_bound != 0 ? profile_bound + 1
                                                : 0;
            if (cap == 0) throw InputError("brute profiling needs --bound or --cap");
            profile = brute_force_profile(base, cap);
        } else if (profile_method == "brent") {
            profile = brent_profile(base, profile_cap);
        } else if (profile_method == "qsim") {
            if (profile_bound == 0) throw InputError("qsim profiling needs --bound");
            QuantumRunConfig cfg;
            cfg.qubits = qubits_for_bound(profile_bound);
            cfg.max_retries = profile_retries;
            cfg.rng_seed = profile_seed;
            PeriodRecovery rec = period_recovery_sim(base, cfg, profile_bound);
            for (const PeriodTrial& t : rec.trials) {
                std::cout << "trial=" << t.trial << " observed="
                          << (t.cycle_class ? "cycle" : "tail") << " measured=" << t.measured
                          << " candidates=";
                for (size_t i = 0; i < t.candidates.size(); ++i) {
                    if (i) std::cout << ',';
                    std::cout << t.candidates[i];
                }
                std::cout << " result=" << (t.verified ? std::to_string(*t.verified) : "fail")
                          << '\n';
            }
            if (!rec.period) {
                std::cout << "result=fail\n";
                throw CLI::RuntimeError(1);
            }
            uint64_t r = *rec.period;
            uint64_t m = uint64_t(1) << cfg.qubits;
            uint64_t n = binary_search_index(base, 1, m, r);
            profile = OrbitProfile{n, r, n + r - 1, sd_pow(base, n)};
        } else {
            throw InputError("unknown profile method: " + profile_method);
        }
        std::string text = format_profile(*lb.platform, profile);
        std::cout << text;
        if (!profile_out.empty()) write_file(profile_out, text);
    });

    // ---- gadlp solve
    auto* gadlp_cmd = app.add_subcommand("gadlp", "group-action discrete log");
    gadlp_cmd->require_subcommand(1);
    auto* gadlp_solve_cmd = gadlp_cmd->add_subcommand("solve", "find k with act(k, x) = y");
    BaseArgs gadlp_args;
    add_base_options(gadlp_solve_cmd, gadlp_args);
    std::string gadlp_x_hex, gadlp_y_hex, gadlp_method = "bsgs", gadlp_profile_file;
    gadlp_solve_cmd->add_option("--x", gadlp_x_hex, "cycle element, hex payload")->required();
    gadlp_solve_cmd->add_option("--y", gadlp_y_hex, "cycle element, hex payload")->required();
    gadlp_solve_cmd->add_option("--method", gadlp_method, "brute|bsgs|hidden-shift");
    gadlp_solve_cmd->add_option("--profile", gadlp_profile_file, "orbit profile file");
    gadlp_solve_cmd->callback([&] {
        LoadedBase lb = load_base(gadlp_args);
        BasePair base = lb.base();
        OrbitProfile profile = gadlp_profile_file.empty()
                                   ? brent_profile(base)
                                   : parse_profile_file(*lb.platform, gadlp_profile_file);
        CycleAction action(base, profile);
        CyclePoint x = action.point(lb.platform->decode(parse_hex(gadlp_x_hex)));
        CyclePoint y = action.point(lb.platform->decode(parse_hex(gadlp_y_hex)));
        ResidueClass k = gadlp_solve(action, x, y, parse_gadlp_method(gadlp_method));
        std::cout << "delta=" << k.value << "\nmodulus=" << k.modulus << '\n';
    });

    // ---- action verify
    auto* action_cmd = app.add_subcommand("action", "cycle group action");
    action_cmd->require_subcommand(1);
    auto* verify_cmd = action_cmd->add_subcommand("verify", "check the action axioms");
    BaseArgs verify_args;
    add_base_options(verify_cmd, verify_args);
    std::string verify_profile_file;
    verify_cmd->add_option("--profile", verify_profile_file, "orbit profile file");
    verify_cmd->callback([&] {
        LoadedBase lb = load_base(verify_args);
        BasePair base = lb.base();
        OrbitProfile profile = verify_profile_file.empty()
                                   ? brent_profile(base)
                                   : parse_profile_file(*lb.platform, verify_profile_file);
        ActionReport report = verify_action(CycleAction(base, profile));
        std::cout << "r=" << profile.period << " checks=" << report.checks
                  << " compat=" << (report.compat_exhaustive ? "full" : "generator") << '\n';
        for (const auto& w : report.witnesses) std::cout << "witness: " << w << '\n';
        std::cout << (report.passed ? "PASS" : "FAIL") << '\n';
        if (!report.passed) throw Error("action verification failed");
    });

    // ---- keygen
    auto* keygen_cmd = app.add_subcommand("keygen", "sample a key pair");
    BaseArgs keygen_args;
    add_base_options(keygen_cmd, keygen_args);
    uint64_t keygen_seed = 0;
    uint64_t keygen_secret = 0;
    keygen_cmd->add_option("--seed", keygen_seed, "sampling seed");
    keygen_cmd->add_option("--secret", keygen_secret, "use this secret instead of sampling");
    keygen_cmd->callback([&] {
        LoadedBase lb = load_base(keygen_args);
        BasePair base = lb.base();
        warn_if_commutative(*lb.platform, keygen_seed);
        KeyPair kp;
        if (keygen_secret != 0) {
            kp = spdh_keypair(base, keygen_secret);
        } else {
            Rng rng(keygen_seed);
            kp = spdh_keygen(base, brent_profile(base), rng);
        }
        std::cout << "x=" << kp.secret << "\nA=" << hex_of(*lb.platform, kp.public_value) << '\n';
    });

    // ---- derive
    auto* derive_cmd = app.add_subcommand("derive", "derive the shared key");
    BaseArgs derive_args;
    add_base_options(derive_cmd, derive_args);
    uint64_t derive_secret = 0;
    std::string derive_peer_hex;
    derive_cmd->add_option("--secret", derive_secret, "own secret exponent")->required();
    derive_cmd->add_option("--peer", derive_peer_hex, "peer public value, hex")->required();
    derive_cmd->callback([&] {
        LoadedBase lb = load_base(derive_args);
        BasePair base = lb.base();
        warn_if_commutative(*lb.platform, derive_secret);
        KeyPair kp = spdh_keypair(base, derive_secret);
        Element peer = lb.platform->decode(parse_hex(derive_peer_hex));
        Element key = spdh_derive(base, kp, peer);
        std::cout << "K=" << hex_of(*lb.platform, key) << '\n';
    });

    // ---- gen-instance
    auto* gen_cmd = app.add_subcommand("gen-instance", "generate a discrete-log instance");
    BaseArgs gen_args;
    add_base_options(gen_cmd, gen_args);
    std::string gen_mode = "planted", gen_out, gen_transcript_out;
    uint64_t gen_seed = 0, gen_cap = 0;
    bool gen_planted = false;
    gen_cmd->add_option("--mode", gen_mode, "protocol|planted");
    gen_cmd->add_option("--seed", gen_seed, "sampling seed");
    gen_cmd->add_option("--cap", gen_cap, "orbit walk cap");
    gen_cmd->add_option("--out", gen_out, "instance file")->required();
    gen_cmd->add_option("--transcript-out", gen_transcript_out, "transcript file (protocol mode)");
    gen_cmd->add_flag("--planted", gen_planted, "record planted secrets in outputs (test mode)");
    gen_cmd->callback([&] {
        LoadedBase lb = load_base(gen_args);
        Rng rng(gen_seed);
        GenMode mode;
        if (gen_mode == "protocol") {
            mode = GenMode::Protocol;
        } else if (gen_mode == "planted") {
            mode = GenMode::Planted;
        } else {
            throw InputError("unknown mode: " + gen_mode);
        }
        Generated gen = gen_instance(lb.platform, *lb.g, *lb.endo, rng, mode, gen_planted, gen_cap);
        write_file(gen_out, serialize_instance(gen.instance, gen_planted));
        if (gen.transcript && !gen_transcript_out.empty()) {
            write_file(gen_transcript_out, serialize_transcript(*gen.transcript));
        }
        std::cout << "bound=" << gen.instance.bound << "\ninstance=" << gen_out << '\n';
    });

    // ---- solve
    auto* solve_cmd = app.add_subcommand("solve", "solve a discrete-log instance");
    std::string solve_instance_file, solve_profile_method = "brent", solve_gadlp_method = "bsgs";
    uint64_t solve_seed = 0, solve_bound = 0;
    uint32_t solve_retries = 20;
    solve_cmd->add_option("--instance", solve_instance_file, "instance file")->required();
    solve_cmd->add_option("--profile-method", solve_profile_method, "brute|brent|qsim");
    solve_cmd->add_option("--gadlp-method", solve_gadlp_method, "brute|bsgs|hidden-shift");
    solve_cmd->add_option("--seed", solve_seed, "qsim seed");
    solve_cmd->add_option("--bound", solve_bound, "orbit bound override");
    solve_cmd->add_option("--retries", solve_retries, "qsim retries");
    solve_cmd->callback([&] {
        SdlpInstance inst =
            parse_instance(read_file(solve_instance_file), dir_of(solve_instance_file));
        SolveOptions opts;
        opts.profile = parse_profile_method(solve_profile_method);
        opts.gadlp = parse_gadlp_method(solve_gadlp_method);
        opts.retries = solve_retries;
        opts.seed = solve_seed;
        if (solve_bound != 0) opts.bound = solve_bound;
        opts.trace = &std::cout;
        auto result = solve_sdlp(inst, opts);
        if (!result) {
            std::cout << "result=fail\n";
            throw CLI::RuntimeError(1);
        }
        std::cout << "x=" << result->x << "\nn=" << result->profile.index
                  << "\nr=" << result->profile.period
                  << "\ngadlp_queries=" << result->gadlp_queries << '\n';
    });

    // ---- attack
    auto* attack_cmd = app.add_subcommand("attack", "recover the shared key from a transcript");
    std::string attack_file, attack_profile_method = "brent", attack_gadlp_method = "bsgs";
    uint64_t attack_seed = 0, attack_bound = 0;
    uint32_t attack_retries = 20;
    attack_cmd->add_option("--transcript", attack_file, "transcript file")->required();
    attack_cmd->add_option("--profile-method", attack_profile_method, "brute|brent|qsim");
    attack_cmd->add_option("--gadlp-method", attack_gadlp_method, "brute|bsgs|hidden-shift");
    attack_cmd->add_option("--seed", attack_seed, "qsim seed");
    attack_cmd->add_option("--bound", attack_bound, "orbit bound (required for brute/qsim)");
    attack_cmd->add_option("--retries", attack_retries, "qsim retries");
    attack_cmd->callback([&] {
        Transcript t = parse_transcript(read_file(attack_file), dir_of(attack_file));
        SolveOptions opts;
        opts.profile = parse_profile_method(attack_profile_method);
        opts.gadlp = parse_gadlp_method(attack_gadlp_method);
        opts.retries = attack_retries;
        opts.seed = attack_seed;
        if (attack_bound != 0) opts.bound = attack_bound;
        auto result = attack_transcript(t, opts);
        if (!result) {
            std::cout << "result=fail\n";
            throw CLI::RuntimeError(1);
        }
        std::cout << "K=" << hex_of(*t.platform, result->shared_key)
                  << "\nx=" << result->solve.x << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::RuntimeError& e) {
        return e.get_exit_code(); // solver reported fail
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
