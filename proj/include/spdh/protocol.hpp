#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "spdh/action.hpp"
#include "spdh/orbit.hpp"

namespace spdh {

struct KeyPair {
    uint64_t secret = 0;  // exponent, also the private endomorphism power
    Element public_value; // sd_pow(secret)
};

/// Samples the secret uniformly from {1, ..., n+r-1} and computes the public
/// value.
KeyPair spdh_keygen(const BasePair& base, const OrbitProfile& profile, Rng& rng);

/// Key pair for an explicitly chosen secret (tests and replays).
KeyPair spdh_keypair(const BasePair& base, uint64_t secret);

/// phi^x(peer_public) · own_public: both sides compute the same
/// sd_pow(x + y).
Element spdh_derive(const BasePair& base, const KeyPair& own, const Element& peer_public);

/// Samples pairs for commutativity; exhaustive on small enumerable
/// platforms. Exchanges on commutative platforms leak the shared key as a
/// plain product, so the CLI warns.
bool probably_commutative(const Platform& p, uint64_t samples, Rng& rng);

/// A passive adversary's view of one exchange, plus optional planted secrets
/// in test mode. Serialized form is line oriented and round-trips byte for
/// byte.
struct Transcript {
    std::shared_ptr<const Platform> platform;
    Element g;
    std::optional<EndoDescriptor> endo;
    Element alice_public;
    Element bob_public;
    std::optional<std::pair<uint64_t, uint64_t>> planted;

    BasePair base() const { return BasePair{platform.get(), g, *endo}; }
};

std::string serialize_transcript(const Transcript& t);
Transcript parse_transcript(std::string_view text, const std::string& base_dir = {});

/// A discrete-log challenge: recover x from the base pair and
/// target = sd_pow(x), 1 <= x <= bound.
struct SdlpInstance {
    std::shared_ptr<const Platform> platform;
    Element g;
    std::optional<EndoDescriptor> endo;
    Element target;
    uint64_t bound = 0;
    std::optional<uint64_t> planted_x; // generator side only

    BasePair base() const { return BasePair{platform.get(), g, *endo}; }
};

std::string serialize_instance(const SdlpInstance& inst, bool include_planted);
SdlpInstance parse_instance(std::string_view text, const std::string& base_dir = {});

enum class ProfileMethod { Brute, Brent, Qsim };

struct SolveOptions {
    ProfileMethod profile = ProfileMethod::Brent;
    GadlpMethod gadlp = GadlpMethod::Bsgs;
    uint32_t retries = 20;          // qsim trials before giving up
    uint64_t seed = 0;              // qsim randomness
    std::optional<uint64_t> bound;  // orbit bound for brute/qsim; defaults to
                                    // the instance bound + 1
    std::ostream* trace = nullptr;  // per-trial qsim trace lines
};

struct SolveResult {
    uint64_t x = 0;
    uint64_t gadlp_queries = 0;
    bool tail_path = false;
    uint32_t qsim_trials = 0;
    OrbitProfile profile;
};

/// Recovers x: profile the orbit, test cycle membership of the target, then
/// either one discrete-log query (cycle) or a tail binary search. Returns
/// nullopt when qsim profiling fails after all retries.
std::optional<SolveResult> solve_sdlp(const SdlpInstance& inst, const SolveOptions& opts);

enum class GenMode { Protocol, Planted };

struct Generated {
    SdlpInstance instance;
    std::optional<Transcript> transcript; // protocol mode only
};

/// Protocol mode runs a full exchange and targets Alice's public value;
/// planted mode draws a single secret. step_limit caps the profiling walk
/// (0 = unlimited).
Generated gen_instance(std::shared_ptr<const Platform> platform, const Element& g,
                       const EndoDescriptor& endo, Rng& rng, GenMode mode,
                       bool planted_in_transcript = false, uint64_t step_limit = 0);

struct AttackResult {
    Element shared_key;
    SolveResult solve;
};

/// Solves the discrete log of Alice's public value and reconstructs the
/// shared key from Bob's.
std::optional<AttackResult> attack_transcript(const Transcript& t, const SolveOptions& opts);

} // namespace spdh
