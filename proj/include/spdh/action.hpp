#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spdh/orbit.hpp"

namespace spdh {

/// Element of Z_r in canonical form.
struct ResidueClass {
    uint64_t modulus = 1;
    uint64_t value = 0;

    static ResidueClass of(uint64_t v, uint64_t modulus);
    ResidueClass add(const ResidueClass& o) const;
    ResidueClass neg() const;
    ResidueClass sub(const ResidueClass& o) const;

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// A cycle element; offset (position relative to the anchor sd_pow(n)) is
/// carried when known and is itself a discrete-log answer, so it is never
/// computed eagerly.
struct CyclePoint {
    Element element;
    std::optional<uint64_t> offset;
};

/// The free transitive action of Z_r on the cycle: j acting on a cycle point
/// advances it j positions. Copyable; holds the base pair and orbit profile.
class CycleAction {
public:
    CycleAction(BasePair base, OrbitProfile profile);

    const BasePair& base() const { return base_; }
    const OrbitProfile& profile() const { return profile_; }
    uint64_t period() const { return profile_.period; }

    bool in_cycle(const Element& a) const;
    CyclePoint anchor() const;
    /// Wraps a, verifying cycle membership.
    CyclePoint point(const Element& a) const;
    CyclePoint act(const ResidueClass& j, const CyclePoint& c) const;

private:
    BasePair base_;
    OrbitProfile profile_;
};

struct ActionReport {
    bool passed = true;
    bool compat_exhaustive = false; // full triple loop (small r only)
    uint64_t checks = 0;
    std::vector<std::string> witnesses;
};

/// Exhaustively checks the four action axioms over Z_r x C: identity,
/// freeness, transitivity, and compatibility. Compatibility is checked for
/// every (k, c) against the generator, which covers all (j, k, c) by
/// induction; small r additionally runs the full triple loop.
ActionReport verify_action(const CycleAction& action);

/// Axiom driver over an arbitrary action callable (used for mutation tests).
ActionReport verify_action_fn(uint64_t period, std::span<const Element> cycle,
                              const std::function<Element(uint64_t, const Element&)>& act_fn,
                              uint64_t full_triple_limit = 64);

enum class GadlpMethod { Brute, Bsgs, HiddenShift };

/// The unique k with act(k, x) = y, by linear scan.
ResidueClass gadlp_brute(const CycleAction& action, const CyclePoint& x, const CyclePoint& y);

/// Baby-step giant-step: O(sqrt(r)) time and space.
ResidueClass gadlp_bsgs(const CycleAction& action, const CyclePoint& x, const CyclePoint& y);

ResidueClass gadlp_solve(const CycleAction& action, const CyclePoint& x, const CyclePoint& y,
                         GadlpMethod method);

/// A hidden-shift instance: f_a(v) = act(v, x), f_b(v) = act(v, y). Both are
/// injective and f_b(v) = f_a(v + k) for the discrete-log answer k.
struct HiddenShiftPair {
    uint64_t modulus = 1;
    std::function<Element(uint64_t)> f_a;
    std::function<Element(uint64_t)> f_b;
};

HiddenShiftPair build_hidden_shift(const CycleAction& action, const CyclePoint& x,
                                   const CyclePoint& y);

/// Classical collision solver: tabulate f_a over Z_r, scan f_b for the first
/// collision. Throws InputError when the functions hide no shift.
ResidueClass ahsp_collision_solve(const std::function<Element(uint64_t)>& f_a,
                                  const std::function<Element(uint64_t)>& f_b,
                                  uint64_t modulus);

/// Diffie--Hellman analogue solved through one discrete-log query:
/// with y = act(g, x) and z = act(h, x), returns act(g + h, x) = act(g, z).
CyclePoint gacdh_via_gadlp(const CycleAction& action, const CyclePoint& x, const CyclePoint& y,
                           const CyclePoint& z, GadlpMethod method = GadlpMethod::Bsgs);

} // namespace spdh
