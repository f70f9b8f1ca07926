#pragma once

#include <cstdint>

#include "spdh/endo.hpp"
#include "spdh/platform.hpp"

namespace spdh {

/// Public base of an exchange: the platform, a start element g and an
/// endomorphism. All orbit, action and protocol operations are relative to
/// one of these. The platform must outlive the pair.
struct BasePair {
    const Platform* platform = nullptr;
    Element g;
    EndoDescriptor endo;

    const Platform& p() const { return *platform; }
};

/// Point of the holomorph reachable from (g, phi): the accumulated product
/// together with the symbolic endomorphism power.
struct HolomorphPoint {
    Element a;
    uint64_t endo_power = 0;
};

/// (phi^{kq}(a_p) · a_q, k_p + k_q): the holomorph product restricted to
/// powers of a common base.
HolomorphPoint holomorph_mul(const BasePair& base, const HolomorphPoint& p,
                             const HolomorphPoint& q);

/// The x-th semidirect power phi^{x-1}(g)···phi(g)·g, computed with
/// square-and-multiply in O(log x) holomorph products. Requires x >= 1.
Element sd_pow(const BasePair& base, uint64_t x);

/// phi^i(a) · sd_pow(i); advances a by i positions along the orbit when a is
/// an orbit element. advance(base, 0, a) = a. O(log i).
Element advance(const BasePair& base, uint64_t i, const Element& a);

/// One orbit step phi(a)·g; equals advance(base, 1, a).
Element orbit_step(const BasePair& base, const Element& a);

} // namespace spdh
