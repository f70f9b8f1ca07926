#include "spdh/holomorph.hpp"

#include <bit>

namespace spdh {

HolomorphPoint holomorph_mul(const BasePair& base, const HolomorphPoint& p,
                             const HolomorphPoint& q) {
    const Platform& plat = base.p();
    return HolomorphPoint{plat.mul(apply_endo(plat, base.endo, q.endo_power, p.a), q.a),
                          p.endo_power + q.endo_power};
}

Element sd_pow(const BasePair& base, uint64_t x) {
    if (x == 0) throw InputError("sd_pow requires a positive exponent");
    base.p().require_same(base.g);
    const HolomorphPoint unit{base.g, 1};
    HolomorphPoint acc = unit;
    int top = 63 - std::countl_zero(x);
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = holomorph_mul(base, acc, acc);
        if (x >> bit & 1) acc = holomorph_mul(base, acc, unit);
    }
    return acc.a;
}

Element advance(const BasePair& base, uint64_t i, const Element& a) {
    if (i == 0) return a;
    const Platform& plat = base.p();
    return plat.mul(apply_endo(plat, base.endo, i, a), sd_pow(base, i));
}

Element orbit_step(const BasePair& base, const Element& a) {
    const Platform& plat = base.p();
    return plat.mul(apply_endo(plat, base.endo, 1, a), base.g);
}

} // namespace spdh
