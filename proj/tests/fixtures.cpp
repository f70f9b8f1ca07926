#include "fixtures.hpp"

#include <numeric>

namespace spdh::testing {

Fixture monogenic(uint64_t index, uint64_t period, bool with_zero, uint64_t endo_exp) {
    const uint64_t top = index + period - 1; // a^1 .. a^top
    const uint32_t n = uint32_t(1 + top + (with_zero ? 1 : 0));
    const uint32_t zero = n - 1;

    auto reduce = [&](uint64_t e) -> uint64_t {
        if (e <= top) return e;
        return index + (e - index) % period;
    };
    // element i in [1, top] is a^i; 0 is the identity; optional absorbing zero
    std::vector<uint32_t> table(size_t(n) * n);
    for (uint32_t a = 0; a < n; ++a) {
        for (uint32_t b = 0; b < n; ++b) {
            uint32_t out;
            if (with_zero && (a == zero || b == zero)) {
                out = zero;
            } else if (a == 0) {
                out = b;
            } else if (b == 0) {
                out = a;
            } else {
                out = uint32_t(reduce(uint64_t(a) + b));
            }
            table[size_t(a) * n + b] = out;
        }
    }
    auto platform = CayleyPlatform::create(n, 0, std::move(table));

    std::vector<uint32_t> endo(n);
    endo[0] = 0;
    for (uint32_t i = 1; i <= top; ++i) endo[i] = uint32_t(reduce(uint64_t(i) * endo_exp));
    if (with_zero) endo[zero] = zero;

    Fixture f;
    f.name = "monogenic(n=" + std::to_string(index) + ",r=" + std::to_string(period) +
             (with_zero ? ",zero" : "") + ",e=" + std::to_string(endo_exp) + ")";
    f.endo = EndoDescriptor::table(*platform, std::move(endo));
    f.g = platform->element(1);
    f.platform = std::move(platform);
    if (endo_exp == 1) {
        f.known_index = index;
        f.known_period = period;
    }
    return f;
}

Fixture cyclic(uint32_t order, uint32_t endo_mult, uint32_t gen) {
    std::vector<uint32_t> table(size_t(order) * order);
    for (uint32_t a = 0; a < order; ++a) {
        for (uint32_t b = 0; b < order; ++b) {
            table[size_t(a) * order + b] = (a + b) % order;
        }
    }
    auto platform = CayleyPlatform::create(order, 0, std::move(table));
    std::vector<uint32_t> endo(order);
    for (uint32_t i = 0; i < order; ++i) endo[i] = uint32_t(uint64_t(i) * endo_mult % order);

    Fixture f;
    f.name = "cyclic(" + std::to_string(order) + ",x" + std::to_string(endo_mult) + ")";
    f.endo = EndoDescriptor::table(*platform, std::move(endo));
    f.g = platform->element(gen % order);
    f.platform = std::move(platform);
    if (endo_mult == 1) {
        f.known_index = 1;
        f.known_period = order / std::gcd(order, gen % order);
    }
    return f;
}

Fixture unipotent_z5() {
    auto platform = MatrixPlatform::mod_ring(2, 5);
    Fixture f;
    f.name = "unipotent_z5";
    f.endo = EndoDescriptor::identity(*platform);
    f.g = platform->from_words({1, 1, 0, 1});
    f.platform = std::move(platform);
    f.known_index = 1;
    f.known_period = 5;
    return f;
}

Fixture idempotent_cayley() {
    Fixture f = monogenic(1, 1);
    f.name = "idempotent_cayley";
    return f;
}

Fixture idempotent_matrix() {
    auto platform = MatrixPlatform::mod_ring(2, 5);
    Fixture f;
    f.name = "idempotent_matrix";
    f.endo = EndoDescriptor::identity(*platform);
    f.g = platform->from_words({1, 0, 0, 0});
    f.platform = std::move(platform);
    f.known_index = 1;
    f.known_period = 1;
    return f;
}

Fixture m3_z101_inner() {
    auto platform = MatrixPlatform::mod_ring(3, 101);
    Fixture f;
    f.name = "m3_z101_inner";
    f.endo = EndoDescriptor::inner_auto(*platform,
                                        platform->from_words({0, 1, 0, 0, 0, 1, 1, 0, 0}));
    f.g = platform->from_words({1, 1, 0, 0, 1, 1, 0, 0, 1});
    f.platform = std::move(platform);
    f.known_index = 1;
    f.known_period = 150;
    return f;
}

Fixture m3_z101_tail_small() {
    auto platform = MatrixPlatform::mod_ring(3, 101);
    Fixture f;
    f.name = "m3_z101_tail_small";
    f.endo = EndoDescriptor::inner_auto(*platform,
                                        platform->from_words({1, 0, 0, 0, 3, 0, 0, 0, 1}));
    f.g = platform->from_words({0, 1, 0, 0, 0, 0, 0, 0, 10});
    f.platform = std::move(platform);
    f.known_index = 2;
    f.known_period = 4;
    return f;
}

Fixture m3_z101_tail_big() {
    auto platform = MatrixPlatform::mod_ring(3, 101);
    Fixture f;
    f.name = "m3_z101_tail_big";
    f.endo = EndoDescriptor::identity(*platform);
    f.g = platform->from_words({0, 1, 0, 0, 0, 0, 0, 0, 2});
    f.platform = std::move(platform);
    f.known_index = 2;
    f.known_period = 100;
    return f;
}

Fixture gf4_frobenius() {
    auto platform = MatrixPlatform::galois(2, 2, 2);
    Fixture f;
    f.name = "gf4_frobenius";
    f.endo = EndoDescriptor::frobenius(*platform, 1);
    f.g = platform->from_words({2, 1, 1, 0});
    f.platform = std::move(platform);
    f.known_index = 1;
    f.known_period = 6;
    return f;
}

Element naive_sd_pow(const BasePair& base, uint64_t x) {
    Element acc = base.g;
    for (uint64_t j = 1; j < x; ++j) {
        acc = base.p().mul(apply_endo(base.p(), base.endo, j, base.g), acc);
    }
    return acc;
}

std::vector<Fixture> oracle_fixtures() {
    std::vector<Fixture> out;
    out.push_back(monogenic(3, 2, true));
    out.push_back(monogenic(1, 1));
    out.push_back(monogenic(5, 7));
    out.push_back(monogenic(4, 6, false, 2));
    out.push_back(monogenic(2, 9, true, 3));
    out.push_back(cyclic(7, 2));
    out.push_back(cyclic(12, 5));
    out.push_back(cyclic(16, 1));
    return out;
}

} // namespace spdh::testing
