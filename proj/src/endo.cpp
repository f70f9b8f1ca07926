#include "spdh/endo.hpp"

#include <bit>
#include <sstream>

namespace spdh {

namespace {

std::vector<std::vector<uint32_t>> build_lifted(const std::vector<uint32_t>& map) {
    // lifted[j][i] = phi^(2^j)(i); 64 levels cover any uint64_t exponent
    std::vector<std::vector<uint32_t>> lifted;
    lifted.reserve(64);
    lifted.push_back(map);
    for (int j = 1; j < 64; ++j) {
        const auto& prev = lifted.back();
        std::vector<uint32_t> next(map.size());
        for (size_t i = 0; i < map.size(); ++i) next[i] = prev[prev[i]];
        lifted.push_back(std::move(next));
    }
    return lifted;
}

} // namespace

EndoDescriptor EndoDescriptor::inner(const Platform& p, Element h, Element h_inv) {
    p.require_same(h);
    p.require_same(h_inv);
    return EndoDescriptor(p.id(), InnerEndo{std::move(h), std::move(h_inv)});
}

EndoDescriptor EndoDescriptor::inner_auto(const Platform& p, const Element& h) {
    p.require_same(h);
    if (const auto* mat = dynamic_cast<const MatrixPlatform*>(&p)) {
        auto inv = mat->inverse(h);
        if (!inv) throw InputError("conjugator is not invertible");
        return inner(p, h, std::move(*inv));
    }
    if (p.enumerable()) {
        Element e = p.identity();
        for (uint64_t i = 0; i < p.count(); ++i) {
            Element c = p.at(i);
            if (p.mul(h, c) == e && p.mul(c, h) == e) return inner(p, h, std::move(c));
        }
        throw InputError("conjugator is not invertible");
    }
    throw InputError("cannot invert conjugator on this platform");
}

EndoDescriptor EndoDescriptor::frobenius(const Platform& p, uint32_t power) {
    const auto* mat = dynamic_cast<const MatrixPlatform*>(&p);
    if (mat == nullptr || !mat->field()) {
        throw InputError("frobenius endomorphism requires field entries");
    }
    return EndoDescriptor(p.id(), FrobeniusEndo{power});
}

EndoDescriptor EndoDescriptor::table(const Platform& p, std::vector<uint32_t> map) {
    if (!p.enumerable()) throw InputError("table endomorphism requires an enumerable platform");
    if (map.size() != p.count()) throw InputError("endo table has wrong size");
    for (uint32_t v : map) {
        if (v >= map.size()) throw InputError("endo table entry out of range");
    }
    TableEndo t;
    t.lifted = build_lifted(map);
    t.map = std::move(map);
    return EndoDescriptor(p.id(), std::move(t));
}

EndoDescriptor EndoDescriptor::identity(const Platform& p) {
    Element e = p.identity();
    return inner(p, e, e);
}

EndoDescriptor::Kind EndoDescriptor::kind() const {
    if (std::holds_alternative<InnerEndo>(v_)) return Kind::Inner;
    if (std::holds_alternative<FrobeniusEndo>(v_)) return Kind::Frobenius;
    return Kind::Table;
}

Element apply_endo(const Platform& p, const EndoDescriptor& phi, uint64_t k, const Element& a) {
    if (phi.platform_id() != p.id()) throw InputError("endomorphism belongs to another platform");
    p.require_same(a);
    if (k == 0) return a;
    if (const auto* inner = phi.as_inner()) {
        Element hk = pow_element(p, inner->h, k);
        Element hik = pow_element(p, inner->h_inv, k);
        return p.mul(p.mul(hik, a), hk);
    }
    if (const auto* frob = phi.as_frobenius()) {
        const auto& mat = dynamic_cast<const MatrixPlatform&>(p);
        uint64_t deg = mat.degree();
        uint64_t t = (uint64_t(frob->power) % deg) * (k % deg) % deg;
        return mat.frobenius_pow(a, t);
    }
    const auto* tab = phi.as_table();
    uint64_t idx = p.index_of(a);
    for (int j = 0; j < 64 && (k >> j) != 0; ++j) {
        if (k >> j & 1) idx = tab->lifted[size_t(j)][idx];
    }
    return p.at(idx);
}

EndoDescriptor parse_endo(const Platform& p, std::string_view desc) {
    std::istringstream in{std::string(desc)};
    std::string kind;
    in >> kind;
    if (kind == "inner") {
        std::string tok;
        if (!(in >> tok) || !tok.starts_with("h=")) throw InputError("inner endo needs h=<hex>");
        Element h = p.decode(parse_hex(tok.substr(2)));
        std::string tok2;
        if (in >> tok2) {
            if (!tok2.starts_with("hinv=")) throw InputError("unexpected token in inner endo");
            return EndoDescriptor::inner(p, std::move(h), p.decode(parse_hex(tok2.substr(5))));
        }
        return EndoDescriptor::inner_auto(p, h);
    }
    if (kind == "frobenius") {
        std::string tok;
        if (!(in >> tok) || !tok.starts_with("e=")) throw InputError("frobenius endo needs e=<int>");
        return EndoDescriptor::frobenius(p, uint32_t(std::stoull(tok.substr(2))));
    }
    if (kind == "table") {
        std::vector<uint32_t> map;
        uint64_t v;
        while (in >> v) map.push_back(uint32_t(v));
        return EndoDescriptor::table(p, std::move(map));
    }
    throw InputError("unknown endomorphism kind: " + kind);
}

std::string format_endo(const Platform& p, const EndoDescriptor& phi) {
    std::ostringstream os;
    if (const auto* inner = phi.as_inner()) {
        os << "inner h=" << to_hex(p.encode(inner->h));
    } else if (const auto* frob = phi.as_frobenius()) {
        os << "frobenius e=" << frob->power;
    } else {
        os << "table";
        for (uint32_t v : phi.as_table()->map) os << ' ' << v;
    }
    return os.str();
}

namespace {

std::string describe(const Platform& p, const Element& a) {
    return to_hex(p.encode(a));
}

} // namespace

ValidationReport validate_platform(const Platform& p, const EndoDescriptor* phi,
                                   uint64_t samples, Rng& rng) {
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.passed = false;
        if (report.failures.size() < 16) report.failures.push_back(std::move(msg));
    };
    Element e = p.identity();

    const bool exhaustive = p.enumerable() && p.count() <= 200;
    report.exhaustive = exhaustive;

    auto apply1 = [&](const Element& a) { return apply_endo(p, *phi, 1, a); };

    if (phi != nullptr) {
        // descriptor invariants first, so their witnesses survive the cap
        if (const auto* inner = phi->as_inner()) {
            if (p.mul(inner->h, inner->h_inv) != e || p.mul(inner->h_inv, inner->h) != e) {
                fail("inner pair is not mutually inverse: h*h_inv != identity");
            }
        }
        if (phi->kind() == EndoDescriptor::Kind::Frobenius) {
            const auto* mat = dynamic_cast<const MatrixPlatform*>(&p);
            if (mat == nullptr || !mat->field()) fail("frobenius endo on non-field platform");
        }
        Element probe = p.enumerable() ? p.at(p.count() - 1) : random_element(p, rng);
        if (apply_endo(p, *phi, 0, probe) != probe) fail("phi^0 is not the identity map");
    }

    if (exhaustive) {
        const uint64_t n = p.count();
        std::vector<Element> elems;
        elems.reserve(n);
        for (uint64_t i = 0; i < n; ++i) elems.push_back(p.at(i));
        for (uint64_t i = 0; i < n; ++i) {
            if (p.mul(e, elems[i]) != elems[i] || p.mul(elems[i], e) != elems[i]) {
                fail("identity law fails at " + describe(p, elems[i]));
            }
            for (uint64_t j = 0; j < n; ++j) {
                Element ab = p.mul(elems[i], elems[j]);
                if (phi != nullptr) {
                    ++report.checks;
                    if (apply1(ab) != p.mul(apply1(elems[i]), apply1(elems[j]))) {
                        fail("homomorphism law fails at (" + describe(p, elems[i]) + ", " +
                             describe(p, elems[j]) + ")");
                    }
                }
                for (uint64_t k = 0; k < n; ++k) {
                    ++report.checks;
                    if (p.mul(ab, elems[k]) != p.mul(elems[i], p.mul(elems[j], elems[k]))) {
                        fail("associativity fails at (" + describe(p, elems[i]) + ", " +
                             describe(p, elems[j]) + ", " + describe(p, elems[k]) + ")");
                    }
                }
            }
        }
    } else {
        for (uint64_t s = 0; s < samples; ++s) {
            Element a = random_element(p, rng);
            Element b = random_element(p, rng);
            Element c = random_element(p, rng);
            ++report.checks;
            if (p.mul(p.mul(a, b), c) != p.mul(a, p.mul(b, c))) {
                fail("associativity fails at sampled triple");
            }
            if (p.mul(e, a) != a || p.mul(a, e) != a) {
                fail("identity law fails at " + describe(p, a));
            }
            if (phi != nullptr && apply1(p.mul(a, b)) != p.mul(apply1(a), apply1(b))) {
                fail("homomorphism law fails at sampled pair");
            }
        }
    }

    return report;
}

} // namespace spdh
