#include "spdh/platform.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>

namespace spdh {

namespace {

uint64_t fnv1a(std::string_view data, uint64_t h = 0xcbf29ce484222325ull) {
    for (char c : data) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t fnv1a_words(std::span<const uint32_t> words, uint64_t h) {
    for (uint32_t w : words) {
        for (int i = 0; i < 4; ++i) {
            h ^= (w >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

uint64_t saturating_pow(uint64_t base, uint64_t exp) {
    uint64_t out = 1;
    for (uint64_t i = 0; i < exp; ++i) {
        if (out > UINT64_MAX / base) return UINT64_MAX;
        out *= base;
    }
    return out;
}

uint64_t parse_u64(std::string_view s, const char* what) {
    if (s.empty()) throw InputError(std::string("missing value for ") + what);
    uint64_t out = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw InputError(std::string("bad integer for ") + what);
        uint64_t digit = uint64_t(c - '0');
        if (out > (UINT64_MAX - digit) / 10) throw InputError(std::string("integer overflow in ") + what);
        out = out * 10 + digit;
    }
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace

size_t byte_width(uint64_t v) {
    size_t bits = std::bit_width(v);
    return bits == 0 ? 1 : (bits + 7) / 8;
}

std::vector<uint8_t> Platform::encode(const Element& a) const {
    require_same(a);
    const size_t w = entry_width();
    std::vector<uint8_t> out;
    out.reserve(payload_width());
    for (uint64_t word : a.words) {
        for (size_t i = 0; i < w; ++i) {
            out.push_back(static_cast<uint8_t>(word >> (8 * (w - 1 - i))));
        }
    }
    return out;
}

Element Platform::decode(std::span<const uint8_t> bytes) const {
    if (bytes.size() != payload_width()) {
        throw InputError("payload has wrong width for platform");
    }
    const size_t w = entry_width();
    const uint64_t radix = word_radix();
    Element out;
    out.platform_id = id();
    out.words.resize(word_count());
    for (size_t k = 0; k < out.words.size(); ++k) {
        uint64_t word = 0;
        for (size_t i = 0; i < w; ++i) word = word << 8 | bytes[k * w + i];
        if (word >= radix) throw InputError("payload entry out of range");
        out.words[k] = word;
    }
    return out;
}

void Platform::require_same(const Element& a) const {
    if (a.platform_id != id() || a.words.size() != word_count()) {
        throw InputError("element does not belong to this platform");
    }
}

Element pow_element(const Platform& p, const Element& a, uint64_t k) {
    if (k == 0) return p.identity();
    Element acc = a;
    int top = 63 - std::countl_zero(k);
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = p.mul(acc, acc);
        if (k >> bit & 1) acc = p.mul(acc, a);
    }
    return acc;
}

Element random_element(const Platform& p, Rng& rng) {
    if (p.enumerable()) return p.at(rng.below(p.count()));
    const auto* mat = dynamic_cast<const MatrixPlatform*>(&p);
    if (mat == nullptr) throw InputError("cannot sample from this platform");
    std::vector<uint64_t> words(size_t(mat->dim()) * mat->dim());
    for (auto& w : words) w = rng.below(mat->modulus());
    return mat->from_words(std::move(words));
}

// ---------------------------------------------------------------------------
// Cayley platforms

CayleyPlatform::CayleyPlatform(uint64_t id, uint32_t n, uint32_t identity_index,
                               std::vector<uint32_t> table, std::string config_hint)
    : Platform(id), n_(n), identity_(identity_index), table_(std::move(table)),
      config_hint_(std::move(config_hint)) {}

std::shared_ptr<const CayleyPlatform> CayleyPlatform::create(uint32_t n,
                                                             uint32_t identity_index,
                                                             std::vector<uint32_t> table,
                                                             std::string config_hint) {
    if (n == 0 || n > kMaxCayleyOrder) throw InputError("cayley order out of range");
    if (identity_index >= n) throw InputError("cayley identity index out of range");
    if (table.size() != size_t(n) * n) throw InputError("cayley table has wrong size");
    for (uint32_t v : table) {
        if (v >= n) throw InputError("cayley table entry out of range");
    }
    uint64_t id = fnv1a("cayley");
    id = fnv1a_words(std::span<const uint32_t>(&n, 1), id);
    id = fnv1a_words(std::span<const uint32_t>(&identity_index, 1), id);
    id = fnv1a_words(table, id);
    return std::shared_ptr<const CayleyPlatform>(
        new CayleyPlatform(id, n, identity_index, std::move(table), std::move(config_hint)));
}

Element CayleyPlatform::element(uint32_t index) const {
    if (index >= n_) throw InputError("cayley index out of range");
    return Element{id(), {index}};
}

std::string CayleyPlatform::config() const {
    if (!config_hint_.empty()) return config_hint_;
    std::ostringstream os;
    os << "cayley inline n=" << n_ << " identity=" << identity_ << " table=";
    for (size_t i = 0; i < table_.size(); ++i) {
        if (i) os << ',';
        os << table_[i];
    }
    return os.str();
}

Element CayleyPlatform::identity() const { return Element{id(), {identity_}}; }

Element CayleyPlatform::mul(const Element& a, const Element& b) const {
    require_same(a);
    require_same(b);
    return Element{id(), {mul_index(uint32_t(a.words[0]), uint32_t(b.words[0]))}};
}

Element CayleyPlatform::at(uint64_t index) const { return element(uint32_t(index)); }

uint64_t CayleyPlatform::index_of(const Element& a) const {
    require_same(a);
    return a.words[0];
}

// ---------------------------------------------------------------------------
// Matrix platforms

namespace {

constexpr uint32_t kMaxMatrixDim = 8;
constexpr uint64_t kMaxEntryModulus = 0xffffffffull; // keeps u64 products exact

// Polynomial helpers for GF(p^k); polys are coefficient vectors, low degree
// first, entries reduced mod p.
std::vector<uint32_t> poly_unpack(uint64_t v, uint64_t p, uint32_t deg) {
    std::vector<uint32_t> c(deg);
    for (uint32_t i = 0; i < deg; ++i) {
        c[i] = uint32_t(v % p);
        v /= p;
    }
    return c;
}

uint64_t poly_pack(std::span<const uint32_t> c, uint64_t p) {
    uint64_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

// remainder of a mod b, b monic not required; used by the irreducibility scan
std::vector<uint32_t> poly_mod(std::vector<uint32_t> a, std::span<const uint32_t> b, uint64_t p) {
    auto degree_of = [](std::span<const uint32_t> v) -> int {
        for (size_t i = v.size(); i-- > 0;) {
            if (v[i] != 0) return int(i);
        }
        return -1;
    };
    int db = degree_of(b);
    while (true) {
        int da = degree_of(a);
        if (da < db) break;
        // b is monic in every call site
        uint64_t lead = a[size_t(da)];
        for (int i = 0; i <= db; ++i) {
            uint64_t sub = lead * b[size_t(i)] % p;
            uint64_t cur = a[size_t(da - db + i)];
            a[size_t(da - db + i)] = uint32_t((cur + p - sub) % p);
        }
    }
    return a;
}

bool poly_is_irreducible(std::span<const uint32_t> f, uint64_t p, uint32_t k) {
    // No roots rules out all factors of degree 1; trial division handles the
    // rest up to degree k/2.
    auto eval = [&](uint64_t x) {
        uint64_t acc = 0;
        for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
        return acc;
    };
    for (uint64_t x = 0; x < p; ++x) {
        if (eval(x) == 0) return false;
    }
    for (uint32_t d = 2; d <= k / 2; ++d) {
        // all monic polynomials of degree d
        uint64_t total = 1;
        for (uint32_t i = 0; i < d; ++i) total *= p;
        for (uint64_t c = 0; c < total; ++c) {
            std::vector<uint32_t> div = poly_unpack(c, p, d);
            div.push_back(1);
            std::vector<uint32_t> rem = poly_mod(std::vector<uint32_t>(f.begin(), f.end()), div, p);
            bool zero = std::all_of(rem.begin(), rem.end(), [](uint32_t v) { return v == 0; });
            if (zero) return false;
        }
    }
    return true;
}

std::vector<uint32_t> find_irreducible(uint64_t p, uint32_t k) {
    // Smallest monic irreducible of degree k, so the field representation is
    // canonical for a given (p, k).
    uint64_t total = 1;
    for (uint32_t i = 0; i < k; ++i) total *= p;
    for (uint64_t c = 0; c < total; ++c) {
        std::vector<uint32_t> f = poly_unpack(c, p, k);
        f.push_back(1);
        if (poly_is_irreducible(f, p, k)) return f;
    }
    throw Error("no irreducible polynomial found"); // cannot happen
}

} // namespace

MatrixPlatform::MatrixPlatform(uint64_t id, uint32_t dim, uint64_t modulus,
                               uint64_t characteristic, uint32_t degree, bool field,
                               std::vector<uint32_t> irreducible, uint64_t bound,
                               bool bound_overridden)
    : Platform(id), dim_(dim), modulus_(modulus), char_(characteristic), degree_(degree),
      field_(field), irreducible_(std::move(irreducible)), bound_(bound),
      bound_overridden_(bound_overridden) {}

std::shared_ptr<const MatrixPlatform>
MatrixPlatform::mod_ring(uint32_t dim, uint64_t modulus, std::optional<uint64_t> bound_override) {
    if (dim == 0 || dim > kMaxMatrixDim) throw InputError("matrix dimension out of range");
    if (modulus < 2 || modulus > kMaxEntryModulus) throw InputError("matrix modulus out of range");
    uint64_t bound = bound_override.value_or(saturating_pow(modulus, uint64_t(dim) * dim));
    std::ostringstream key;
    key << "matrix d=" << dim << " m=" << modulus;
    if (bound_override) key << " bound=" << bound;
    return std::shared_ptr<const MatrixPlatform>(
        new MatrixPlatform(fnv1a(key.str()), dim, modulus, modulus, 1, is_prime(modulus), {},
                           bound, bound_override.has_value()));
}

std::shared_ptr<const MatrixPlatform>
MatrixPlatform::galois(uint32_t dim, uint64_t characteristic, uint32_t degree,
                       std::optional<uint64_t> bound_override) {
    if (dim == 0 || dim > kMaxMatrixDim) throw InputError("matrix dimension out of range");
    if (degree < 2 || degree > 16) throw InputError("field degree out of range");
    if (!is_prime(characteristic)) throw InputError("field characteristic must be prime");
    uint64_t q = 1;
    for (uint32_t i = 0; i < degree; ++i) {
        if (q > kMaxEntryModulus / characteristic) throw InputError("field too large");
        q *= characteristic;
    }
    uint64_t bound = bound_override.value_or(saturating_pow(q, uint64_t(dim) * dim));
    std::ostringstream key;
    key << "matrix d=" << dim << " m=" << characteristic << '^' << degree;
    if (bound_override) key << " bound=" << bound;
    return std::shared_ptr<const MatrixPlatform>(
        new MatrixPlatform(fnv1a(key.str()), dim, q, characteristic, degree, true,
                           find_irreducible(characteristic, degree), bound,
                           bound_override.has_value()));
}

std::string MatrixPlatform::config() const {
    std::ostringstream os;
    os << "matrix d=" << dim_ << " m=" << char_;
    if (degree_ > 1) os << '^' << degree_;
    if (bound_overridden_) os << " bound=" << bound_;
    return os.str();
}

uint64_t MatrixPlatform::entry_add(uint64_t a, uint64_t b) const {
    if (degree_ == 1) return (a + b) % modulus_;
    auto ca = poly_unpack(a, char_, degree_);
    auto cb = poly_unpack(b, char_, degree_);
    for (uint32_t i = 0; i < degree_; ++i) ca[i] = uint32_t((uint64_t(ca[i]) + cb[i]) % char_);
    return poly_pack(ca, char_);
}

uint64_t MatrixPlatform::entry_sub(uint64_t a, uint64_t b) const {
    if (degree_ == 1) return (a + modulus_ - b) % modulus_;
    auto ca = poly_unpack(a, char_, degree_);
    auto cb = poly_unpack(b, char_, degree_);
    for (uint32_t i = 0; i < degree_; ++i) {
        ca[i] = uint32_t((uint64_t(ca[i]) + char_ - cb[i]) % char_);
    }
    return poly_pack(ca, char_);
}

uint64_t MatrixPlatform::gf_mul(uint64_t a, uint64_t b) const {
    auto ca = poly_unpack(a, char_, degree_);
    auto cb = poly_unpack(b, char_, degree_);
    std::vector<uint64_t> prod(2 * degree_ - 1, 0);
    for (uint32_t i = 0; i < degree_; ++i) {
        if (ca[i] == 0) continue;
        for (uint32_t j = 0; j < degree_; ++j) {
            prod[i + j] += uint64_t(ca[i]) * cb[j];
        }
    }
    for (auto& v : prod) v %= char_;
    // reduce by the monic irreducible
    for (size_t d = prod.size(); d-- > degree_;) {
        uint64_t lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        for (uint32_t i = 0; i < degree_; ++i) {
            uint64_t sub = lead * irreducible_[i] % char_;
            prod[d - degree_ + i] = (prod[d - degree_ + i] + char_ - sub) % char_;
        }
    }
    std::vector<uint32_t> out(degree_);
    for (uint32_t i = 0; i < degree_; ++i) out[i] = uint32_t(prod[i]);
    return poly_pack(out, char_);
}

uint64_t MatrixPlatform::entry_mul(uint64_t a, uint64_t b) const {
    if (degree_ == 1) return a * b % modulus_;
    return gf_mul(a, b);
}

uint64_t MatrixPlatform::entry_pow(uint64_t a, uint64_t e) const {
    uint64_t acc = 1;
    uint64_t base = a;
    while (e > 0) {
        if (e & 1) acc = entry_mul(acc, base);
        base = entry_mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::optional<uint64_t> MatrixPlatform::entry_inv(uint64_t a) const {
    if (a == 0) return std::nullopt;
    if (degree_ > 1 || field_) {
        // a^(q-2) in a field
        uint64_t inv = entry_pow(a, modulus_ - 2);
        return entry_mul(a, inv) == 1 ? std::optional<uint64_t>(inv) : std::nullopt;
    }
    // extended euclid in Z_m
    int64_t t = 0, nt = 1;
    int64_t r = int64_t(modulus_), nr = int64_t(a);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) return std::nullopt;
    return uint64_t(t < 0 ? t + int64_t(modulus_) : t);
}

Element MatrixPlatform::identity() const {
    Element e{id(), std::vector<uint64_t>(size_t(dim_) * dim_, 0)};
    for (uint32_t i = 0; i < dim_; ++i) e.words[size_t(i) * dim_ + i] = 1;
    return e;
}

Element MatrixPlatform::from_words(std::vector<uint64_t> words) const {
    if (words.size() != size_t(dim_) * dim_) throw InputError("wrong number of matrix entries");
    for (uint64_t w : words) {
        if (w >= modulus_) throw InputError("matrix entry out of range");
    }
    return Element{id(), std::move(words)};
}

Element MatrixPlatform::mul(const Element& a, const Element& b) const {
    require_same(a);
    require_same(b);
    const uint32_t d = dim_;
    Element out{id(), std::vector<uint64_t>(size_t(d) * d, 0)};
    if (degree_ == 1) {
        for (uint32_t i = 0; i < d; ++i) {
            for (uint32_t j = 0; j < d; ++j) {
                unsigned __int128 acc = 0;
                for (uint32_t k = 0; k < d; ++k) {
                    acc += static_cast<unsigned __int128>(a.words[size_t(i) * d + k]) *
                           b.words[size_t(k) * d + j];
                }
                out.words[size_t(i) * d + j] = uint64_t(acc % modulus_);
            }
        }
    } else {
        for (uint32_t i = 0; i < d; ++i) {
            for (uint32_t j = 0; j < d; ++j) {
                uint64_t acc = 0;
                for (uint32_t k = 0; k < d; ++k) {
                    acc = entry_add(acc, gf_mul(a.words[size_t(i) * d + k], b.words[size_t(k) * d + j]));
                }
                out.words[size_t(i) * d + j] = acc;
            }
        }
    }
    return out;
}

Element MatrixPlatform::frobenius_pow(const Element& a, uint64_t iterations) const {
    require_same(a);
    if (!field_) throw InputError("frobenius requires field entries");
    uint64_t t = iterations % degree_;
    if (t == 0) return a;
    Element out = a;
    for (auto& w : out.words) {
        for (uint64_t i = 0; i < t; ++i) w = entry_pow(w, char_);
    }
    return out;
}

namespace {

// Determinant and adjugate by cofactor expansion. Dimensions are small
// enough (<= kMaxMatrixDim) that the factorial cost does not matter.
uint64_t det_rec(const MatrixPlatform& p, const std::vector<uint64_t>& m, uint32_t d) {
    if (d == 1) return m[0];
    uint64_t acc = 0;
    std::vector<uint64_t> minor((d - 1) * (d - 1));
    for (uint32_t col = 0; col < d; ++col) {
        for (uint32_t i = 1; i < d; ++i) {
            uint32_t mj = 0;
            for (uint32_t j = 0; j < d; ++j) {
                if (j == col) continue;
                minor[size_t(i - 1) * (d - 1) + mj++] = m[size_t(i) * d + j];
            }
        }
        uint64_t term = p.entry_mul(m[col], det_rec(p, minor, d - 1));
        acc = (col % 2 == 0) ? p.entry_add(acc, term) : p.entry_sub(acc, term);
    }
    return acc;
}

} // namespace

std::optional<Element> MatrixPlatform::inverse(const Element& a) const {
    require_same(a);
    const uint32_t d = dim_;
    uint64_t det = det_rec(*this, a.words, d);
    auto det_inv = entry_inv(det);
    if (!det_inv) return std::nullopt;
    Element out{id(), std::vector<uint64_t>(size_t(d) * d, 0)};
    if (d == 1) {
        out.words[0] = *det_inv;
        return out;
    }
    std::vector<uint64_t> minor((d - 1) * (d - 1));
    for (uint32_t i = 0; i < d; ++i) {
        for (uint32_t j = 0; j < d; ++j) {
            uint32_t mi = 0;
            for (uint32_t r = 0; r < d; ++r) {
                if (r == i) continue;
                uint32_t mj = 0;
                for (uint32_t c = 0; c < d; ++c) {
                    if (c == j) continue;
                    minor[size_t(mi) * (d - 1) + mj++] = a.words[size_t(r) * d + c];
                }
                ++mi;
            }
            uint64_t cof = det_rec(*this, minor, d - 1);
            if ((i + j) % 2 == 1) cof = entry_sub(0, cof);
            // adjugate transposes the cofactor matrix
            out.words[size_t(j) * d + i] = entry_mul(cof, *det_inv);
        }
    }
    return out;
}

bool MatrixPlatform::enumerable() const {
    return saturating_pow(modulus_, uint64_t(dim_) * dim_) <= 65536;
}

uint64_t MatrixPlatform::count() const {
    if (!enumerable()) throw InputError("platform is not enumerable");
    return saturating_pow(modulus_, uint64_t(dim_) * dim_);
}

Element MatrixPlatform::at(uint64_t index) const {
    if (index >= count()) throw InputError("element index out of range");
    Element out{id(), std::vector<uint64_t>(size_t(dim_) * dim_, 0)};
    for (size_t k = out.words.size(); k-- > 0;) {
        out.words[k] = index % modulus_;
        index /= modulus_;
    }
    return out;
}

uint64_t MatrixPlatform::index_of(const Element& a) const {
    require_same(a);
    if (!enumerable()) throw InputError("platform is not enumerable");
    uint64_t idx = 0;
    for (uint64_t w : a.words) idx = idx * modulus_ + w;
    return idx;
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

std::pair<uint64_t, uint32_t> parse_modulus_token(std::string_view v) {
    size_t caret = v.find('^');
    if (caret == std::string_view::npos) return {parse_u64(v, "m"), 1};
    uint64_t p = parse_u64(v.substr(0, caret), "m");
    uint64_t k = parse_u64(v.substr(caret + 1), "m exponent");
    if (k == 0 || k > 16) throw InputError("field degree out of range");
    return {p, uint32_t(k)};
}

std::string join_from(const std::vector<std::string>& toks, size_t start) {
    std::string out;
    for (size_t i = start; i < toks.size(); ++i) {
        if (i > start) out += ' ';
        out += toks[i];
    }
    return out;
}

} // namespace

LoadedPlatform parse_platform_config(std::string_view config, const std::string& base_dir) {
    auto toks = split_ws(config);
    if (toks.empty()) throw InputError("empty platform config");
    if (toks[0] == "matrix") {
        std::optional<uint64_t> dim, bound;
        std::optional<std::pair<uint64_t, uint32_t>> mod;
        std::optional<std::string> endo;
        for (size_t i = 1; i < toks.size(); ++i) {
            const std::string& t = toks[i];
            if (t.starts_with("d=")) {
                dim = parse_u64(t.substr(2), "d");
            } else if (t.starts_with("m=")) {
                mod = parse_modulus_token(std::string_view(t).substr(2));
            } else if (t.starts_with("bound=")) {
                bound = parse_u64(t.substr(6), "bound");
            } else if (t.starts_with("endo=")) {
                // embedded endo clause: everything from here on
                std::string rest = t.substr(5) + (i + 1 < toks.size() ? " " + join_from(toks, i + 1) : "");
                endo = rest;
                break;
            } else {
                throw InputError("unknown matrix config token: " + t);
            }
        }
        if (!dim || !mod) throw InputError("matrix config needs d= and m=");
        std::shared_ptr<const Platform> platform;
        if (mod->second == 1) {
            platform = MatrixPlatform::mod_ring(uint32_t(*dim), mod->first, bound);
        } else {
            platform = MatrixPlatform::galois(uint32_t(*dim), mod->first, mod->second, bound);
        }
        return {std::move(platform), std::move(endo)};
    }
    if (toks[0] == "cayley") {
        if (toks.size() >= 2 && toks[1].starts_with("file=")) {
            std::string path = toks[1].substr(5);
            if (!base_dir.empty() && !path.starts_with('/')) path = base_dir + "/" + path;
            auto [platform, endo_table] = load_cayley_file(path, std::string(config));
            std::ostringstream endo;
            endo << "table";
            for (uint32_t v : endo_table) endo << ' ' << v;
            return {std::move(platform), endo.str()};
        }
        if (toks.size() >= 2 && toks[1] == "inline") {
            std::optional<uint64_t> n, identity;
            std::vector<uint32_t> table;
            for (size_t i = 2; i < toks.size(); ++i) {
                const std::string& t = toks[i];
                if (t.starts_with("n=")) {
                    n = parse_u64(t.substr(2), "n");
                } else if (t.starts_with("identity=")) {
                    identity = parse_u64(t.substr(9), "identity");
                } else if (t.starts_with("table=")) {
                    std::string list = t.substr(6);
                    size_t pos = 0;
                    while (pos <= list.size()) {
                        size_t comma = list.find(',', pos);
                        std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                       : comma - pos);
                        table.push_back(uint32_t(parse_u64(item, "table entry")));
                        if (comma == std::string::npos) break;
                        pos = comma + 1;
                    }
                } else {
                    throw InputError("unknown cayley config token: " + t);
                }
            }
            if (!n || !identity) throw InputError("cayley inline config needs n= and identity=");
            return {CayleyPlatform::create(uint32_t(*n), uint32_t(*identity), std::move(table)),
                    std::nullopt};
        }
        throw InputError("cayley config needs file= or inline");
    }
    throw InputError("unknown platform kind: " + toks[0]);
}

std::pair<std::shared_ptr<const CayleyPlatform>, std::vector<uint32_t>>
load_cayley_file(const std::string& path, std::string config_hint) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open cayley file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError("cayley file is empty");
    auto head = split_ws(line);
    if (head.size() != 2 || head[0] != "cayley" || !head[1].starts_with("n=")) {
        throw InputError("cayley file must start with 'cayley n=<size>'");
    }
    uint64_t n = parse_u64(head[1].substr(2), "n");
    if (!std::getline(in, line) || !line.starts_with("identity=")) {
        throw InputError("cayley file missing identity line");
    }
    uint64_t identity = parse_u64(split_ws(line.substr(9)).at(0), "identity");
    std::vector<uint32_t> table;
    table.reserve(n * n);
    for (uint64_t row = 0; row < n; ++row) {
        if (!std::getline(in, line)) throw InputError("cayley file truncated");
        auto vals = split_ws(line);
        if (vals.size() != n) throw InputError("cayley row has wrong length");
        for (auto& v : vals) table.push_back(uint32_t(parse_u64(v, "table entry")));
    }
    if (!std::getline(in, line)) throw InputError("cayley file missing endo line");
    std::string endo_part;
    if (line == "endo=") {
        if (!std::getline(in, endo_part)) throw InputError("cayley file missing endo values");
    } else if (line.starts_with("endo=")) {
        endo_part = line.substr(5);
    } else {
        throw InputError("cayley file missing endo line");
    }
    auto endo_vals = split_ws(endo_part);
    if (endo_vals.size() != n) throw InputError("cayley endo table has wrong length");
    std::vector<uint32_t> endo;
    endo.reserve(n);
    for (auto& v : endo_vals) {
        uint64_t idx = parse_u64(v, "endo entry");
        if (idx >= n) throw InputError("cayley endo entry out of range");
        endo.push_back(uint32_t(idx));
    }
    auto platform = CayleyPlatform::create(uint32_t(n), uint32_t(identity), std::move(table),
                                           std::move(config_hint));
    return {std::move(platform), std::move(endo)};
}

std::string format_cayley_file(const CayleyPlatform& p, std::span<const uint32_t> endo_table) {
    std::ostringstream os;
    uint32_t n = p.order();
    os << "cayley n=" << n << "\nidentity=" << p.identity_index() << '\n';
    for (uint32_t a = 0; a < n; ++a) {
        for (uint32_t b = 0; b < n; ++b) {
            if (b) os << ' ';
            os << p.mul_index(a, b);
        }
        os << '\n';
    }
    os << "endo=";
    for (size_t i = 0; i < endo_table.size(); ++i) {
        if (i) os << ' ';
        os << endo_table[i];
    }
    os << '\n';
    return os.str();
}

} // namespace spdh
