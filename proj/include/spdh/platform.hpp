#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdh/element.hpp"
#include "spdh/errors.hpp"
#include "spdh/rng.hpp"

namespace spdh {

/// Width in bytes of the big-endian encoding of v (at least 1).
size_t byte_width(uint64_t v);

/// Finite semigroup with two-sided identity, canonical fixed-width element
/// encoding and a crude orbit-size bound. Instances are immutable after
/// construction; every operation is a pure function and safe to call
/// concurrently.
class Platform {
public:
    virtual ~Platform() = default;

    Platform(const Platform&) = delete;
    Platform& operator=(const Platform&) = delete;

    uint64_t id() const { return id_; }

    /// Canonical one-line description, parseable by parse_platform_config.
    virtual std::string config() const = 0;

    virtual Element identity() const = 0;
    virtual Element mul(const Element& a, const Element& b) const = 0;

    /// Upper bound on the number of distinct elements (saturating).
    virtual uint64_t size_bound() const = 0;

    virtual bool enumerable() const = 0;
    virtual uint64_t count() const = 0;           // enumerable platforms only
    virtual Element at(uint64_t index) const = 0; // enumerable platforms only
    virtual uint64_t index_of(const Element& a) const = 0;

    /// Fixed payload width in bytes: word_count() entries, each entry_width()
    /// bytes big-endian.
    size_t payload_width() const { return word_count() * entry_width(); }
    std::vector<uint8_t> encode(const Element& a) const;
    Element decode(std::span<const uint8_t> bytes) const;

    /// Throws InputError when a belongs to a different platform.
    void require_same(const Element& a) const;

protected:
    explicit Platform(uint64_t id) : id_(id) {}

    virtual size_t word_count() const = 0;
    virtual size_t entry_width() const = 0;
    virtual uint64_t word_radix() const = 0; // words valid in [0, radix)

private:
    uint64_t id_;
};

/// a^k by repeated squaring; k = 0 gives the identity.
Element pow_element(const Platform& p, const Element& a, uint64_t k);

/// Uniformly random element (used by tests and instance generators).
Element random_element(const Platform& p, Rng& rng);

constexpr uint32_t kMaxCayleyOrder = 4096;

/// Semigroup given by an explicit multiplication table. Order is capped at
/// kMaxCayleyOrder so exhaustive oracles stay fast.
class CayleyPlatform final : public Platform {
public:
    /// table is row-major: table[a * n + b] = index of a·b.
    static std::shared_ptr<const CayleyPlatform> create(uint32_t n,
                                                        uint32_t identity_index,
                                                        std::vector<uint32_t> table,
                                                        std::string config_hint = {});

    uint32_t order() const { return n_; }
    uint32_t identity_index() const { return identity_; }
    uint32_t mul_index(uint32_t a, uint32_t b) const { return table_[a * n_ + b]; }
    Element element(uint32_t index) const;

    std::string config() const override;
    Element identity() const override;
    Element mul(const Element& a, const Element& b) const override;
    uint64_t size_bound() const override { return n_; }
    bool enumerable() const override { return true; }
    uint64_t count() const override { return n_; }
    Element at(uint64_t index) const override;
    uint64_t index_of(const Element& a) const override;

protected:
    size_t word_count() const override { return 1; }
    size_t entry_width() const override { return byte_width(n_); }
    uint64_t word_radix() const override { return n_; }

private:
    CayleyPlatform(uint64_t id, uint32_t n, uint32_t identity_index,
                   std::vector<uint32_t> table, std::string config_hint);

    uint32_t n_;
    uint32_t identity_;
    std::vector<uint32_t> table_;
    std::string config_hint_;
};

/// d×d matrices under multiplication, entries in Z_m or GF(p^k). Payload is
/// row-major, one big-endian fixed-width integer per entry; GF entries pack
/// polynomial coefficients base p.
class MatrixPlatform final : public Platform {
public:
    static std::shared_ptr<const MatrixPlatform>
    mod_ring(uint32_t dim, uint64_t modulus, std::optional<uint64_t> bound_override = {});

    static std::shared_ptr<const MatrixPlatform>
    galois(uint32_t dim, uint64_t characteristic, uint32_t degree,
           std::optional<uint64_t> bound_override = {});

    uint32_t dim() const { return dim_; }
    uint64_t modulus() const { return modulus_; } // m, or p^k for fields
    bool field() const { return field_; }
    uint64_t characteristic() const { return char_; }
    uint32_t degree() const { return degree_; }

    Element from_words(std::vector<uint64_t> words) const;
    /// Entry-wise a -> a^(p^iterations); field platforms only.
    Element frobenius_pow(const Element& a, uint64_t iterations) const;
    /// Two-sided inverse, or nullopt when the matrix is singular.
    std::optional<Element> inverse(const Element& a) const;

    // entry ring, exposed for tests
    uint64_t entry_add(uint64_t a, uint64_t b) const;
    uint64_t entry_sub(uint64_t a, uint64_t b) const;
    uint64_t entry_mul(uint64_t a, uint64_t b) const;
    uint64_t entry_pow(uint64_t a, uint64_t e) const;
    std::optional<uint64_t> entry_inv(uint64_t a) const;

    std::string config() const override;
    Element identity() const override;
    Element mul(const Element& a, const Element& b) const override;
    uint64_t size_bound() const override { return bound_; }
    bool enumerable() const override;
    uint64_t count() const override;
    Element at(uint64_t index) const override;
    uint64_t index_of(const Element& a) const override;

protected:
    size_t word_count() const override { return size_t(dim_) * dim_; }
    size_t entry_width() const override { return byte_width(modulus_); }
    uint64_t word_radix() const override { return modulus_; }

private:
    MatrixPlatform(uint64_t id, uint32_t dim, uint64_t modulus, uint64_t characteristic,
                   uint32_t degree, bool field, std::vector<uint32_t> irreducible,
                   uint64_t bound, bool bound_overridden);

    uint64_t gf_mul(uint64_t a, uint64_t b) const;

    uint32_t dim_;
    uint64_t modulus_;
    uint64_t char_;
    uint32_t degree_;
    bool field_;
    std::vector<uint32_t> irreducible_; // monic, degree_+1 coefficients, GF only
    uint64_t bound_;
    bool bound_overridden_;
};

/// Result of parsing a platform config string. Cayley files carry an
/// endomorphism table and matrix configs may embed an endo clause; either is
/// surfaced here for the caller to parse against the platform.
struct LoadedPlatform {
    std::shared_ptr<const Platform> platform;
    std::optional<std::string> endo_config;
};

/// Accepts:
///   matrix d=<dim> m=<modulus>            (modulus decimal or p^k)
///   matrix ... endo=inner h=<hex>         (embedded endo clause)
///   matrix ... endo=frobenius e=<int>
///   cayley file=<path>                    (file format documented in README)
///   cayley inline n=<n> identity=<i> table=<c0,c1,...>
/// Relative cayley paths resolve against base_dir when given.
LoadedPlatform parse_platform_config(std::string_view config, const std::string& base_dir = {});

/// Reads the line-oriented cayley file format; returns the platform and the
/// file's endomorphism table.
std::pair<std::shared_ptr<const CayleyPlatform>, std::vector<uint32_t>>
load_cayley_file(const std::string& path, std::string config_hint = {});

/// Writes the same format (used by tests and fixture tooling).
std::string format_cayley_file(const CayleyPlatform& p, std::span<const uint32_t> endo_table);

} // namespace spdh
