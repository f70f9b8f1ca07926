#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "spdh/platform.hpp"

namespace spdh {

/// Conjugation a -> h_inv · a · h. The pair must satisfy h · h_inv =
/// identity = h_inv · h, which validate_platform checks and reports.
struct InnerEndo {
    Element h;
    Element h_inv;
};

/// Entry-wise a -> a^(p^power) on matrix platforms with field entries. Over a
/// prime field this is the identity map.
struct FrobeniusEndo {
    uint32_t power = 1;
};

/// Explicit function table on an enumerable platform, with precomputed
/// 2^j-fold compositions so phi^k costs O(log k) lookups.
struct TableEndo {
    std::vector<uint32_t> map;
    std::vector<std::vector<uint32_t>> lifted;
};

/// Descriptor for an endomorphism of a platform, with power semantics:
/// apply_endo(phi, k, a) evaluates phi^k(a) for any k >= 0.
class EndoDescriptor {
public:
    enum class Kind { Inner, Frobenius, Table };

    static EndoDescriptor inner(const Platform& p, Element h, Element h_inv);
    /// Computes the inverse of h; throws InputError when h is not invertible.
    static EndoDescriptor inner_auto(const Platform& p, const Element& h);
    static EndoDescriptor frobenius(const Platform& p, uint32_t power);
    static EndoDescriptor table(const Platform& p, std::vector<uint32_t> map);
    /// The identity endomorphism (conjugation by the identity element).
    static EndoDescriptor identity(const Platform& p);

    Kind kind() const;
    uint64_t platform_id() const { return platform_id_; }
    const InnerEndo* as_inner() const { return std::get_if<InnerEndo>(&v_); }
    const FrobeniusEndo* as_frobenius() const { return std::get_if<FrobeniusEndo>(&v_); }
    const TableEndo* as_table() const { return std::get_if<TableEndo>(&v_); }

private:
    EndoDescriptor(uint64_t platform_id, std::variant<InnerEndo, FrobeniusEndo, TableEndo> v)
        : platform_id_(platform_id), v_(std::move(v)) {}

    uint64_t platform_id_;
    std::variant<InnerEndo, FrobeniusEndo, TableEndo> v_;
};

/// phi^k(a). apply_endo(phi, 0, a) = a; powers compose additively.
Element apply_endo(const Platform& p, const EndoDescriptor& phi, uint64_t k, const Element& a);

/// Descriptor strings: "inner h=<hex>", "frobenius e=<int>",
/// "table <i0> <i1> ...".
EndoDescriptor parse_endo(const Platform& p, std::string_view desc);
std::string format_endo(const Platform& p, const EndoDescriptor& phi);

struct ValidationReport {
    bool passed = true;
    bool exhaustive = false;
    uint64_t checks = 0;
    std::vector<std::string> failures;
};

/// Checks associativity, the identity laws and (when phi is given) the
/// homomorphism law plus descriptor-specific invariants. Exhaustive on small
/// enumerable platforms, sampled otherwise.
ValidationReport validate_platform(const Platform& p, const EndoDescriptor* phi,
                                   uint64_t samples, Rng& rng);

} // namespace spdh
