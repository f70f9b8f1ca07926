#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spdh/errors.hpp"

namespace spdh {

/// A semigroup element. `words` holds the platform-defined canonical form
/// (matrix entries row-major, or a single enumeration index). Two elements
/// are equal exactly when platform and canonical form match, which coincides
/// with byte equality of their encodings.
struct Element {
    uint64_t platform_id = 0;
    std::vector<uint64_t> words;

    friend bool operator==(const Element&, const Element&) = default;
};

struct ElementHash {
    size_t operator()(const Element& e) const noexcept {
        uint64_t h = 0xcbf29ce484222325ull ^ e.platform_id;
        for (uint64_t w : e.words) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
        return static_cast<size_t>(h);
    }
};

inline std::string to_hex(std::span<const uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

inline std::vector<uint8_t> parse_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw InputError("hex string has odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw InputError("invalid hex digit");
    };
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    }
    return out;
}

} // namespace spdh
