#pragma once

#include <stdexcept>

namespace spdh {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad config strings, platform mismatches, invalid encodings.
class InputError : public Error {
public:
    using Error::Error;
};

/// An orbit walk exceeded the caller-supplied step cap.
class CapExceededError : public Error {
public:
    using Error::Error;
};

} // namespace spdh
