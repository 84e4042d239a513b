#pragma once

#include <stdexcept>
#include <string>

namespace sfmp {

// Dimension / argument mismatches between tensors, permutations and configs.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid pipeline configuration (bad bit budget, group size, flags...).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// File-format failures carry a machine-checkable kind so callers can
// distinguish a corrupted magic from a short read.
enum class FormatErrorKind {
    bad_magic,
    bad_version,
    truncated,
    invariant,
    io,
};

struct FormatError : std::runtime_error {
    FormatError(FormatErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    FormatErrorKind kind() const { return kind_; }

private:
    FormatErrorKind kind_;
};

inline const char* format_error_kind_name(FormatErrorKind k) {
    switch (k) {
        case FormatErrorKind::bad_magic:   return "bad_magic";
        case FormatErrorKind::bad_version: return "bad_version";
        case FormatErrorKind::truncated:   return "truncated";
        case FormatErrorKind::invariant:   return "invariant";
        case FormatErrorKind::io:          return "io";
    }
    return "unknown";
}

}  // namespace sfmp
