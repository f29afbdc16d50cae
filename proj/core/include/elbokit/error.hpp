// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elbokit {

/// Shapes that do not line up. Always a caller bug.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (p <= 0, t <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation produced NaN or infinity. `index()` names the offending
/// draw, datum or abscissa position when one is known.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, std::size_t index = npos)
        : std::runtime_error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t index_;
};

/// Malformed on-disk data (dataset CSV, checkpoint JSON).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line) {}

    /// 1-based line number, 0 when not applicable.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

}  // namespace detail
}  // namespace elbokit
