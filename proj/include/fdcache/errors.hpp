// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdcache {

/// A precondition on an argument was violated.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A ball query reaches outside the window a point field was sampled in.
class WindowTooSmall : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Quadrature or series evaluation failed to reach its tolerance.
class NumericalError : public std::runtime_error {
  public:
    NumericalError(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what), achieved_(achieved_tolerance) {}

    double achieved_tolerance() const noexcept { return achieved_; }

  private:
    double achieved_;
};

/// Configuration text could not be parsed or failed validation.
///
/// `line()` is 0 when the error is not tied to a line (e.g. cross-field
/// validation); `field()` is empty when no single key is at fault.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& what, std::size_t line = 0, std::string field = {})
        : std::runtime_error(what), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::size_t line_;
    std::string field_;
};

class IoError : public std::runtime_error {
  public:
    IoError(const std::string& what, std::string path)
        : std::runtime_error(what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

}  // namespace fdcache
