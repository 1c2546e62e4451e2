// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gosafe {

// Invalid or inconsistent user configuration. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime: diverged integration, non-finite posterior,
// Gram factorization that survives no jitter level. CLI exit code 3.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

// The configured initial safe set is empty or unusable. CLI exit code 4.
class SeedError : public std::runtime_error {
 public:
  explicit SeedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gosafe
