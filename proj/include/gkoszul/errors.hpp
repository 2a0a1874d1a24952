#pragma once

#include <stdexcept>
#include <string>

namespace gkoszul {

struct DegreeMismatch : std::runtime_error {
  explicit DegreeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct WellDefinednessViolation : std::runtime_error {
  explicit WellDefinednessViolation(const std::string& what) : std::runtime_error(what) {}
};

struct CompositionNonzero : std::runtime_error {
  explicit CompositionNonzero(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gkoszul
