#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace nilfill {

// Base class for all structured failures raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct JacobiViolated : Error {
  int i, j, k;
  JacobiViolated(int i_, int j_, int k_, const std::string& detail)
      : Error("Jacobi identity violated on triple (" + std::to_string(i_) + "," +
              std::to_string(j_) + "," + std::to_string(k_) + "): " + detail),
        i(i_), j(j_), k(k_) {}
};

struct NotNilpotent : Error {
  explicit NotNilpotent(const std::string& detail)
      : Error("algebra is not nilpotent: " + detail) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& detail)
      : Error("dimension mismatch: " + detail) {}
};

struct NotACycle : Error {
  explicit NotACycle(const std::string& detail) : Error("chain is not a cycle: " + detail) {}
};

struct OriginNotInSupport : Error {
  OriginNotInSupport() : Error("support does not contain the origin (translate first)") {}
};

struct NotConnected : Error {
  explicit NotConnected(int components)
      : Error("expected a connected cycle, found " + std::to_string(components) +
              " components") {}
};

namespace detail {
inline std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

struct NonConvergent : Error {
  double last_value, previous_value;
  NonConvergent(const std::string& where, double last, double prev)
      : Error(where + " did not converge: last=" + detail::fmt_g(last) +
              " previous=" + detail::fmt_g(prev)),
        last_value(last), previous_value(prev) {}
};

struct DimensionUnsupported : Error {
  explicit DimensionUnsupported(const std::string& detail)
      : Error("dimension unsupported: " + detail) {}
};

struct BoundaryNotOnGrid : Error {
  explicit BoundaryNotOnGrid(const std::string& detail)
      : Error("boundary is not a grid chain: " + detail) {}
};

struct BallTooLarge : Error {
  explicit BallTooLarge(std::size_t size, std::size_t cap)
      : Error("BFS ball exceeded cap: " + std::to_string(size) + " > " + std::to_string(cap)) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& detail) : Error("parse error: " + detail) {}
};

}  // namespace nilfill
