#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpasm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyMesh : public Error {
 public:
  EmptyMesh() : Error("mesh has no cells") {}
};

/// Two cells meet in something other than a full face, a vertex or nothing.
class ConformityError : public Error {
 public:
  ConformityError(std::size_t a, std::size_t b, const std::string& what)
      : Error("cells " + std::to_string(a) + " and " + std::to_string(b) + ": " + what),
        first(a),
        second(b) {}
  std::size_t first;
  std::size_t second;
};

class GradingError : public Error {
 public:
  using Error::Error;
};

class MeshFormatError : public Error {
 public:
  MeshFormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

class NonConvergence : public Error {
 public:
  NonConvergence(int degree, int node)
      : Error("Newton iteration for LGL node " + std::to_string(node) + " of degree " +
              std::to_string(degree) + " did not converge"),
        node_index(node) {}
  int node_index;
};

class DegreeTooSmall : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

class CholeskyFailure : public Error {
 public:
  using Error::Error;
};

class BreakdownError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpasm
