#ifndef SO3KIT_ERRORS_HPP
#define SO3KIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace so3kit {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonOrthogonalInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BandwidthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegreeOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotASubgroup : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizeLimitExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a supplied kernel fails the induced-representation
// equivariance precondition; carries the violating (h, x) pair.
struct KernelNotEquivariant : std::invalid_argument {
  KernelNotEquivariant(const std::string& what, int h, int x)
      : std::invalid_argument(what), subgroup_element(h), coset(x) {}
  int subgroup_element;
  int coset;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
  long line_number;
};

}  // namespace so3kit

#endif
