#include "trapbound/error.hpp"

#include <sstream>

namespace trapbound {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Argument: return "argument error";
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Precondition: return "precondition error";
    case ErrorCode::NoRoot: return "no root found";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::NotDifferentiable: return "not differentiable";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

SyntaxError::SyntaxError(std::size_t offset, const std::string& expected)
    : Error(ErrorCode::Syntax, "syntax error at offset " +
                                   std::to_string(offset) + ": " + expected),
      offset_(offset) {}

namespace {
std::string domain_message(const std::string& subexpr, double at,
                           const std::string& why) {
  std::ostringstream os;
  os.precision(17);
  os << "domain error in '" << subexpr << "' at s=" << at << ": " << why;
  return os.str();
}
}  // namespace

DomainError::DomainError(const std::string& subexpr, double at,
                         const std::string& why)
    : Error(ErrorCode::Domain, domain_message(subexpr, at, why)),
      subexpr_(subexpr),
      at_(at) {}

}  // namespace trapbound
