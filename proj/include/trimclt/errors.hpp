#ifndef TRIMCLT_ERRORS_HPP
#define TRIMCLT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trimclt {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct EpsilonOutOfRange : Error {
  explicit EpsilonOutOfRange(const std::string& msg) : Error(msg) {}
};

struct TrimTooLarge : Error {
  explicit TrimTooLarge(const std::string& msg) : Error(msg) {}
};

struct InfeasibleTrim : Error {
  explicit InfeasibleTrim(const std::string& msg) : Error(msg) {}
};

struct MomentDoesNotExist : Error {
  explicit MomentDoesNotExist(const std::string& msg) : Error(msg) {}
};

struct NotPsd : Error {
  explicit NotPsd(const std::string& msg) : Error(msg) {}
};

struct DegenerateNormSpec : Error {
  explicit DegenerateNormSpec(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& msg) : Error(msg) {}
};

}  // namespace trimclt

#endif
