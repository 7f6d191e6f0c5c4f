#ifndef TRA_ERRORS_HPP_
#define TRA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tra {

// Invalid configuration values (rejected before any compute).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values encountered during numeric work.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tra

#endif  // TRA_ERRORS_HPP_
