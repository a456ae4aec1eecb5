#ifndef CHEAPTALK_ERRORS_HPP
#define CHEAPTALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cheaptalk {

// Invalid configuration (bad parameter, malformed file, violated invariant).
// The CLI maps this to exit code 2; everything else nonrecoverable maps to 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cheaptalk

#endif
