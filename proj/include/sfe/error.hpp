#ifndef SFE_ERROR_HPP
#define SFE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sfe {

enum class ErrorCode {
  syntax,        // expression parse failure
  domain,        // evaluation outside the domain (log/sqrt of negative, div by zero)
  config,        // bad parameters / violated precondition
  hypothesis,    // a sampled hypothesis failed (no-positive-G, ...)
  convergence,   // iteration budget exhausted
  io,            // file system
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace sfe

#endif
