#pragma once

#include <stdexcept>
#include <string>

namespace ctembed {

// Failure classes, each mapped to its own process exit code by the CLI.
enum class errc {
  invalid_input,   // bad arguments, malformed files, bad config
  degenerate,      // data-dependent numeric degeneracy (duplicates, disconnection, flat curves)
  convergence,     // iterative solver hit its cap
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(errc::invalid_input, what);
}
[[noreturn]] inline void throw_degenerate(const std::string& what) {
  throw Error(errc::degenerate, what);
}
[[noreturn]] inline void throw_convergence(const std::string& what) {
  throw Error(errc::convergence, what);
}

}  // namespace ctembed
