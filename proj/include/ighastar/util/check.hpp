#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace ighastar {

/// Violation of an internal algorithm invariant. CLI maps this to exit code 3.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// A SHIFT/ACTIVATE rule broke its contract (e.g. activated nothing while
/// dominant open vertices were available).
struct rule_contract_error : internal_error {
  using internal_error::internal_error;
};

/// Malformed input: file formats, configs, CLI arguments. Exit code 2.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A query or domain configuration that cannot be searched (start out of
/// bounds, start in collision, empty primitive set, ...).
struct query_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void check_failed(const char* expr, const char* file, int line,
                                      const std::string& msg) {
  std::ostringstream os;
  os << "invariant violated: " << expr << " at " << file << ":" << line;
  if (!msg.empty()) os << " (" << msg << ")";
  throw internal_error(os.str());
}
}  // namespace detail

}  // namespace ighastar

// Always-on invariant check; cheap enough for hot paths at desk scale.
#define IGH_CHECK(expr, msg)                                              \
  do {                                                                    \
    if (!(expr)) ::ighastar::detail::check_failed(#expr, __FILE__, __LINE__, (msg)); \
  } while (0)
