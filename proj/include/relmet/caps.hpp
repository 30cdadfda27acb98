#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace relmet {

/// Thrown when an operation would exceed a configured capacity limit.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when two values live on different ground sets.
class CarrierMismatch : public std::invalid_argument {
 public:
  explicit CarrierMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Capacity limits for the exponential enumerations. Everything in this
/// library is exact and desk-scale; the caps keep accidental blow-ups loud
/// instead of slow.
struct Caps {
  unsigned ground = 16;       // max ground-set size accepted from input
  unsigned hyperspace = 4;    // max base-set size for hyperspace constructions
  unsigned window = 32;       // max window size for valuation metrics
  unsigned completion = 6;    // max index size for meet completion
  unsigned enumeration = 4096;  // max members materialized from a structure
};

namespace detail {

inline Caps parse_caps(const char* env) {
  Caps c;
  if (env == nullptr) return c;
  std::string s(env);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t eq = s.find('=', pos);
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    if (eq == std::string::npos || eq > comma)
      throw std::invalid_argument("RELMET_CAPS: expected key=value pairs");
    std::string key = s.substr(pos, eq - pos);
    unsigned long val = std::stoul(s.substr(eq + 1, comma - eq - 1));
    if (key == "ground")
      c.ground = static_cast<unsigned>(val);
    else if (key == "hyper")
      c.hyperspace = static_cast<unsigned>(val);
    else if (key == "window")
      c.window = static_cast<unsigned>(val);
    else if (key == "completion")
      c.completion = static_cast<unsigned>(val);
    else if (key == "enumeration")
      c.enumeration = static_cast<unsigned>(val);
    else
      throw std::invalid_argument("RELMET_CAPS: unknown key '" + key + "'");
    pos = comma + 1;
  }
  return c;
}

}  // namespace detail

/// Process-wide caps, read once from RELMET_CAPS ("ground=16,hyper=4,...").
inline const Caps& caps() {
  static const Caps c = detail::parse_caps(std::getenv("RELMET_CAPS"));
  return c;
}

}  // namespace relmet
