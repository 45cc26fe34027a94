#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include "homcount/error.hpp"

namespace homcount {

// Size and count limits for the exhaustive procedures. Passed by value; there
// is no process-wide state.
struct Caps {
  std::size_t canonical_size = 8;          // universe size for canonical_form
  std::size_t partition_size = 8;          // universe size for quotient posets
  std::size_t structure_count = 1'000'000; // canonical representatives per enumeration
  std::size_t quotient_elements = 4096;    // elements of a materialised quotient poset
  std::size_t quotient_enumeration = std::size_t{1} << 20;  // streamed quotient classes
  std::size_t treewidth_size = 10;         // exact tree-width
  std::size_t tree_nodes = 1'000'000;      // truncated tree size
};

// Defaults, with HOMCOUNT_CAP overriding the structure-count cap.
inline Caps caps_from_environment() {
  Caps caps;
  if (const char* env = std::getenv("HOMCOUNT_CAP"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size() || v == 0) throw std::invalid_argument("cap");
      caps.structure_count = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("HOMCOUNT_CAP is not a positive integer: ") + env);
    }
  }
  return caps;
}

}  // namespace homcount
