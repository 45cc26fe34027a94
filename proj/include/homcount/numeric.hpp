#pragma once

#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace homcount {

// Exact integers for morphism counts and Möbius values.
using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Leaf counter for exhaustive searches: a machine word that spills into a
// big integer whenever it reaches 2^63.
class CountAccumulator {
 public:
  void increment() {
    if (++small_ == kSpill) {
      big_ += small_;
      small_ = 0;
    }
  }
  Count value() const { return big_ + small_; }

 private:
  static constexpr std::uint64_t kSpill = std::uint64_t{1} << 63;
  std::uint64_t small_ = 0;
  Count big_ = 0;
};

inline std::uint64_t to_u64(const Count& c) {
  return c.convert_to<std::uint64_t>();
}

}  // namespace homcount
