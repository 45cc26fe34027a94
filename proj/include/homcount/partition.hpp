#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "homcount/error.hpp"
#include "homcount/numeric.hpp"

namespace homcount {

// A set partition of {0..n-1}, stored as its restricted growth string:
// block_of(0) == 0 and block_of(i) <= 1 + max(block_of(0..i-1)).
class Partition {
 public:
  Partition() = default;

  static Partition discrete(std::size_t n) {
    Partition p;
    p.block_of_.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.block_of_[i] = static_cast<std::uint32_t>(i);
    p.blocks_ = static_cast<std::uint32_t>(n);
    return p;
  }

  static Partition indiscrete(std::size_t n) {
    Partition p;
    p.block_of_.assign(n, 0);
    p.blocks_ = n == 0 ? 0 : 1;
    return p;
  }

  // Normalises arbitrary labels (equal label = same block) into RGS form.
  template <class Label>
  static Partition from_labels(std::span<const Label> labels) {
    Partition p;
    p.block_of_.resize(labels.size());
    std::vector<std::pair<Label, std::uint32_t>> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::uint32_t block = p.blocks_;
      for (const auto& [label, b] : seen) {
        if (label == labels[i]) {
          block = b;
          break;
        }
      }
      if (block == p.blocks_) {
        seen.emplace_back(labels[i], block);
        ++p.blocks_;
      }
      p.block_of_[i] = block;
    }
    return p;
  }

  template <class Label>
  static Partition from_labels(const std::vector<Label>& labels) {
    return from_labels(std::span<const Label>(labels));
  }

  std::size_t size() const { return block_of_.size(); }
  std::uint32_t block_count() const { return blocks_; }
  std::uint32_t block_of(std::size_t i) const { return block_of_[i]; }
  std::span<const std::uint32_t> labels() const { return block_of_; }
  bool is_discrete() const { return blocks_ == block_of_.size(); }

  std::vector<std::vector<std::uint32_t>> blocks() const {
    std::vector<std::vector<std::uint32_t>> out(blocks_);
    for (std::size_t i = 0; i < block_of_.size(); ++i)
      out[block_of_[i]].push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  // True when every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const {
    if (coarser.size() != size()) return false;
    std::vector<std::uint32_t> image(blocks_, UINT32_MAX);
    for (std::size_t i = 0; i < block_of_.size(); ++i) {
      auto& slot = image[block_of_[i]];
      if (slot == UINT32_MAX)
        slot = coarser.block_of_[i];
      else if (slot != coarser.block_of_[i])
        return false;
    }
    return true;
  }

  // Blocks separated by '|', elements by spaces: "0 2|1".
  std::string to_string() const {
    std::string out;
    auto bl = blocks();
    for (std::size_t b = 0; b < bl.size(); ++b) {
      if (b) out += '|';
      for (std::size_t k = 0; k < bl[b].size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(bl[b][k]);
      }
    }
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.block_of_ <=> b.block_of_;
  }

 private:
  std::vector<std::uint32_t> block_of_;
  std::uint32_t blocks_ = 0;
};

// Kernel of a map: elements are in the same block iff they share an image.
template <class T>
Partition kernel_of(std::span<const T> map) {
  return Partition::from_labels(map);
}

// Visits every partition of an n-set once, in lexicographic RGS order.
template <class Visit>
void for_each_partition(std::size_t n, Visit&& visit) {
  if (n == 0) {
    visit(Partition::discrete(0));
    return;
  }
  std::vector<std::uint32_t> rgs(n, 0);
  std::vector<std::uint32_t> prefix_max(n, 0);
  while (true) {
    visit(Partition::from_labels(std::span<const std::uint32_t>(rgs)));
    // Increment the rightmost position that can still grow.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
}

inline Count bell_number(std::size_t n) {
  // Bell triangle.
  std::vector<Count> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Count> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace homcount
