#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace liouville {

/// Non-increasing list of positive integers. The empty diagram is allowed.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  /// Throws std::invalid_argument unless `parts` is non-increasing and positive.
  explicit YoungDiagram(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int length() const noexcept { return length_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }

  /// Comma-joined parts, "2,1,1"; the empty diagram serializes to "".
  std::string to_string() const;
  static YoungDiagram parse(std::string_view text);

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;

 private:
  std::vector<int> parts_;
  int length_ = 0;
};

/// All diagrams with |nu| = n in reverse-lexicographic order:
/// (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
std::vector<YoungDiagram> young_diagrams(int n);

/// Number of partitions p(n).
std::uint64_t partition_count(int n);

}  // namespace liouville
