#include "liouville/partitions.hpp"

#include <charconv>
#include <stdexcept>

namespace liouville {

YoungDiagram::YoungDiagram(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw std::invalid_argument("Young diagram parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("Young diagram parts must be non-increasing");
    }
    length_ += parts_[i];
  }
}

std::string YoungDiagram::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

YoungDiagram YoungDiagram::parse(std::string_view text) {
  std::vector<int> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view token = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw std::invalid_argument("malformed Young diagram: " + std::string(text));
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return YoungDiagram(std::move(parts));
}

namespace {

void enumerate(int remaining, int max_part, std::vector<int>& prefix,
               std::vector<YoungDiagram>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    enumerate(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<YoungDiagram> young_diagrams(int n) {
  if (n < 0) throw std::invalid_argument("young_diagrams: level must be non-negative");
  std::vector<YoungDiagram> out;
  std::vector<int> prefix;
  enumerate(n, n, prefix, out);
  return out;
}

std::uint64_t partition_count(int n) {
  if (n < 0) throw std::invalid_argument("partition_count: level must be non-negative");
  // Coin-change recurrence over the largest allowed part.
  std::vector<std::uint64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int m = part; m <= n; ++m) p[m] += p[m - part];
  }
  return p[n];
}

}  // namespace liouville
