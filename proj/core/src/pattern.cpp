#include "mgraphon/pattern.hpp"

#include <charconv>
#include <stdexcept>

namespace mgraphon {

Pattern::Pattern(std::size_t k, std::vector<std::uint32_t> adjacency) : k_(k), a_(std::move(adjacency)) {
  if (a_.size() != k_ * k_) throw std::invalid_argument("Pattern: adjacency must be k x k");
  for (std::size_t i = 0; i < k_; ++i) {
    if (at(i, i) % 2 != 0) throw std::invalid_argument("Pattern: diagonal entries must be even");
    for (std::size_t j = 0; j < i; ++j)
      if (at(i, j) != at(j, i)) throw std::invalid_argument("Pattern: adjacency must be symmetric");
  }
}

Pattern Pattern::empty(std::size_t k) { return Pattern(k, std::vector<std::uint32_t>(k * k, 0)); }

Pattern Pattern::edge_bundle(std::uint32_t r) { return Pattern(2, {0, r, r, 0}); }

Pattern Pattern::loops(std::uint32_t r) { return Pattern(1, {2 * r}); }

Pattern Pattern::from_upper(std::size_t k, const std::vector<std::uint32_t>& upper) {
  if (upper.size() != k * (k + 1) / 2) throw std::invalid_argument("Pattern: upper triangle has wrong length");
  std::vector<std::uint32_t> a(k * k, 0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      a[i * k + j] = upper[pos];
      a[j * k + i] = upper[pos];
      ++pos;
    }
  return Pattern(k, std::move(a));
}

namespace {

std::uint32_t parse_uint(std::string_view s, std::string_view whole) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("cannot parse pattern '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Pattern Pattern::parse(std::string_view text) {
  if (text == "triangle") return from_upper(3, {0, 1, 1, 0, 1, 0});
  if (text == "path3") return from_upper(3, {0, 1, 0, 0, 1, 0});
  if (text.starts_with("K2_")) return edge_bundle(parse_uint(text.substr(3), text));
  if (text.starts_with("L_")) return loops(parse_uint(text.substr(2), text));
  if (text.starts_with("empty_")) return empty(parse_uint(text.substr(6), text));
  if (text.starts_with("adj:")) {
    std::string_view rest = text.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("cannot parse pattern '" + std::string(text) + "'");
    const std::size_t k = parse_uint(rest.substr(0, colon), text);
    std::vector<std::uint32_t> upper;
    std::string_view list = rest.substr(colon + 1);
    while (!list.empty()) {
      const auto comma = list.find(',');
      upper.push_back(parse_uint(list.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    return from_upper(k, upper);
  }
  throw std::invalid_argument("unknown pattern '" + std::string(text) + "'");
}

std::uint64_t Pattern::num_edges() const {
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = i + 1; j < k_; ++j) e += at(i, j);
  return e;
}

std::uint64_t Pattern::num_loops() const {
  std::uint64_t l = 0;
  for (std::size_t i = 0; i < k_; ++i) l += at(i, i) / 2;
  return l;
}

bool Pattern::is_simple() const {
  for (std::size_t i = 0; i < k_; ++i) {
    if (at(i, i) != 0) return false;
    for (std::size_t j = i + 1; j < k_; ++j)
      if (at(i, j) > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> Pattern::upper_triangle() const {
  std::vector<std::uint32_t> upper;
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = i; j < k_; ++j) upper.push_back(at(i, j));
  return upper;
}

Pattern Pattern::relabeled(const std::vector<std::size_t>& perm) const {
  if (perm.size() != k_) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::uint32_t> b(k_ * k_, 0);
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = 0; j < k_; ++j) b[perm[i] * k_ + perm[j]] = at(i, j);
  return Pattern(k_, std::move(b));
}

std::string Pattern::name() const {
  if (k_ == 2 && at(0, 0) == 0 && at(1, 1) == 0) return "K2_" + std::to_string(at(0, 1));
  if (k_ == 1) return "L_" + std::to_string(at(0, 0) / 2);
  std::string s = "adj:" + std::to_string(k_) + ":";
  bool first = true;
  for (std::uint32_t v : upper_triangle()) {
    if (!first) s += ',';
    s += std::to_string(v);
    first = false;
  }
  return s;
}

PatternEnumerator::PatternEnumerator(std::size_t max_vertices) : max_vertices_(max_vertices) {}

namespace {

// Appends every upper-triangular tuple over `slots` cells whose multiplicity
// units sum to `total`, in lexicographic order of the a-values. Diagonal cells
// hold a_ii = 2 x units, which preserves the order of the unit counts.
void compositions(std::size_t k, std::uint64_t total, std::vector<Pattern>& out) {
  const std::size_t slots = k * (k + 1) / 2;
  std::vector<bool> diagonal;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) diagonal.push_back(i == j);
  std::vector<std::uint32_t> units(slots, 0);
  auto rec = [&](auto&& self, std::size_t idx, std::uint64_t left) -> void {
    if (idx + 1 == slots) {
      units[idx] = static_cast<std::uint32_t>(left);
      std::vector<std::uint32_t> upper(slots);
      for (std::size_t s = 0; s < slots; ++s) upper[s] = diagonal[s] ? 2 * units[s] : units[s];
      out.push_back(Pattern::from_upper(k, upper));
      return;
    }
    for (std::uint64_t c = 0; c <= left; ++c) {
      units[idx] = static_cast<std::uint32_t>(c);
      self(self, idx + 1, left - c);
    }
  };
  rec(rec, 0, total);
}

}  // namespace

void PatternEnumerator::refill() {
  buffer_.clear();
  pos_ = 0;
  while (buffer_.empty()) {
    ++size_;
    for (std::size_t k = 1; k <= size_; ++k) {
      if (max_vertices_ != 0 && k > max_vertices_) break;
      compositions(k, size_ - k, buffer_);
    }
  }
}

Pattern PatternEnumerator::next() {
  if (pos_ >= buffer_.size()) refill();
  return buffer_[pos_++];
}

std::vector<Pattern> first_patterns(std::size_t count, std::size_t max_vertices) {
  PatternEnumerator e(max_vertices);
  std::vector<Pattern> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(e.next());
  return out;
}

}  // namespace mgraphon
