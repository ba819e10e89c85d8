#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace cmdp {

/// Opaque state token. Ordering is "natural": maximal digit runs compare by
/// numeric value, so "r:2" < "r:10". Ties fall back to plain lexicographic order.
class StateId {
 public:
  StateId() = default;
  StateId(std::string token) : token_(std::move(token)) {}  // NOLINT(google-explicit-constructor)
  StateId(const char* token) : token_(token) {}             // NOLINT(google-explicit-constructor)
  static StateId of_index(unsigned long long n) { return StateId(std::to_string(n)); }

  const std::string& str() const noexcept { return token_; }
  bool empty() const noexcept { return token_.empty(); }

  friend bool operator==(const StateId& a, const StateId& b) noexcept { return a.token_ == b.token_; }
  friend std::strong_ordering operator<=>(const StateId& a, const StateId& b) noexcept;

 private:
  std::string token_;
};

int natural_compare(std::string_view a, std::string_view b) noexcept;

}  // namespace cmdp

template <>
struct std::hash<cmdp::StateId> {
  std::size_t operator()(const cmdp::StateId& s) const noexcept { return std::hash<std::string>{}(s.str()); }
};
