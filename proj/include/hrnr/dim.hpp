#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "hrnr/error.hpp"

namespace hrnr {

/// Finite(n) | Infinite. Used both as a multiplicity and as dim ran E(S).
class Dim {
 public:
  constexpr Dim() = default;
  static constexpr Dim finite(std::uint64_t n) { return Dim(n, false); }
  static constexpr Dim infinite() { return Dim(0, true); }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }
  constexpr std::uint64_t value() const { return n_; }

  constexpr Dim operator+(Dim o) const {
    if (inf_ || o.inf_) return infinite();
    return finite(n_ + o.n_);
  }
  constexpr Dim& operator+=(Dim o) { return *this = *this + o; }

  constexpr bool operator==(const Dim&) const = default;
  constexpr std::strong_ordering operator<=>(const Dim& o) const {
    if (inf_ != o.inf_) return inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return n_ <=> o.n_;
  }

  std::string str() const { return inf_ ? "inf" : std::to_string(n_); }

 private:
  constexpr Dim(std::uint64_t n, bool inf) : n_(n), inf_(inf) {}
  std::uint64_t n_ = 0;
  bool inf_ = false;
};

using Multiplicity = Dim;

/// k in N u {inf}, k >= 1.
class Rank {
 public:
  static constexpr Rank finite(std::uint64_t k) {
    if (k == 0) fail(ErrorKind::InvalidModel, "rank must be >= 1");
    return Rank(k, false);
  }
  static constexpr Rank infinity() { return Rank(0, true); }

  constexpr bool is_infinite() const { return inf_; }
  constexpr std::uint64_t value() const { return k_; }

  /// d >= k
  constexpr bool reached_by(Dim d) const {
    if (d.is_infinite()) return true;
    return !inf_ && d.value() >= k_;
  }

  constexpr bool operator==(const Rank&) const = default;
  std::string str() const { return inf_ ? "inf" : std::to_string(k_); }

 private:
  constexpr Rank(std::uint64_t k, bool inf) : k_(k), inf_(inf) {}
  std::uint64_t k_ = 1;
  bool inf_ = false;
};

}  // namespace hrnr
