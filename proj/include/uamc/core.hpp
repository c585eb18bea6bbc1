#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace uamc {

/// Thrown when an operation's precondition on the model is violated
/// (undefined projection, missing sup, oversized model, ...).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact arithmetic for weights and act payoffs. No floats anywhere in the
/// model layer; strictness of a preference must never hinge on a tolerance.
/// Always normalized: positive denominator, lowest terms. Intermediate
/// products go through 128-bit integers; a result that leaves the 64-bit
/// range throws instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long n) : num_(n) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) {
    if (d == 0) throw ModelError("rational with zero denominator");
    *this = reduce(n, d);
  }

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ModelError("rational division by zero");
    return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
  }

 private:
  using i128 = __int128;

  static Rational reduce(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr i128 lo = std::numeric_limits<long long>::min();
    constexpr i128 hi = std::numeric_limits<long long>::max();
    if (n < lo || n > hi || d > hi) throw ModelError("rational overflow");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  long long num_ = 0;
  long long den_ = 1;
};

/// Identifier of a state-space within its lattice.
struct SpaceId {
  std::int32_t index = -1;

  constexpr bool valid() const { return index >= 0; }
  friend constexpr auto operator<=>(SpaceId, SpaceId) = default;
};

/// Identifier of a state. States are globally indexed; the owning space is
/// recoverable from the lattice in O(1). Spaces are disjoint, so a state
/// belongs to exactly one space.
struct StateId {
  std::int32_t index = -1;

  constexpr bool valid() const { return index >= 0; }
  friend constexpr auto operator<=>(StateId, StateId) = default;
};

/// Hard capacity for states per model. Exhaustive checking is the point of
/// this library; 64 states is far beyond what exhaustive event enumeration
/// can digest anyway, and it lets sets live in a single machine word.
inline constexpr int kMaxStates = 64;

/// A set of states of one model, as a bitmask over global state indices.
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr StateSet single(StateId s) { return StateSet(std::uint64_t{1} << s.index); }

  constexpr bool contains(StateId s) const { return (bits_ >> s.index) & 1; }
  constexpr void insert(StateId s) { bits_ |= std::uint64_t{1} << s.index; }
  constexpr void erase(StateId s) { bits_ &= ~(std::uint64_t{1} << s.index); }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }

  constexpr bool is_subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(StateSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr StateSet operator&(StateSet o) const { return StateSet(bits_ & o.bits_); }
  constexpr StateSet operator|(StateSet o) const { return StateSet(bits_ | o.bits_); }
  constexpr StateSet minus(StateSet o) const { return StateSet(bits_ & ~o.bits_); }
  constexpr StateSet& operator&=(StateSet o) { bits_ &= o.bits_; return *this; }
  constexpr StateSet& operator|=(StateSet o) { bits_ |= o.bits_; return *this; }

  friend constexpr bool operator==(StateSet, StateSet) = default;

  constexpr std::uint64_t bits() const { return bits_; }

  /// Calls f(StateId) for each member, in ascending index order.
  template <typename F>
  void for_each(F&& f) const {
    std::uint64_t rest = bits_;
    while (rest != 0) {
      int i = std::countr_zero(rest);
      f(StateId{i});
      rest &= rest - 1;
    }
  }

  std::vector<StateId> to_vector() const {
    std::vector<StateId> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](StateId s) { out.push_back(s); });
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Formats a rational as "p/q", or just "p" for integers.
inline std::string to_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) {
    s += '/';
    s += std::to_string(r.denominator());
  }
  return s;
}

}  // namespace uamc
