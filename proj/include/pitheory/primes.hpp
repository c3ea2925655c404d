#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pitheory/error.hpp"

namespace pitheory {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::set<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::set<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.insert(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.insert(n);
  return out;
}

/// A set of primes π, given either explicitly or as the complement of {p}.
/// The complement form is resolved against the primes dividing a group order.
class PrimeSet {
 public:
  PrimeSet() = default;

  static PrimeSet of(std::set<std::uint64_t> primes) {
    for (auto p : primes)
      if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not a prime");
    PrimeSet s;
    s.primes_ = std::move(primes);
    return s;
  }

  static PrimeSet complement_of(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not a prime");
    PrimeSet s;
    s.complement_ = true;
    s.excluded_ = p;
    return s;
  }

  /// Parses "2,3" (explicit), "" or "{}" (empty set), or "p'5" (complement of 5).
  static PrimeSet parse(const std::string& spec) {
    std::string text;
    for (char c : spec)
      if (c != ' ') text += c;
    if (text.empty() || text == "{}") return PrimeSet{};
    if (text.size() > 2 && text[0] == 'p' && text[1] == '\'') {
      return complement_of(parse_number(text.substr(2), spec));
    }
    std::set<std::uint64_t> primes;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) primes.insert(parse_number(item, spec));
    return of(std::move(primes));
  }

  bool is_complement() const { return complement_; }
  std::uint64_t excluded_prime() const { return excluded_; }

  /// The primes of π that divide the given group order.
  std::set<std::uint64_t> resolve(std::uint64_t group_order) const {
    std::set<std::uint64_t> out;
    for (auto p : prime_divisors(group_order)) {
      if (complement_ ? p != excluded_ : primes_.contains(p)) out.insert(p);
    }
    return out;
  }

  /// π' relative to the group order, as an explicit set.
  PrimeSet complement_in(std::uint64_t group_order) const {
    std::set<std::uint64_t> out;
    auto mine = resolve(group_order);
    for (auto p : prime_divisors(group_order))
      if (!mine.contains(p)) out.insert(p);
    return of(std::move(out));
  }

  /// True iff every prime factor of n lies in π.
  bool contains_number(std::uint64_t n) const {
    for (auto p : prime_divisors(n)) {
      if (complement_ ? p == excluded_ : !primes_.contains(p)) return false;
    }
    return true;
  }

  std::string to_string() const {
    if (complement_) return "p'" + std::to_string(excluded_);
    std::string out;
    for (auto p : primes_) {
      if (!out.empty()) out += ",";
      out += std::to_string(p);
    }
    return out;
  }

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  static std::uint64_t parse_number(const std::string& item, const std::string& spec) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("malformed prime set '" + spec + "'");
    }
    return std::stoull(item);
  }

  bool complement_ = false;
  std::uint64_t excluded_ = 0;
  std::set<std::uint64_t> primes_;
};

/// Every subset of the prime divisors of n, then the complement of each
/// prime divisor; the default π menu for verification runs.
inline std::vector<PrimeSet> all_prime_sets(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (auto p : prime_divisors(n)) primes.push_back(p);
  std::vector<PrimeSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << primes.size()); ++mask) {
    std::set<std::uint64_t> s;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.insert(primes[i]);
    out.push_back(PrimeSet::of(std::move(s)));
  }
  for (auto p : primes) out.push_back(PrimeSet::complement_of(p));
  return out;
}

}  // namespace pitheory
