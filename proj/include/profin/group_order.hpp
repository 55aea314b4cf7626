#ifndef PROFIN_GROUP_ORDER_HPP
#define PROFIN_GROUP_ORDER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace profin
{

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

inline std::map<std::uint64_t, unsigned> factorize(std::uint64_t n)
{
  std::map<std::uint64_t, unsigned> f;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1)
    ++f[n];
  return f;
}

/// Exact group order kept as a prime factorisation, so orders of large
/// iterated wreath products never overflow.
class GroupOrder
{
public:
  GroupOrder() = default;
  GroupOrder(std::uint64_t n)
  {
    if (n == 0)
      throw invalid_input("group order must be positive");
    factors_ = factorize(n);
  }

  const std::map<std::uint64_t, unsigned> &factors() const noexcept { return factors_; }

  unsigned valuation(std::uint64_t p) const
  {
    auto it = factors_.find(p);
    return it == factors_.end() ? 0u : it->second;
  }

  std::vector<std::uint64_t> primes() const
  {
    std::vector<std::uint64_t> r;
    for (auto &[p, e] : factors_)
      r.push_back(p);
    return r;
  }

  /// Natural logarithm of the order; for comparisons only.
  double log() const
  {
    double r = 0;
    for (auto &[p, e] : factors_)
      r += e * std::log(static_cast<double>(p));
    return r;
  }

  bool is_one() const noexcept { return factors_.empty(); }

  bool is_p_power(std::uint64_t p) const
  {
    return factors_.empty() || (factors_.size() == 1 && factors_.begin()->first == p);
  }

  GroupOrder p_part(std::uint64_t p) const
  {
    GroupOrder r;
    if (auto e = valuation(p))
      r.factors_[p] = e;
    return r;
  }

  GroupOrder p_prime_part(std::uint64_t p) const
  {
    GroupOrder r = *this;
    r.factors_.erase(p);
    return r;
  }

  bool divides(const GroupOrder &other) const
  {
    for (auto &[p, e] : factors_)
      if (other.valuation(p) < e)
        return false;
    return true;
  }

  GroupOrder &operator*=(const GroupOrder &o)
  {
    for (auto &[p, e] : o.factors_)
      factors_[p] += e;
    return *this;
  }

  friend GroupOrder operator*(GroupOrder a, const GroupOrder &b) { return a *= b; }

  /// Exact quotient; throws when `b` does not divide `a`.
  friend GroupOrder operator/(GroupOrder a, const GroupOrder &b)
  {
    for (auto &[p, e] : b.factors_) {
      auto it = a.factors_.find(p);
      if (it == a.factors_.end() || it->second < e)
        throw invalid_input("order quotient is not integral");
      it->second -= e;
      if (it->second == 0)
        a.factors_.erase(it);
    }
    return a;
  }

  std::optional<std::uint64_t> to_u64() const
  {
    std::uint64_t r = 1;
    for (auto &[p, e] : factors_)
      for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p)
          return std::nullopt;
        r *= p;
      }
    return r;
  }

  /// Value as an integer; throws cap_exceeded if it exceeds `limit`.
  std::uint64_t value(std::uint64_t limit = UINT64_MAX, const char *cap = "order") const
  {
    auto v = to_u64();
    if (!v || *v > limit)
      throw cap_exceeded(cap, limit, "group order " + to_string() + " too large");
    return *v;
  }

  std::string to_string() const
  {
    // base 10^9 limbs, little endian
    std::vector<std::uint32_t> limbs{1};
    for (auto &[p, e] : factors_)
      for (unsigned i = 0; i < e; ++i) {
        std::uint64_t carry = 0;
        for (auto &l : limbs) {
          std::uint64_t cur = static_cast<std::uint64_t>(l) * p + carry;
          l = static_cast<std::uint32_t>(cur % 1'000'000'000u);
          carry = cur / 1'000'000'000u;
        }
        while (carry) {
          limbs.push_back(static_cast<std::uint32_t>(carry % 1'000'000'000u));
          carry /= 1'000'000'000u;
        }
      }
    std::string s = std::to_string(limbs.back());
    for (std::size_t i = limbs.size() - 1; i-- > 0;) {
      std::string part = std::to_string(limbs[i]);
      s += std::string(9 - part.size(), '0') + part;
    }
    return s;
  }

  friend bool operator==(const GroupOrder &, const GroupOrder &) = default;

private:
  std::map<std::uint64_t, unsigned> factors_;
};

/// Exponent of p in n! (Legendre).
inline unsigned legendre(std::uint64_t n, std::uint64_t p)
{
  unsigned e = 0;
  for (std::uint64_t q = p; q <= n; q *= p) {
    e += static_cast<unsigned>(n / q);
    if (q > n / p)
      break;
  }
  return e;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e)
{
  std::uint64_t r = 1;
  while (e--) {
    if (r > UINT64_MAX / b)
      throw cap_exceeded("integer", UINT64_MAX, "power overflows");
    r *= b;
  }
  return r;
}

} // namespace profin

#endif
