#ifndef PROFIN_PERMUTATION_HPP
#define PROFIN_PERMUTATION_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace profin
{

using point_t = std::uint32_t;

/// A bijection of {0, ..., degree-1}. Points act on the right: x^(ab) = (x^a)^b,
/// so `a * b` means "apply a, then b". All text I/O is 1-based cycle notation.
class Permutation
{
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), point_t{0});
  }

  explicit Permutation(std::vector<point_t> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (point_t x : images_) {
      if (x >= images_.size() || seen[x])
        throw invalid_input("image list is not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Parses "(1 2 3)(4 5)"; "()" and the empty string are the identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  /// Builds a single cycle from 0-based points.
  static Permutation cycle(std::size_t degree, std::span<const point_t> points)
  {
    Permutation p(degree);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] >= degree)
        throw invalid_input("cycle point out of range");
      p.images_[points[i]] = points[(i + 1) % points.size()];
    }
    return Permutation(std::move(p.images_));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  point_t operator[](point_t x) const noexcept { return images_[x]; }
  const std::vector<point_t> &images() const noexcept { return images_; }

  bool is_identity() const noexcept
  {
    for (point_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation operator*(const Permutation &rhs) const
  {
    check_degree(rhs);
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[i] = rhs.images_[images_[i]];
    return r;
  }

  Permutation &operator*=(const Permutation &rhs) { return *this = *this * rhs; }

  Permutation inverse() const
  {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[images_[i]] = static_cast<point_t>(i);
    return r;
  }

  Permutation pow(std::int64_t e) const
  {
    Permutation base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    Permutation r(degree());
    while (n) {
      if (n & 1u)
        r = r * base;
      base = base * base;
      n >>= 1u;
    }
    return r;
  }

  /// g^-1 * this * g
  Permutation conjugate(const Permutation &g) const
  {
    check_degree(g);
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[g.images_[i]] = g.images_[images_[i]];
    return r;
  }

  /// a^-1 b^-1 a b
  static Permutation commutator(const Permutation &a, const Permutation &b)
  {
    return a.inverse() * b.inverse() * a * b;
  }

  std::vector<std::size_t> cycle_lengths() const
  {
    std::vector<std::size_t> lengths(images_.size(), 0);
    std::vector<bool> done(images_.size(), false);
    for (point_t i = 0; i < images_.size(); ++i) {
      if (done[i])
        continue;
      std::size_t len = 0;
      for (point_t j = i; !done[j]; j = images_[j]) {
        done[j] = true;
        ++len;
      }
      for (point_t j = i;;) {
        lengths[j] = len;
        j = images_[j];
        if (j == i)
          break;
      }
    }
    return lengths;
  }

  /// Element order. Throws if it does not fit in 64 bits.
  std::uint64_t order() const
  {
    std::uint64_t result = 1;
    std::vector<bool> done(images_.size(), false);
    for (point_t i = 0; i < images_.size(); ++i) {
      if (done[i])
        continue;
      std::uint64_t len = 0;
      for (point_t j = i; !done[j]; j = images_[j]) {
        done[j] = true;
        ++len;
      }
      std::uint64_t g = std::gcd(result, len);
      if (result / g > UINT64_MAX / len)
        throw cap_exceeded("element-order", UINT64_MAX, "permutation order overflows");
      result = result / g * len;
    }
    return result;
  }

  bool is_even() const
  {
    std::size_t transpositions = 0;
    std::vector<bool> done(images_.size(), false);
    for (point_t i = 0; i < images_.size(); ++i) {
      if (done[i])
        continue;
      std::size_t len = 0;
      for (point_t j = i; !done[j]; j = images_[j]) {
        done[j] = true;
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0;
  }

  std::string to_cycles() const
  {
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (point_t i = 0; i < images_.size(); ++i) {
      if (done[i] || images_[i] == i)
        continue;
      out += '(';
      for (point_t j = i; !done[j]; j = images_[j]) {
        done[j] = true;
        if (j != i)
          out += ' ';
        out += std::to_string(j + 1);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
  void check_degree(const Permutation &other) const
  {
    if (other.degree() != degree())
      throw invalid_input("degree mismatch: " + std::to_string(degree()) + " vs " +
                          std::to_string(other.degree()));
  }

  std::vector<point_t> images_;
};

struct PermutationHash
{
  std::size_t operator()(const Permutation &p) const noexcept
  {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (point_t x : p.images()) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline Permutation Permutation::from_cycles(std::string_view text, std::size_t degree)
{
  std::vector<point_t> images(degree);
  std::iota(images.begin(), images.end(), point_t{0});
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw invalid_input("expected '(' in cycle notation at offset " + std::to_string(i));
    ++i;
    std::vector<point_t> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size())
        throw invalid_input("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw invalid_input("unexpected character '" + std::string(1, text[i]) +
                            "' in cycle notation");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > degree)
          break;
        ++i;
      }
      if (v == 0 || v > degree)
        throw invalid_input("point out of range 1.." + std::to_string(degree));
      point_t x = static_cast<point_t>(v - 1);
      if (used[x])
        throw invalid_input("point " + std::to_string(v) + " repeated in cycle notation");
      used[x] = true;
      cyc.push_back(x);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      images[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  return Permutation(std::move(images));
}

} // namespace profin

template <> struct std::hash<profin::Permutation> : profin::PermutationHash
{};

#endif
