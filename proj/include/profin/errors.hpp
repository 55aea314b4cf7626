#ifndef PROFIN_ERRORS_HPP
#define PROFIN_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace profin
{

/// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad permutation, degree mismatch, a
/// subgroup that is not contained in its supposed overgroup, and so on.
class invalid_input : public error
{
public:
  using error::error;
};

/// A configured size bound was hit. The message names the bound.
class cap_exceeded : public error
{
public:
  cap_exceeded(std::string cap, std::uint64_t limit, std::string what)
    : error(what + " (cap " + cap + " = " + std::to_string(limit) + ")"),
      cap_(std::move(cap)), limit_(limit)
  {}

  const std::string &cap() const noexcept { return cap_; }
  std::uint64_t limit() const noexcept { return limit_; }

private:
  std::string cap_;
  std::uint64_t limit_;
};

/// Size bounds shared by all algorithms. Every operation that enumerates
/// elements or subgroups checks the relevant field before doing so.
struct Limits
{
  std::uint64_t degree = 4096;
  std::uint64_t enumeration = 1'000'000;
  std::uint64_t lattice = 100'000;
  std::uint64_t obstar = 2000;
  std::uint64_t aut = 512;
  std::uint64_t sylow_subgroups = 512;
  std::uint64_t seed = 0;
};

inline void require_cap(const char *cap, std::uint64_t value, std::uint64_t limit,
                        const std::string &what)
{
  if (value > limit)
    throw cap_exceeded(cap, limit, what + ": " + std::to_string(value));
}

} // namespace profin

#endif
