#ifndef PROFIN_CONSTRUCTIONS_HPP
#define PROFIN_CONSTRUCTIONS_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include "fp_linear.hpp"
#include "group_order.hpp"
#include "perm_group.hpp"

namespace profin
{

/// C_n acting regularly on n points.
inline PermGroup cyclic_group(std::size_t n, const Limits &limits = {})
{
  if (n == 0)
    throw invalid_input("cyclic group needs n >= 1");
  std::vector<point_t> pts(n);
  std::iota(pts.begin(), pts.end(), point_t{0});
  return PermGroup(n, {Permutation::cycle(n, pts)}, limits);
}

inline PermGroup symmetric_group(std::size_t n, const Limits &limits = {})
{
  if (n == 0)
    throw invalid_input("symmetric group needs n >= 1");
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<point_t> pts(n);
    std::iota(pts.begin(), pts.end(), point_t{0});
    const point_t t[2] = {0, 1};
    gens.push_back(Permutation::cycle(n, t));
    gens.push_back(Permutation::cycle(n, pts));
  }
  return PermGroup(n, std::move(gens), limits);
}

inline PermGroup alternating_group(std::size_t n, const Limits &limits = {})
{
  if (n == 0)
    throw invalid_input("alternating group needs n >= 1");
  std::vector<Permutation> gens;
  for (point_t i = 2; i < n; ++i) {
    const point_t c[3] = {0, 1, i};
    gens.push_back(Permutation::cycle(n, c));
  }
  return PermGroup(n, std::move(gens), limits);
}

/// Symmetries of the regular n-gon: order 2n on n points (n >= 3).
inline PermGroup dihedral_group(std::size_t n, const Limits &limits = {})
{
  if (n < 3)
    throw invalid_input("dihedral group needs n >= 3 points");
  std::vector<point_t> pts(n);
  std::iota(pts.begin(), pts.end(), point_t{0});
  std::vector<point_t> refl(n);
  for (std::size_t i = 0; i < n; ++i)
    refl[i] = static_cast<point_t>((n - i) % n);
  return PermGroup(n, {Permutation::cycle(n, pts), Permutation(refl)}, limits);
}

/// Embeds g into degree `degree`, moving point x to x + offset.
inline Permutation shift(const Permutation &g, std::size_t degree, std::size_t offset)
{
  std::vector<point_t> img(degree);
  std::iota(img.begin(), img.end(), point_t{0});
  for (std::size_t i = 0; i < g.degree(); ++i)
    img[i + offset] = static_cast<point_t>(g[static_cast<point_t>(i)] + offset);
  return Permutation(std::move(img));
}

/// A x B acting on deg(A) + deg(B) points.
inline PermGroup direct_product(const PermGroup &a, const PermGroup &b, const Limits &limits = {})
{
  const std::size_t n = a.degree() + b.degree();
  std::vector<Permutation> gens;
  for (auto &g : a.generators())
    gens.push_back(shift(g, n, 0));
  for (auto &g : b.generators())
    gens.push_back(shift(g, n, a.degree()));
  return PermGroup(n, std::move(gens), limits);
}

/// Imprimitive wreath product A wr top: m copies of A on consecutive blocks of
/// deg(A) points, permuted by `top` (degree m). Point (block j, x) is j*deg(A) + x.
inline PermGroup wreath_imprimitive(const PermGroup &a, std::size_t copies, const PermGroup &top,
                                    const Limits &limits = {})
{
  if (top.degree() != copies)
    throw invalid_input("top group degree " + std::to_string(top.degree()) +
                        " does not match number of copies " + std::to_string(copies));
  const std::size_t d = a.degree();
  const std::size_t n = d * copies;
  require_cap("degree", n, limits.degree, "wreath product degree");
  std::vector<Permutation> gens;
  for (point_t j = 0; j < copies; ++j) {
    // one copy of the base per top orbit suffices
    bool first_in_orbit = true;
    for (point_t y : top.orbit(j))
      if (y < j) {
        first_in_orbit = false;
        break;
      }
    if (!first_in_orbit)
      continue;
    for (auto &g : a.generators())
      gens.push_back(shift(g, n, j * d));
  }
  for (auto &t : top.generators()) {
    std::vector<point_t> img(n);
    for (std::size_t j = 0; j < copies; ++j)
      for (std::size_t x = 0; x < d; ++x)
        img[j * d + x] = static_cast<point_t>(t[static_cast<point_t>(j)] * d + x);
    gens.push_back(Permutation(std::move(img)));
  }
  return PermGroup(n, std::move(gens), limits);
}

namespace detail
{

inline fp::Vector decode_point(std::size_t x, std::uint32_t p, std::size_t dim)
{
  fp::Vector v(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    v[k] = static_cast<std::uint32_t>(x % p);
    x /= p;
  }
  return v;
}

inline std::size_t encode_point(const fp::Vector &v, std::uint32_t p)
{
  std::size_t x = 0;
  for (std::size_t k = v.size(); k-- > 0;)
    x = x * p + v[k];
  return x;
}

} // namespace detail

/// Permutation of F_p^dim (points encoded base p, coordinate k = digit k)
/// induced by v -> vM.
inline Permutation linear_permutation(const fp::Matrix &m)
{
  const std::uint32_t p = m.prime();
  const std::size_t dim = m.rows();
  const std::size_t n = ipow(p, static_cast<unsigned>(dim));
  std::vector<point_t> img(n);
  for (std::size_t x = 0; x < n; ++x)
    img[x] = static_cast<point_t>(
      detail::encode_point(fp::act(detail::decode_point(x, p, dim), m), p));
  return Permutation(std::move(img));
}

/// Translation v -> v + e_k on F_p^dim.
inline Permutation translation_permutation(std::uint32_t p, std::size_t dim, std::size_t k)
{
  const std::size_t n = ipow(p, static_cast<unsigned>(dim));
  std::vector<point_t> img(n);
  for (std::size_t x = 0; x < n; ++x) {
    fp::Vector v = detail::decode_point(x, p, dim);
    v[k] = (v[k] + 1) % p;
    img[x] = static_cast<point_t>(detail::encode_point(v, p));
  }
  return Permutation(std::move(img));
}

/// Permutation matrix of g acting on the basis e_0..e_{n-1}: e_i -> e_{i^g}.
inline fp::Matrix permutation_matrix(const Permutation &g, std::uint32_t p)
{
  fp::Matrix m(g.degree(), g.degree(), p);
  for (point_t i = 0; i < g.degree(); ++i)
    m(i, g[i]) = 1;
  return m;
}

/// F_p^dim extended by the linear group generated by `mats`, acting on p^dim points.
inline PermGroup affine_semidirect(std::uint32_t p, std::size_t dim,
                                   const std::vector<fp::Matrix> &mats, const Limits &limits = {})
{
  if (!is_prime(p))
    throw invalid_input(std::to_string(p) + " is not prime");
  if (dim == 0)
    throw invalid_input("affine dimension must be positive");
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    n *= p;
    if (n > limits.degree)
      throw cap_exceeded("degree", limits.degree,
                         "affine group degree " + std::to_string(p) + "^" + std::to_string(dim));
  }
  std::vector<Permutation> gens;
  for (std::size_t k = 0; k < dim; ++k)
    gens.push_back(translation_permutation(p, dim, k));
  for (auto &m : mats) {
    if (m.rows() != dim || m.cols() != dim || m.prime() != p)
      throw invalid_input("matrix shape does not match affine dimension " + std::to_string(dim));
    if (!m.is_invertible())
      throw invalid_input("singular matrix over F_" + std::to_string(p));
    gens.push_back(linear_permutation(m));
  }
  return PermGroup(static_cast<std::size_t>(n), std::move(gens), limits);
}

} // namespace profin

#endif
