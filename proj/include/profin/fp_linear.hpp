#ifndef PROFIN_FP_LINEAR_HPP
#define PROFIN_FP_LINEAR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace profin
{

/// Dense linear algebra over the prime field F_p, for the small dimensions
/// used by affine groups and Frattini quotients. Vectors are rows and
/// matrices act on the right: v -> vM.
namespace fp
{

using Vector = std::vector<std::uint32_t>;

class Matrix
{
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0)
  {}

  static Matrix identity(std::size_t n, std::uint32_t p)
  {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<std::int64_t>> &rows, std::uint32_t p)
  {
    if (rows.empty())
      throw invalid_input("empty matrix");
    Matrix m(rows.size(), rows.front().size(), p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw invalid_input("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) {
        std::int64_t v = rows[i][j] % static_cast<std::int64_t>(p);
        m(i, j) = static_cast<std::uint32_t>(v < 0 ? v + p : v);
      }
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t prime() const noexcept { return p_; }

  std::uint32_t &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const
  {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix operator*(const Matrix &b) const
  {
    if (cols_ != b.rows_ || p_ != b.p_)
      throw invalid_input("matrix shape mismatch");
    Matrix r(rows_, b.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint64_t a = (*this)(i, k);
        if (!a)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r(i, j) = static_cast<std::uint32_t>((r(i, j) + a * b(k, j)) % p_);
      }
    return r;
  }

  std::size_t rank() const;

  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> data_;
};

inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p)
{
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1u)
      r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

inline Vector act(const Vector &v, const Matrix &m)
{
  Vector r(m.cols(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i])
      continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      r[j] = static_cast<std::uint32_t>((r[j] + static_cast<std::uint64_t>(v[i]) * m(i, j)) %
                                        m.prime());
  }
  return r;
}

/// Row-reduced basis of a subspace, with membership and coordinates.
class Subspace
{
public:
  Subspace(std::size_t dim, std::uint32_t p) : dim_(dim), p_(p) {}

  std::size_t dimension() const noexcept { return basis_.size(); }
  std::size_t ambient() const noexcept { return dim_; }
  const std::vector<Vector> &basis() const noexcept { return basis_; }

  /// Reduces v against the basis; zero iff v lies in the span.
  Vector reduce(Vector v) const
  {
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      std::uint64_t c = v[pivots_[b]];
      if (!c)
        continue;
      for (std::size_t j = 0; j < dim_; ++j)
        v[j] = static_cast<std::uint32_t>((v[j] + (p_ - c) * basis_[b][j]) % p_);
    }
    return v;
  }

  bool contains(const Vector &v) const
  {
    auto r = reduce(v);
    for (auto x : r)
      if (x)
        return false;
    return true;
  }

  /// Adds v if independent; returns whether the dimension grew.
  bool insert(const Vector &v)
  {
    Vector r = reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && !r[piv])
      ++piv;
    if (piv == dim_)
      return false;
    std::uint64_t inv = inverse_mod(r[piv], p_);
    for (auto &x : r)
      x = static_cast<std::uint32_t>(x * inv % p_);
    // keep fully reduced
    for (auto &b : basis_) {
      std::uint64_t c = b[piv];
      if (!c)
        continue;
      for (std::size_t j = 0; j < dim_; ++j)
        b[j] = static_cast<std::uint32_t>((b[j] + (p_ - c) * r[j]) % p_);
    }
    basis_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

  /// Coordinates of v (which must lie in the span) w.r.t. basis().
  Vector coordinates(const Vector &v) const
  {
    Vector c(basis_.size(), 0);
    for (std::size_t b = 0; b < basis_.size(); ++b)
      c[b] = v[pivots_[b]];
    return c;
  }

  const std::vector<std::size_t> &pivots() const noexcept { return pivots_; }

private:
  std::size_t dim_;
  std::uint32_t p_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t Matrix::rank() const
{
  Subspace s(cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    s.insert(row(i));
  return s.dimension();
}

/// Smallest subspace containing `seed` and invariant under all `gens`.
inline Subspace spin(const std::vector<Vector> &seed, const std::vector<Matrix> &gens,
                     std::size_t dim, std::uint32_t p)
{
  Subspace s(dim, p);
  std::vector<Vector> queue;
  for (auto &v : seed)
    if (s.insert(v))
      queue.push_back(v);
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto &m : gens) {
      Vector w = act(queue[k], m);
      if (s.insert(w))
        queue.push_back(std::move(w));
    }
  return s;
}

/// Dimensions of the composition factors of F_p^dim under the matrix group
/// generated by `gens`. Proper submodules are found by spinning every nonzero
/// vector; the module splits into the submodule and its quotient recursively.
inline std::vector<std::size_t> composition_factor_dimensions(const std::vector<Matrix> &gens,
                                                              std::size_t dim, std::uint32_t p)
{
  if (dim == 0)
    return {};
  std::optional<Subspace> proper;
  Vector v(dim, 0);
  // iterate over all nonzero vectors, normalised so the first nonzero entry is 1
  for (;;) {
    std::size_t i = 0;
    while (i < dim && v[i] == p - 1) {
      v[i] = 0;
      ++i;
    }
    if (i == dim)
      break;
    ++v[i];
    std::size_t lead = 0;
    while (lead < dim && !v[lead])
      ++lead;
    if (v[lead] != 1)
      continue;
    Subspace w = spin({v}, gens, dim, p);
    if (w.dimension() < dim) {
      proper = std::move(w);
      break;
    }
  }
  if (!proper)
    return {dim};

  const Subspace &w = *proper;
  const std::size_t k = w.dimension();
  // action on the submodule, in the basis of w
  std::vector<Matrix> sub, quo;
  for (auto &m : gens) {
    Matrix a(k, k, p);
    for (std::size_t r = 0; r < k; ++r) {
      Vector img = act(w.basis()[r], m);
      Vector c = w.coordinates(img);
      for (std::size_t j = 0; j < k; ++j)
        a(r, j) = c[j];
    }
    sub.push_back(std::move(a));
  }
  // quotient: complement spanned by unit vectors at non-pivot positions
  std::vector<std::size_t> free_cols;
  {
    std::vector<bool> is_pivot(dim, false);
    for (auto piv : w.pivots())
      is_pivot[piv] = true;
    for (std::size_t j = 0; j < dim; ++j)
      if (!is_pivot[j])
        free_cols.push_back(j);
  }
  const std::size_t q = free_cols.size();
  for (auto &m : gens) {
    Matrix a(q, q, p);
    for (std::size_t r = 0; r < q; ++r) {
      Vector e(dim, 0);
      e[free_cols[r]] = 1;
      Vector img = w.reduce(act(e, m));
      for (std::size_t j = 0; j < q; ++j)
        a(r, j) = img[free_cols[j]];
    }
    quo.push_back(std::move(a));
  }
  auto left = composition_factor_dimensions(sub, k, p);
  auto right = composition_factor_dimensions(quo, q, p);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

} // namespace fp
} // namespace profin

#endif
