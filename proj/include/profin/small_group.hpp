#ifndef PROFIN_SMALL_GROUP_HPP
#define PROFIN_SMALL_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "perm_group.hpp"

namespace profin
{

/// Multiplication table of a small group, elements addressed by their
/// ElementIndex position (identity is 0).
class CayleyTable
{
public:
  CayleyTable(const PermGroup &g, std::uint64_t limit, const char *cap)
    : group_(g), index_(g, limit, cap), n_(index_.size())
  {
    mul_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        mul_[i * n_ + j] = index_.index_of(index_[i] * index_[j]);
    inv_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j)
        if (mul_[i * n_ + j] == 0) {
          inv_[i] = j;
          break;
        }
    order_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::uint32_t o = 1;
      for (std::uint32_t x = i; x != 0; x = mul(x, i))
        ++o;
      order_[i] = i == 0 ? 1 : o;
    }
  }

  const PermGroup &group() const noexcept { return group_; }
  const ElementIndex &elements() const noexcept { return index_; }
  std::size_t size() const noexcept { return n_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * n_ + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t element_order(std::uint32_t a) const { return order_[a]; }
  std::uint32_t conj(std::uint32_t a, std::uint32_t g) const { return mul(mul(inv(g), a), g); }

  /// Elements of <gens> as a membership mask.
  std::vector<bool> closure(const std::vector<std::uint32_t> &gens) const
  {
    std::vector<bool> in(n_, false);
    std::vector<std::uint32_t> list{0};
    in[0] = true;
    for (std::size_t k = 0; k < list.size(); ++k)
      for (auto s : gens) {
        std::uint32_t y = mul(list[k], s);
        if (!in[y]) {
          in[y] = true;
          list.push_back(y);
        }
      }
    return in;
  }

  PermGroup subgroup(const std::vector<std::uint32_t> &gens) const
  {
    std::vector<Permutation> perms;
    for (auto s : gens)
      perms.push_back(index_[s]);
    return PermGroup(group_.degree(), std::move(perms));
  }

private:
  PermGroup group_;
  ElementIndex index_;
  std::size_t n_;
  std::vector<std::uint32_t> mul_, inv_, order_;
};

struct SmallSubgroup
{
  std::vector<std::uint32_t> generators; // element indices
  std::vector<bool> members;
  std::size_t order = 1;
};

/// Every subgroup of a small group by cyclic extension: each subgroup K > 1
/// arises as <H, x> from a subgroup H found earlier. For p-groups only
/// extensions with x normalising H and x^p in H are needed, since every
/// maximal subgroup of a p-group is normal of index p. Sorted by (order, members).
inline std::vector<SmallSubgroup> all_subgroups(const CayleyTable &t, std::uint64_t max_count)
{
  const std::size_t n = t.size();
  const GroupOrder order(n);
  const bool p_group = order.primes().size() <= 1;
  const std::uint32_t p = p_group && n > 1 ? static_cast<std::uint32_t>(order.primes()[0]) : 0;

  std::map<std::vector<bool>, std::size_t> seen;
  std::vector<SmallSubgroup> out;
  SmallSubgroup triv;
  triv.members = t.closure({});
  seen.emplace(triv.members, 0);
  out.push_back(std::move(triv));

  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<bool> tried = out[i].members;
    for (std::uint32_t x = 1; x < n; ++x) {
      if (tried[x])
        continue;
      if (p_group) {
        std::uint32_t xp = x;
        for (std::uint32_t k = 1; k < p; ++k)
          xp = t.mul(xp, x);
        if (!out[i].members[xp])
          continue;
        bool normalises = true;
        for (auto h : out[i].generators)
          if (!out[i].members[t.conj(h, x)]) {
            normalises = false;
            break;
          }
        if (!normalises)
          continue;
      }
      SmallSubgroup k;
      k.generators = out[i].generators;
      k.generators.push_back(x);
      k.members = t.closure(k.generators);
      k.order = static_cast<std::size_t>(std::count(k.members.begin(), k.members.end(), true));
      // generators giving the same extension: K \ H for p-groups, the coset xH otherwise
      for (std::uint32_t y = 0; y < n; ++y)
        if (p_group ? k.members[y] : out[i].members[y])
          tried[p_group ? y : t.mul(x, y)] = true;
      if (seen.emplace(k.members, out.size()).second) {
        out.push_back(std::move(k));
        require_cap("enumeration", out.size(), max_count, "subgroup count");
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SmallSubgroup &a, const SmallSubgroup &b) {
    return a.order != b.order ? a.order < b.order : a.members > b.members;
  });
  return out;
}

} // namespace profin

#endif
