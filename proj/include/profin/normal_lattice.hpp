#ifndef PROFIN_NORMAL_LATTICE_HPP
#define PROFIN_NORMAL_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "group_ops.hpp"

namespace profin
{

/// All normal subgroups of a finite group.
///
/// A normal subgroup is a union of conjugacy classes, so each member is
/// stored as a class bitset next to its generators. Every normal subgroup is
/// the join of the normal closures of the classes it contains; the lattice
/// is built by closing {1} under joins with those class closures, which also
/// makes it closed under meets. Members are sorted by (order, class set):
/// id 0 is the trivial group and the last id is the ambient group.
class NormalLattice
{
public:
  using ClassSet = std::vector<std::uint64_t>;

  struct Member
  {
    PermGroup group;
    std::uint64_t order = 1;
    std::uint64_t index = 1;
    ClassSet classes;
  };

  explicit NormalLattice(const PermGroup &g, const Limits &limits = {})
    : ambient_(g), order_(g.order().value(limits.lattice, "lattice")),
      cc_(conjugacy_classes(g, limits))
  {
    const std::size_t k = cc_.count();
    words_ = (k + 63) / 64;

    // distinct normal closures of single classes
    std::vector<Member> closures;
    for (std::size_t c = 1; c < k; ++c) {
      PermGroup n = detail::normal_closure_unchecked(g, {cc_.classes[c].representative});
      Member m = make_member(std::move(n));
      if (std::none_of(closures.begin(), closures.end(),
                       [&](const Member &o) { return o.classes == m.classes; }))
        closures.push_back(std::move(m));
    }

    std::map<ClassSet, std::size_t> seen;
    std::map<std::uint64_t, std::vector<std::size_t>> by_order;
    std::vector<Member> found;
    found.push_back(make_member(PermGroup::trivial(g.degree())));
    seen.emplace(found[0].classes, 0);
    by_order[1].push_back(0);
    for (std::size_t i = 0; i < found.size(); ++i)
      for (auto &c : closures) {
        if (subset(c.classes, found[i].classes))
          continue;
        ClassSet want = unite(found[i].classes, c.classes);
        // |AB| = |A||B| / |A meet B|
        const std::uint64_t join_order =
          found[i].order * c.order / weight(intersect(found[i].classes, c.classes));
        auto &same = by_order[join_order];
        if (std::any_of(same.begin(), same.end(),
                        [&](std::size_t j) { return subset(want, found[j].classes); }))
          continue;
        Member m = make_member(reduced_join(found[i].group, c.group));
        if (m.order != join_order)
          throw error("internal: normal lattice join has unexpected order");
        if (seen.emplace(m.classes, found.size()).second) {
          same.push_back(found.size());
          found.push_back(std::move(m));
          require_cap("lattice", found.size(), limits.lattice, "normal subgroup count");
        }
      }

    std::sort(found.begin(), found.end(), [](const Member &a, const Member &b) {
      return a.order != b.order ? a.order < b.order : a.classes < b.classes;
    });
    members_ = std::move(found);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      members_[i].index = order_ / members_[i].order;
      ids_.emplace(members_[i].classes, i);
    }
  }

  const PermGroup &ambient() const noexcept { return ambient_; }
  const ConjugacyClasses &classes() const noexcept { return cc_; }
  std::size_t size() const noexcept { return members_.size(); }
  const Member &operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Member> &members() const noexcept { return members_; }
  std::size_t trivial() const noexcept { return 0; }
  std::size_t top() const noexcept { return members_.size() - 1; }

  /// Id of a normal subgroup of the ambient group, or nullopt if `n` is not normal.
  std::optional<std::size_t> id_of(const PermGroup &n) const
  {
    if (n.degree() != ambient_.degree() || !is_normal(ambient_, n))
      return std::nullopt;
    auto it = ids_.find(class_set(n));
    if (it == ids_.end())
      throw error("internal: normal subgroup missing from lattice");
    return it->second;
  }

  std::size_t id(const PermGroup &n) const
  {
    auto i = id_of(n);
    if (!i)
      throw invalid_input("subgroup is not normal in the ambient group");
    return *i;
  }

  /// member a is contained in member b
  bool leq(std::size_t a, std::size_t b) const
  {
    return subset(members_[a].classes, members_[b].classes);
  }

  std::size_t meet(std::size_t a, std::size_t b) const
  {
    return ids_.at(intersect(members_[a].classes, members_[b].classes));
  }

  std::size_t join(std::size_t a, std::size_t b) const
  {
    ClassSet want = unite(members_[a].classes, members_[b].classes);
    for (std::size_t i = std::max(a, b); i < members_.size(); ++i)
      if (subset(want, members_[i].classes))
        return i;
    throw error("internal: lattice not closed under join");
  }

  /// Meet of a family; the empty meet is the ambient group.
  template <class Range> std::size_t meet_all(const Range &ids) const
  {
    std::size_t r = top();
    for (std::size_t i : ids)
      r = meet(r, i);
    return r;
  }

  template <class Range> std::size_t join_all(const Range &ids) const
  {
    std::size_t r = trivial();
    for (std::size_t i : ids)
      r = join(r, i);
    return r;
  }

  /// Members maximal among those properly contained in member `i`.
  std::vector<std::size_t> maximal_below(std::size_t i) const
  {
    std::vector<std::size_t> below;
    for (std::size_t j = 0; j < members_.size(); ++j)
      if (j != i && leq(j, i))
        below.push_back(j);
    std::vector<std::size_t> out;
    for (std::size_t j : below) {
      bool maximal = true;
      for (std::size_t l : below)
        if (l != j && leq(j, l)) {
          maximal = false;
          break;
        }
      if (maximal)
        out.push_back(j);
    }
    return out;
  }

  /// Minimal nontrivial members.
  std::vector<std::size_t> minimal_normal() const
  {
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j < members_.size(); ++j) {
      bool minimal = true;
      for (std::size_t l = 1; l < j && minimal; ++l)
        if (leq(l, j))
          minimal = false;
      if (minimal)
        out.push_back(j);
    }
    return out;
  }

private:
  bool has(const ClassSet &s, std::size_t c) const { return (s[c / 64] >> (c % 64)) & 1u; }

  static bool subset(const ClassSet &a, const ClassSet &b)
  {
    for (std::size_t w = 0; w < a.size(); ++w)
      if (a[w] & ~b[w])
        return false;
    return true;
  }

  static ClassSet unite(ClassSet a, const ClassSet &b)
  {
    for (std::size_t w = 0; w < a.size(); ++w)
      a[w] |= b[w];
    return a;
  }

  static ClassSet intersect(ClassSet a, const ClassSet &b)
  {
    for (std::size_t w = 0; w < a.size(); ++w)
      a[w] &= b[w];
    return a;
  }

  std::uint64_t weight(const ClassSet &s) const
  {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < cc_.count(); ++c)
      if (has(s, c))
        total += cc_.classes[c].size;
    return total;
  }

  ClassSet class_set(const PermGroup &n) const
  {
    ClassSet s(words_, 0);
    for (std::size_t c = 0; c < cc_.count(); ++c)
      if (n.contains(cc_.classes[c].representative))
        s[c / 64] |= std::uint64_t{1} << (c % 64);
    return s;
  }

  Member make_member(PermGroup n) const
  {
    Member m;
    m.classes = class_set(n);
    m.order = n.size();
    if (weight(m.classes) != m.order)
      throw error("internal: subgroup is not a union of conjugacy classes");
    m.group = std::move(n);
    return m;
  }

  static PermGroup reduced_join(const PermGroup &a, const PermGroup &b)
  {
    std::vector<Permutation> gens = a.generators();
    for (auto &x : b.generators())
      if (!a.contains(x))
        gens.push_back(x);
    return PermGroup(a.degree(), std::move(gens));
  }

  PermGroup ambient_;
  std::uint64_t order_;
  ConjugacyClasses cc_;
  std::size_t words_ = 1;
  std::vector<Member> members_;
  std::map<ClassSet, std::size_t> ids_;
};

} // namespace profin

#endif
