#ifndef PROFIN_HOM_HPP
#define PROFIN_HOM_HPP

#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "group_ops.hpp"
#include "perm_group.hpp"

namespace profin
{

/// A homomorphism between permutation groups given by generator images.
///
/// Construction checks the certificate: the graph {(g, phi(g))}, realised
/// on deg(domain) + deg(codomain) points, must have the same order as the
/// domain. The two graph chains (domain base first, codomain base first)
/// then evaluate images, kernels and preimages by stripping.
class GroupHom
{
public:
  GroupHom(PermGroup domain, PermGroup codomain, std::vector<Permutation> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images))
  {
    if (images_.size() != domain_.generators().size())
      throw invalid_input("one image per domain generator required");
    for (auto &y : images_)
      if (y.degree() != codomain_.degree() || !codomain_.contains(y))
        throw invalid_input("generator image " + y.to_cycles() + " not in codomain");

    const std::size_t n1 = domain_.degree(), n2 = codomain_.degree();
    std::vector<Permutation> graph;
    for (std::size_t i = 0; i < images_.size(); ++i)
      graph.push_back(pair(domain_.generators()[i], images_[i]));

    auto dom_base = domain_.chain().base();
    dom_first_ = std::make_shared<const StabilizerChain>(n1 + n2, graph, dom_base);
    if (!(dom_first_->order() == domain_.order()))
      throw invalid_input("generator images do not define a homomorphism");

    std::vector<point_t> cod_base;
    for (point_t b : codomain_.chain().base())
      cod_base.push_back(static_cast<point_t>(b + n1));
    cod_levels_ = cod_base.size();
    cod_first_ = std::make_shared<const StabilizerChain>(n1 + n2, graph, cod_base);
  }

  const PermGroup &domain() const noexcept { return domain_; }
  const PermGroup &codomain() const noexcept { return codomain_; }
  const std::vector<Permutation> &images() const noexcept { return images_; }

  Permutation operator()(const Permutation &x) const
  {
    if (!domain_.contains(x))
      throw invalid_input("element " + x.to_cycles() + " not in homomorphism domain");
    auto [r, level] = dom_first_->strip(pair(x, codomain_.identity()));
    return split(r).second.inverse();
  }

  PermGroup image() const { return PermGroup(codomain_.degree(), images_); }

  PermGroup image(const PermGroup &h) const
  {
    std::vector<Permutation> gens;
    for (auto &x : h.generators())
      gens.push_back((*this)(x));
    return PermGroup(codomain_.degree(), std::move(gens));
  }

  GroupOrder image_order() const { return cod_first_->order() / kernel_order(); }

  bool is_surjective() const { return image_order() == codomain_.order(); }

  PermGroup kernel() const
  {
    std::vector<Permutation> gens;
    for (auto &s : cod_first_->strong_generators())
      if (fixes_codomain(s))
        gens.push_back(split(s).first);
    return PermGroup(domain_.degree(), std::move(gens));
  }

  /// Some x in the domain with phi(x) = y.
  Permutation lift(const Permutation &y) const
  {
    auto r = pair(domain_.identity(), y);
    for (std::size_t l = 0; l < cod_levels_; ++l) {
      const auto &lv = cod_first_->level(l);
      std::int32_t pos = lv.position[r[lv.base_point]];
      if (pos < 0)
        throw invalid_input("element " + y.to_cycles() + " not in homomorphism image");
      r = r * lv.inverse[static_cast<std::size_t>(pos)];
    }
    auto [a, b] = split(r);
    if (!b.is_identity())
      throw invalid_input("element " + y.to_cycles() + " not in homomorphism image");
    return a.inverse();
  }

  /// phi^-1(K) for K in the codomain (intersected with the image).
  PermGroup preimage(const PermGroup &k) const
  {
    require_same_degree(k, codomain_);
    PermGroup target = intersection(image(), k);
    std::vector<Permutation> gens = kernel().generators();
    for (auto &y : target.generators())
      gens.push_back(lift(y));
    return PermGroup(domain_.degree(), std::move(gens));
  }

  /// this followed by `next`.
  GroupHom then(const GroupHom &next) const
  {
    std::vector<Permutation> imgs;
    for (auto &y : images_)
      imgs.push_back(next(y));
    return GroupHom(domain_, next.codomain_, std::move(imgs));
  }

private:
  Permutation pair(const Permutation &a, const Permutation &b) const
  {
    const std::size_t n1 = domain_.degree(), n2 = codomain_.degree();
    std::vector<point_t> img(n1 + n2);
    for (std::size_t i = 0; i < n1; ++i)
      img[i] = a[static_cast<point_t>(i)];
    for (std::size_t i = 0; i < n2; ++i)
      img[n1 + i] = static_cast<point_t>(b[static_cast<point_t>(i)] + n1);
    return Permutation(std::move(img));
  }

  std::pair<Permutation, Permutation> split(const Permutation &x) const
  {
    const std::size_t n1 = domain_.degree(), n2 = codomain_.degree();
    std::vector<point_t> a(n1), b(n2);
    for (std::size_t i = 0; i < n1; ++i)
      a[i] = x[static_cast<point_t>(i)];
    for (std::size_t i = 0; i < n2; ++i)
      b[i] = static_cast<point_t>(x[static_cast<point_t>(n1 + i)] - n1);
    return {Permutation(std::move(a)), Permutation(std::move(b))};
  }

  bool fixes_codomain(const Permutation &s) const
  {
    const std::size_t n1 = domain_.degree();
    for (std::size_t i = n1; i < s.degree(); ++i)
      if (s[static_cast<point_t>(i)] != i)
        return false;
    return true;
  }

  GroupOrder kernel_order() const
  {
    GroupOrder o;
    for (std::size_t l = cod_levels_; l < cod_first_->length(); ++l)
      o *= GroupOrder(cod_first_->level(l).orbit.size());
    return o;
  }

  PermGroup domain_, codomain_;
  std::vector<Permutation> images_;
  std::shared_ptr<const StabilizerChain> dom_first_, cod_first_;
  std::size_t cod_levels_ = 0;
};

namespace detail
{

// Canonical element of the coset N x: lexicographically least base image
// sequence relative to N's own base.
inline Permutation canonical_coset_rep(const StabilizerChain &n, Permutation x)
{
  for (auto &lv : n.levels()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < lv.orbit.size(); ++k)
      if (x[lv.orbit[k]] < x[lv.orbit[best]])
        best = k;
    x = lv.transversal[best] * x;
  }
  return x;
}

} // namespace detail

/// G/N realised as the action of G on the cosets of N. Coset 0 is N itself.
inline std::pair<PermGroup, GroupHom> quotient_action(const PermGroup &g, const PermGroup &n,
                                                      const Limits &limits = {})
{
  require_subgroup(n, g, "quotient kernel");
  if (!g.normalizes(n))
    throw invalid_input("quotient kernel is not normal");
  const GroupOrder index = g.order() / n.order();
  const std::uint64_t m = index.value(limits.degree, "degree");

  const StabilizerChain &nc = n.chain();
  std::vector<Permutation> reps{detail::canonical_coset_rep(nc, g.identity())};
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> id{{reps[0], 0}};
  std::vector<std::vector<point_t>> action(g.generators().size());
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      Permutation r = detail::canonical_coset_rep(nc, reps[c] * g.generators()[s]);
      auto [it, fresh] = id.emplace(r, static_cast<std::uint32_t>(reps.size()));
      if (fresh)
        reps.push_back(std::move(r));
      action[s].push_back(it->second);
    }
  if (reps.size() != m)
    throw error("internal: coset enumeration found " + std::to_string(reps.size()) +
                " cosets, expected " + std::to_string(m));

  std::vector<Permutation> images;
  for (auto &a : action)
    images.emplace_back(std::move(a));
  PermGroup q(static_cast<std::size_t>(m), images, limits);
  GroupHom hom(g, q, std::move(images));
  return {std::move(q), std::move(hom)};
}

} // namespace profin

#endif
