// Walks through the library on Sym(4) and on the 2-adic cyclic tower.

#include <iostream>

#include "profin/fusion.hpp"
#include "profin/group_spec.hpp"
#include "profin/tower.hpp"

int main()
{
  using namespace profin;

  PermGroup g = build_group("sym(4)");
  NormalLattice lat(g, {});
  std::cout << "Sym(4): order " << g.size() << ", " << lat.size() << " normal subgroups\n";
  std::cout << "  F = " << fitting(lat).size() << ", F* = " << generalized_fitting(g).size()
            << ", normal Frattini = " << frattini_normal(lat).size() << "\n";

  FusionTable ft = fusion_table(g, 2);
  std::cout << "  Sylow 2-subgroup of order " << ft.sylow.size() << " has " << ft.subgroups.size()
            << " subgroups in " << ft.s_classes.size() << " classes\n";
  for (std::size_t i = 0; i < ft.s_classes.size(); ++i)
    if (ft.fused_to[i] != i)
      std::cout << "  class " << i << " fuses to class " << ft.fused_to[i] << " via "
                << ft.conjugator(i, ft.fused_to[i]).to_cycles() << "\n";

  AlperinResult a = alperin_closure_check(ft);
  std::cout << "  local control of fusion: " << (a.holds ? "verified" : "FAILED") << " with "
            << a.chains.size() << " chain(s)\n";

  Tower t = cyclic_tower(2, 6);
  std::cout << "cyclic 2-tower, depth 6\n";
  for (std::uint64_t n : {1, 2, 3, 4, 5, 8, 16}) {
    ObSequence s = tower_ob_sequence(t, n);
    std::cout << "  ob(" << n << ") along the tower:";
    for (auto v : s.values)
      std::cout << ' ' << v;
    std::cout << (s.stable ? "  (stable)" : "") << "\n";
  }
}
