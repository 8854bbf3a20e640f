#pragma once

#include <string>
#include <vector>

#include "topos/fincat.hpp"
#include "topos/site.hpp"

namespace topos {

// A finite group by multiplication table; mul[a][b] = a·b.
struct GroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> mul;
  std::size_t unit = 0;
};

GroupTable cyclic_group(std::size_t n);
GroupTable direct_product(const GroupTable& a, const GroupTable& b);
// Closure of the given permutations of {0..degree-1} under composition;
// elements are named by shortest words in the generator names ("e" for the unit).
GroupTable permutation_group(std::size_t degree, const std::vector<std::pair<std::string, std::vector<std::size_t>>>& gens);
GroupTable symmetric_group(std::size_t n);
GroupTable dihedral_group(std::size_t n);  // order 2n
GroupTable quaternion_group();

// One object "*", one morphism per element, g∘f = g·f.
FinCategory delooping(const GroupTable& g);

Site with_trivial_topology(std::string name, FinCategory c);

// 0 -> 1 with morphisms id_0, id_1, a.
FinCategory sierpinski_poset();
// Opens ∅ ⊂ U ⊂ X of the Sierpinski space, with inclusions.
FinCategory sierpinski_opens();
// Opens ∅, L, R, X of the discrete two-point space, with inclusions.
FinCategory discrete_opens();

// Open-cover topologies: a sieve covers V iff its domains union to V.
Site sierpinski_open_cover_site();
Site discrete_open_cover_site();
// The discrete-space site restricted to the non-empty opens {L, R, X}.
Site discrete_nonempty_site();
// O(Sierpinski) restricted to {U, X}.
Site sierpinski_nonempty_site();
// BZ2 where every sieve covers.
Site bz2_all_sieves_site();

}  // namespace topos
