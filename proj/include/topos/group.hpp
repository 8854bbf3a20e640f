#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace topos {

// A finite group given by its Cayley table over element indices 0..n-1.
struct FiniteGroup {
  std::vector<std::vector<std::size_t>> table;  // table[a][b] = a * b
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;

  std::size_t order() const { return table.size(); }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table[a][b]; }
};

// Exhaustive check of closure, unit, inverse and associativity laws.
std::vector<std::string> group_law_violations(const FiniteGroup& g);

// `map[i]` is the image of element i of `from`. Checks bijectivity and
// map(a*b) = map(a)*map(b) for all pairs.
bool is_group_isomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const std::size_t> map);

bool is_abelian(const FiniteGroup& g);

}  // namespace topos
