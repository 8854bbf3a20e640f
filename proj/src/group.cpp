#include "topos/group.hpp"

namespace topos {

std::vector<std::string> group_law_violations(const FiniteGroup& g) {
  std::vector<std::string> out;
  const std::size_t n = g.order();
  if (n == 0) {
    out.emplace_back("empty group");
    return out;
  }
  if (g.identity >= n) out.emplace_back("identity index out of range");
  if (g.inverse.size() != n) out.emplace_back("inverse table has wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    if (g.table[a].size() != n) {
      out.emplace_back("row " + std::to_string(a) + " has wrong size");
      return out;
    }
    for (std::size_t b = 0; b < n; ++b)
      if (g.table[a][b] >= n) out.emplace_back("product " + std::to_string(a) + "*" + std::to_string(b) + " not closed");
  }
  if (!out.empty()) return out;
  for (std::size_t a = 0; a < n; ++a) {
    if (g.table[g.identity][a] != a || g.table[a][g.identity] != a)
      out.emplace_back("unit law fails at " + std::to_string(a));
    const std::size_t inv = g.inverse[a];
    if (inv >= n || g.table[a][inv] != g.identity || g.table[inv][a] != g.identity)
      out.emplace_back("inverse law fails at " + std::to_string(a));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          out.emplace_back("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                           std::to_string(c) + ")");
  return out;
}

bool is_group_isomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const std::size_t> map) {
  const std::size_t n = from.order();
  if (to.order() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (map[i] >= n || hit[map[i]]) return false;
    hit[map[i]] = true;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (map[from.table[a][b]] != to.table[map[a]][map[b]]) return false;
  return true;
}

bool is_abelian(const FiniteGroup& g) {
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (g.table[a][b] != g.table[b][a]) return false;
  return true;
}

}  // namespace topos
