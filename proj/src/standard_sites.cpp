#include "topos/standard_sites.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace topos {

GroupTable cyclic_group(std::size_t n) {
  GroupTable g;
  for (std::size_t i = 0; i < n; ++i) g.names.push_back(i == 0 ? "e" : i == 1 ? "g" : "g" + std::to_string(i));
  g.mul.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  return g;
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  GroupTable g;
  const std::size_t n = a.names.size(), m = b.names.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) g.names.push_back("(" + a.names[i] + "," + b.names[j] + ")");
  g.mul.assign(n * m, std::vector<std::size_t>(n * m, 0));
  for (std::size_t x = 0; x < n * m; ++x)
    for (std::size_t y = 0; y < n * m; ++y)
      g.mul[x][y] = a.mul[x / m][y / m] * m + b.mul[x % m][y % m];
  g.unit = a.unit * m + b.unit;
  return g;
}

GroupTable permutation_group(std::size_t degree, const std::vector<std::pair<std::string, std::vector<std::size_t>>>& gens) {
  using Perm = std::vector<std::size_t>;
  auto compose = [](const Perm& p, const Perm& q) {  // p∘q
    Perm r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
  };
  Perm id(degree);
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::vector<Perm> elems{id};
  std::vector<std::string> names{"e"};
  std::map<Perm, std::size_t> index{{id, 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (const auto& [name, p] : gens) {
      Perm q = compose(elems[k], p);
      if (index.count(q)) continue;
      index.emplace(q, elems.size());
      names.push_back(k == 0 ? name : names[k] + name);
      elems.push_back(q);
      queue.push_back(elems.size() - 1);
    }
  }
  GroupTable g;
  g.names = names;
  g.mul.assign(elems.size(), std::vector<std::size_t>(elems.size(), 0));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) g.mul[a][b] = index.at(compose(elems[a], elems[b]));
  return g;
}

GroupTable symmetric_group(std::size_t n) {
  std::vector<std::size_t> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), std::size_t{0});
  if (n > 1) std::swap(swap[0], swap[1]);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return permutation_group(n, {{"s", swap}, {"c", cycle}});
}

GroupTable dihedral_group(std::size_t n) {
  std::vector<std::size_t> rot(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return permutation_group(n, {{"r", rot}, {"s", ref}});
}

GroupTable quaternion_group() {
  // Units 1, i, j, k with signs; unit_mul[a][b] = (sign, unit) of a·b.
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const char* letters[4] = {"1", "i", "j", "k"};
  GroupTable g;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 4; ++u) g.names.push_back(std::string(s ? "-" : "") + letters[u]);
  g.mul.assign(8, std::vector<std::size_t>(8, 0));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a % 4, ub = b % 4;
      const int s = (a / 4 ? -1 : 1) * (b / 4 ? -1 : 1) * sign[ua][ub];
      g.mul[a][b] = static_cast<std::size_t>((s < 0 ? 4 : 0) + unit[ua][ub]);
    }
  return g;
}

FinCategory delooping(const GroupTable& g) {
  CategoryDesc d;
  d.objects = {"*"};
  for (const auto& n : g.names) d.morphisms.push_back({n, "*", "*"});
  d.identities["*"] = g.names[g.unit];
  for (std::size_t a = 0; a < g.names.size(); ++a)
    for (std::size_t b = 0; b < g.names.size(); ++b) d.composition.push_back({g.names[a], g.names[b], g.names[g.mul[a][b]]});
  return validate_category(d);
}

Site with_trivial_topology(std::string name, FinCategory c) {
  Topology t = trivial_topology(c);
  return Site{std::move(name), std::move(c), std::move(t)};
}

namespace {

// A poset on the named objects; `below` lists the strict relations (x <= y)
// named by the given morphism names. The relation must be transitively closed.
FinCategory poset(const std::vector<std::string>& objects,
                  const std::vector<std::array<std::string, 3>>& below) {
  CategoryDesc d;
  d.objects = objects;
  std::map<std::pair<std::string, std::string>, std::string> arrow;
  for (const auto& x : objects) {
    d.morphisms.push_back({"id_" + x, x, x});
    d.identities[x] = "id_" + x;
    arrow[{x, x}] = "id_" + x;
  }
  for (const auto& [name, x, y] : below) {
    d.morphisms.push_back({name, x, y});
    arrow[{x, y}] = name;
  }
  for (const auto& [xy, f] : arrow)
    for (const auto& [yz, g] : arrow)
      if (xy.second == yz.first) d.composition.push_back({g, f, arrow.at({xy.first, yz.second})});
  return validate_category(d);
}

Site open_cover_site(std::string name, FinCategory c, const std::map<std::string, std::vector<std::vector<std::string>>>& basis) {
  SieveBasis b;
  for (const auto& [x, sieves] : basis)
    for (const auto& members : sieves) {
      Sieve s{c.object(x), {}};
      for (const auto& m : members) s.members.push_back(c.morphism(m));
      std::sort(s.members.begin(), s.members.end());
      b[s.target].push_back(s);
    }
  Topology t = saturate_topology(c, b);
  return Site{std::move(name), std::move(c), std::move(t)};
}

}  // namespace

FinCategory sierpinski_poset() { return poset({"0", "1"}, {{"a", "0", "1"}}); }

FinCategory sierpinski_opens() {
  return poset({"E", "U", "X"}, {{"eU", "E", "U"}, {"eX", "E", "X"}, {"uX", "U", "X"}});
}

FinCategory discrete_opens() {
  return poset({"E", "L", "R", "X"},
               {{"eL", "E", "L"}, {"eR", "E", "R"}, {"eX", "E", "X"}, {"lX", "L", "X"}, {"rX", "R", "X"}});
}

Site sierpinski_open_cover_site() {
  return open_cover_site("sierpinski-opens", sierpinski_opens(), {{"E", {{}}}});
}

Site discrete_open_cover_site() {
  return open_cover_site("discrete-opens", discrete_opens(), {{"E", {{}}}, {"X", {{"eX", "lX", "rX"}}}});
}

namespace {

Site restrict_to_nonempty(const Site& s, std::string name) {
  std::set<ObjId> keep;
  const auto empty = empty_cover_objects(s.topology);
  for (ObjId x : s.category.objects())
    if (!empty.count(x)) keep.insert(x);
  FullSubcategory d = full_subcategory(s.category, keep);
  Topology t = induced_topology(s.category, s.topology, d);
  return Site{std::move(name), std::move(d.category), std::move(t)};
}

}  // namespace

Site discrete_nonempty_site() { return restrict_to_nonempty(discrete_open_cover_site(), "discrete-nonempty"); }

Site sierpinski_nonempty_site() { return restrict_to_nonempty(sierpinski_open_cover_site(), "sierpinski-nonempty"); }

Site bz2_all_sieves_site() {
  FinCategory c = delooping(cyclic_group(2));
  Topology t = all_sieves_topology(c);
  return Site{"bz2-all-sieves", std::move(c), std::move(t)};
}

}  // namespace topos
