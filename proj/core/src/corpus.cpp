#include "twistzeta/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace tz {

namespace {

using Elem = std::vector<int>;

// builds a table from an element list (identity first) and a product rule
GroupPtr from_rule(const std::vector<Elem>& elems, const std::function<Elem(const Elem&, const Elem&)>& mul) {
  std::map<Elem, int> idx;
  for (size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<int>(i);
  int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    std::string s = "(";
    for (size_t k = 0; k < elems[a].size(); ++k) s += (k ? "," : "") + std::to_string(elems[a][k]);
    labels.push_back(s + ")");
    for (int b = 0; b < n; ++b) tab[a][b] = idx.at(mul(elems[a], elems[b]));
  }
  return group_from_table(tab, labels);
}

std::vector<Elem> grid(const std::vector<int>& dims) {
  std::vector<Elem> out;
  Elem e(dims.size(), 0);
  while (true) {
    out.push_back(e);
    size_t i = dims.size();
    while (i-- > 0) {
      if (++e[i] < dims[i]) break;
      e[i] = 0;
    }
    if (i == static_cast<size_t>(-1)) break;
  }
  return out;
}

int md(int a, int m) { return ((a % m) + m) % m; }

int find_label_elem(const GroupPtr& G, const std::string& label) {
  for (int x = 0; x < G->order(); ++x)
    if (G->label(x) == label) return x;
  throw std::logic_error("corpus: missing element " + label);
}

Subgroup by_labels(const GroupPtr& G, const std::vector<std::string>& labels) {
  std::vector<int> g;
  for (const auto& l : labels) g.push_back(find_label_elem(G, l));
  return subgroup_closure(G, g);
}

}  // namespace

GroupPtr make_cyclic(int n) {
  std::vector<Elem> el;
  for (int i = 0; i < n; ++i) el.push_back({i});
  return from_rule(el, [n](const Elem& a, const Elem& b) { return Elem{(a[0] + b[0]) % n}; });
}

GroupPtr make_dihedral(int n) {
  return from_rule(grid({2, n}), [n](const Elem& a, const Elem& b) {
    // (s, x): reflection flag then rotation; (s,x)(t,y) = (s+t, x + (-1)^s y)
    return Elem{(a[0] + b[0]) % 2, md(a[1] + (a[0] ? -b[1] : b[1]), n)};
  });
}

GroupPtr make_quaternion8() {
  return group_from_permutations({{{1, 2, 3, 4}, {5, 6, 7, 8}}, {{1, 5, 3, 7}, {2, 8, 4, 6}}}, 8);
}

GroupPtr make_heisenberg27() {
  return from_rule(grid({3, 3, 3}), [](const Elem& x, const Elem& y) {
    return Elem{(x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2] + x[0] * y[1]) % 3};
  });
}

GroupPtr make_extraspecial27_exp9() {
  // (y, x) with x mod 9, y mod 3: (y,x)(y',x') = (y+y', x + 4^y x')
  return from_rule(grid({3, 9}), [](const Elem& a, const Elem& b) {
    int f = 1;
    for (int k = 0; k < a[0]; ++k) f *= 4;
    return Elem{(a[0] + b[0]) % 3, (a[1] + f * b[1]) % 9};
  });
}

GroupPtr make_modular16() {
  // (y, x) with x mod 8, y mod 2: (y,x)(y',x') = (y+y', x + 5^y x')
  return from_rule(grid({2, 8}), [](const Elem& a, const Elem& b) {
    return Elem{(a[0] + b[0]) % 2, (a[1] + (a[0] ? 5 : 1) * b[1]) % 8};
  });
}

GroupPtr make_sl23() {
  std::vector<Elem> el;
  for (auto& m : grid({3, 3, 3, 3}))
    if (md(m[0] * m[3] - m[1] * m[2], 3) == 1) el.push_back(m);
  // identity first
  std::stable_partition(el.begin(), el.end(), [](const Elem& m) { return m == Elem{1, 0, 0, 1}; });
  return from_rule(el, [](const Elem& a, const Elem& b) {
    return Elem{md(a[0] * b[0] + a[1] * b[2], 3), md(a[0] * b[1] + a[1] * b[3], 3),
                md(a[2] * b[0] + a[3] * b[2], 3), md(a[2] * b[1] + a[3] * b[3], 3)};
  });
}

GroupPtr make_symmetric(int n) {
  std::vector<int> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 1);
  return group_from_permutations({{cyc}, {{1, 2}}}, n);
}

GroupPtr make_alternating4() { return group_from_permutations({{{1, 2, 3}}, {{1, 2}, {3, 4}}}, 4); }

GroupPtr make_direct_product(const GroupPtr& a, const GroupPtr& b) {
  int na = a->order(), nb = b->order();
  std::vector<std::vector<int>> tab(na * nb, std::vector<int>(na * nb));
  std::vector<std::string> labels;
  for (int x = 0; x < na * nb; ++x) {
    labels.push_back("(" + a->label(x / nb) + "," + b->label(x % nb) + ")");
    for (int y = 0; y < na * nb; ++y)
      tab[x][y] = a->mul(x / nb, y / nb) * nb + b->mul(x % nb, y % nb);
  }
  return group_from_table(tab, labels);
}

std::vector<std::string> core_corpus_names() {
  return {"c4_c2",        "d4",         "q8",  "heis27_center", "heis27_self", "ex27_center",
          "ex27_self",    "c2xq8",      "m16", "sl23"};
}

std::vector<std::string> corpus_names() {
  auto v = core_corpus_names();
  for (const char* s : {"s3_a3", "a4_v4", "d4_v4"}) v.push_back(s);
  return v;
}

CorpusEntry corpus_entry(const std::string& name) {
  CorpusEntry e;
  e.name = name;
  if (name == "c4_c2") {
    e.G = make_cyclic(4);
    e.N = by_labels(e.G, {"(2)"});
    e.description = "cyclic group of order 4 over its subgroup of order 2";
  } else if (name == "d4") {
    e.G = make_dihedral(4);
    e.N = center(e.G);
    e.description = "dihedral group of order 8 over its centre";
  } else if (name == "q8") {
    e.G = make_quaternion8();
    e.N = center(e.G);
    e.description = "quaternion group over its centre";
  } else if (name == "heis27_center" || name == "heis27_self") {
    e.G = make_heisenberg27();
    e.N = name == "heis27_center" ? center(e.G) : whole_group(e.G);
    e.p = 3;
    e.description = "Heisenberg group of order 27 over its " + std::string(name == "heis27_center" ? "centre" : "whole group");
  } else if (name == "ex27_center" || name == "ex27_self") {
    e.G = make_extraspecial27_exp9();
    e.N = name == "ex27_center" ? center(e.G) : whole_group(e.G);
    e.p = 3;
    e.description = "extraspecial group of order 27 and exponent 9 over its " +
                    std::string(name == "ex27_center" ? "centre" : "whole group");
  } else if (name == "c2xq8") {
    e.G = make_direct_product(make_cyclic(2), make_quaternion8());
    std::vector<int> q;
    for (int x = 0; x < e.G->order(); ++x)
      if (e.G->label(x).rfind("((0),", 0) == 0) q.push_back(x);
    e.N = subgroup_closure(e.G, q);
    e.description = "C2 x Q8 over the quaternion factor";
  } else if (name == "m16") {
    e.G = make_modular16();
    e.N = center(e.G);
    e.description = "modular group of order 16 over its centre";
  } else if (name == "sl23") {
    e.G = make_sl23();
    std::vector<int> two;
    for (int x = 0; x < e.G->order(); ++x)
      if (e.G->elem_order(x) == 1 || e.G->elem_order(x) == 2 || e.G->elem_order(x) == 4) two.push_back(x);
    e.N = subgroup_closure(e.G, two);
    e.description = "SL(2,3) over its normal quaternion subgroup";
  } else if (name == "s3_a3") {
    e.G = make_symmetric(3);
    std::vector<int> three;
    for (int x = 0; x < e.G->order(); ++x)
      if (e.G->elem_order(x) == 3) three.push_back(x);
    e.N = subgroup_closure(e.G, three);
    e.p = 3;
    e.description = "S3 over A3";
  } else if (name == "a4_v4") {
    e.G = make_alternating4();
    std::vector<int> two;
    for (int x = 0; x < e.G->order(); ++x)
      if (e.G->elem_order(x) == 2) two.push_back(x);
    e.N = subgroup_closure(e.G, two);
    e.description = "A4 over the Klein four subgroup";
  } else if (name == "d4_v4") {
    e.G = make_dihedral(4);
    e.N = by_labels(e.G, {"(0,2)", "(1,0)"});
    e.description = "dihedral group of order 8 over a Klein four subgroup";
  } else {
    throw InputError("UNKNOWN_CORPUS", "unknown corpus entry '" + name + "'");
  }
  return e;
}

}  // namespace tz
