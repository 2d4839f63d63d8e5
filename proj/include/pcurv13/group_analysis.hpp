// Structural queries on GroupTable: Sylow subgroups, (p^2) and (2p) conditions,
// subgroup embeddings, normal rank, normal p-complements, cyclic indices, the
// order-27 classification and the cyclic-2-group direct-factor decomposition.
//
// Everything here is an exhaustive search over the table.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcurv13/group_catalog.hpp"
#include "pcurv13/group_table.hpp"

namespace pcurv13::groups {

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Largest power of p dividing n.
inline std::int64_t p_part(std::int64_t n, std::int64_t p) {
  std::int64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

inline bool is_power_of(std::int64_t n, std::int64_t p) { return n >= 1 && p_part(n, p) == n; }

inline bool is_p_group(const GroupTable& g, std::int64_t p) { return is_power_of(static_cast<std::int64_t>(g.order()), p); }

/// Sylow p-subgroup grown from p-elements in increasing index order. Returns the
/// trivial subgroup when p does not divide |G|.
inline SubgroupHandle sylow(const GroupTable& g, std::int64_t p) {
  const auto target = static_cast<std::size_t>(p_part(static_cast<std::int64_t>(g.order()), p));
  std::vector<Element> gens;
  std::vector<Element> current{0};
  bool grew = true;
  while (current.size() < target && grew) {
    grew = false;
    for (Element e = 1; e < g.order(); ++e) {
      if (!is_power_of(g.element_order(e), p)) continue;
      if (std::binary_search(current.begin(), current.end(), e)) continue;
      auto trial = gens;
      trial.push_back(e);
      auto next = closure_elements(g, trial, target);
      if (next.empty() || !is_power_of(static_cast<std::int64_t>(next.size()), p)) continue;
      gens = std::move(trial);
      current = std::move(next);
      grew = true;
      if (current.size() == target) break;
    }
  }
  if (current.size() != target) throw std::logic_error("Sylow growth stalled");
  return SubgroupHandle(g, std::move(current));
}

inline bool all_sylow_cyclic(const GroupTable& g) {
  for (auto p : prime_divisors(static_cast<std::int64_t>(g.order())))
    if (!sylow(g, p).is_cyclic()) return false;
  return true;
}

/// True iff G has no subgroup isomorphic to Z_p × Z_p.
inline bool p2_condition(const GroupTable& g, std::int64_t p) {
  std::vector<Element> order_p;
  for (Element e = 1; e < g.order(); ++e)
    if (g.element_order(e) == p) order_p.push_back(e);
  for (std::size_t i = 0; i < order_p.size(); ++i) {
    const Element a = order_p[i];
    const auto cyc = closure_elements(g, {a});
    for (std::size_t j = i + 1; j < order_p.size(); ++j) {
      const Element b = order_p[j];
      if (g.commute(a, b) && !std::binary_search(cyc.begin(), cyc.end(), b)) return false;
    }
  }
  return true;
}

/// True iff every involution is central.
inline bool two_p_condition(const GroupTable& g) {
  for (Element a = 1; a < g.order(); ++a) {
    if (g.element_order(a) != 2) continue;
    for (Element b = 0; b < g.order(); ++b)
      if (!g.commute(a, b)) return false;
  }
  return true;
}

inline std::int64_t burnside_class_d(const BurnsideParams& p) {
  if (auto why = burnside_violation(p); !why.empty()) throw std::invalid_argument("invalid Burnside parameters: " + why);
  return multiplicative_order(p.r, p.m);
}

/// <A, B^d> inside build_burnside(p), where d = burnside_class_d(p).
inline SubgroupHandle normal_cyclic_core(const GroupTable& g, const BurnsideParams& p) {
  const std::int64_t d = burnside_class_d(p);
  const Element b_d = g.pow(burnside_b(p), d);
  return closure(g, {burnside_a(p), b_d});
}

inline std::vector<SubgroupHandle> cyclic_subgroups(const GroupTable& g) {
  std::set<std::vector<Element>> seen;
  std::vector<SubgroupHandle> out;
  for (Element e = 0; e < g.order(); ++e) {
    auto elems = closure_elements(g, {e});
    if (seen.insert(elems).second) out.emplace_back(g, std::move(elems));
  }
  return out;
}

/// True iff no cyclic subgroup of the parent strictly contains h (h itself cyclic).
inline bool is_maximal_cyclic(const SubgroupHandle& h) {
  const GroupTable& g = h.parent();
  Element gen = 0;
  for (Element e : h.elements())
    if (g.element_order(e) == h.order()) gen = e;
  for (Element x = 0; x < g.order(); ++x) {
    const std::uint32_t ox = g.element_order(x);
    if (ox <= h.order() || ox % h.order() != 0) continue;
    // The unique subgroup of order |h| in <x> is <x^(ox/|h|)>.
    const auto sub = closure_elements(g, {g.pow(x, ox / h.order())});
    if (std::binary_search(sub.begin(), sub.end(), gen)) return false;
  }
  return true;
}

/// Normal cyclic subgroups not strictly contained in any cyclic subgroup.
inline std::vector<SubgroupHandle> normal_maximal_cyclic_subgroups(const GroupTable& g) {
  std::vector<SubgroupHandle> out;
  for (auto& h : cyclic_subgroups(g))
    if (h.is_normal() && is_maximal_cyclic(h)) out.push_back(h);
  return out;
}

/// Greedy generating set: repeatedly add the highest-order element not yet covered.
inline std::vector<Element> generating_set(const GroupTable& g) {
  std::vector<Element> by_order(g.order());
  for (Element e = 0; e < g.order(); ++e) by_order[e] = e;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
  std::vector<Element> gens;
  std::vector<Element> current{0};
  for (Element e : by_order) {
    if (current.size() == g.order()) break;
    if (std::binary_search(current.begin(), current.end(), e)) continue;
    gens.push_back(e);
    current = closure_elements(g, gens);
  }
  return gens;
}

/// Injective homomorphism pattern -> target, as the image of each pattern
/// element, or nullopt when none exists. Backtracks over generator images.
inline std::optional<std::vector<Element>> find_embedding(const GroupTable& pattern, const GroupTable& target) {
  if (target.order() % pattern.order() != 0) return std::nullopt;
  const auto gens = generating_set(pattern);
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Element h = 0; h < target.order(); ++h)
      if (target.element_order(h) == pattern.element_order(gens[i])) candidates[i].push_back(h);

  std::vector<Element> images(gens.size());
  constexpr Element kUnset = ~Element{0};
  std::vector<Element> phi(pattern.order(), kUnset);
  std::vector<char> used(target.order(), 0);

  // Extends phi over <gens[0..level]>; false on any inconsistency or collision.
  auto consistent = [&](std::size_t level) {
    std::fill(phi.begin(), phi.end(), kUnset);
    std::fill(used.begin(), used.end(), 0);
    phi[0] = 0;
    used[0] = 1;
    std::vector<Element> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Element x = queue[qi];
      for (std::size_t k = 0; k <= level; ++k) {
        const Element y = pattern.mul(x, gens[k]);
        const Element fy = target.mul(phi[x], images[k]);
        if (phi[y] == kUnset) {
          if (used[fy]) return false;
          phi[y] = fy;
          used[fy] = 1;
          queue.push_back(y);
        } else if (phi[y] != fy) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t level) {
    if (level == gens.size()) return true;
    for (Element h : candidates[level]) {
      images[level] = h;
      if (consistent(level) && search(level + 1)) return true;
    }
    return false;
  };

  if (gens.empty()) return std::vector<Element>{0};
  if (!search(0)) return std::nullopt;
  consistent(gens.size() - 1);
  return phi;
}

struct GroupInvariants {
  std::size_t order = 0;
  bool abelian = false;
  std::size_t center_size = 0;
  std::uint32_t exponent = 1;
  std::vector<std::pair<std::uint32_t, std::size_t>> order_profile;
  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

inline GroupInvariants invariants(const GroupTable& g) {
  return {g.order(), g.is_abelian(), g.center().size(), g.exponent(), g.order_profile()};
}

inline bool isomorphic(const GroupTable& a, const GroupTable& b) {
  if (!(invariants(a) == invariants(b))) return false;
  return find_embedding(a, b).has_value();
}

enum class Pattern { ZpxZp, Z9xZ3, Z3cubed, U33, Z9semiZ3 };

inline GroupTable pattern_group(Pattern pattern, std::int64_t p = 3) {
  switch (pattern) {
    case Pattern::ZpxZp: return abelian({static_cast<std::size_t>(p), static_cast<std::size_t>(p)});
    case Pattern::Z9xZ3: return abelian({9, 3});
    case Pattern::Z3cubed: return abelian({3, 3, 3});
    case Pattern::U33: return unitriangular_33();
    case Pattern::Z9semiZ3: return z9_semi_z3();
  }
  throw std::invalid_argument("unknown pattern");
}

inline const char* to_string(Pattern pattern) {
  switch (pattern) {
    case Pattern::ZpxZp: return "ZpxZp";
    case Pattern::Z9xZ3: return "Z9xZ3";
    case Pattern::Z3cubed: return "Z3cubed";
    case Pattern::U33: return "U33";
    case Pattern::Z9semiZ3: return "Z9semiZ3";
  }
  return "?";
}

/// True iff some subgroup of G is isomorphic to the pattern (p only used for ZpxZp).
inline bool contains_copy(const GroupTable& g, Pattern pattern, std::int64_t p = 3) {
  if (pattern == Pattern::ZpxZp) return !p2_condition(g, p);
  return find_embedding(pattern_group(pattern), g).has_value();
}

inline std::vector<std::vector<Element>> conjugacy_classes(const GroupTable& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Element>> classes;
  for (Element a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::vector<Element> cls;
    for (Element x = 0; x < g.order(); ++x) {
      const Element c = g.conj(x, a);
      if (!seen[c]) {
        seen[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Largest k such that the p-group P has a normal elementary abelian subgroup of order p^k.
inline int normal_rank(const GroupTable& g, std::int64_t p) {
  if (!is_p_group(g, p)) throw std::invalid_argument("normal_rank needs a p-group");
  if (g.order() == 1) return 0;
  std::vector<std::vector<Element>> classes;
  for (auto& c : conjugacy_classes(g))
    if (g.element_order(c.front()) == p) classes.push_back(std::move(c));

  auto elementary_abelian = [&](const std::vector<Element>& s) {
    for (Element a : s) {
      if (a != 0 && g.element_order(a) != p) return false;
      for (Element b : s)
        if (!g.commute(a, b)) return false;
    }
    return true;
  };

  // Normal subgroups generated by unions of classes of order-p elements.
  std::set<std::vector<Element>> visited;
  std::size_t best = 1;
  std::function<void(const std::vector<Element>&)> grow = [&](const std::vector<Element>& current) {
    best = std::max(best, current.size());
    for (const auto& cls : classes) {
      if (std::binary_search(current.begin(), current.end(), cls.front())) continue;
      std::vector<Element> gens = current;
      gens.insert(gens.end(), cls.begin(), cls.end());
      auto next = closure_elements(g, gens);
      if (!elementary_abelian(next) || !visited.insert(next).second) continue;
      grow(next);
    }
  };
  grow({0});
  int k = 0;
  for (std::size_t s = best; s > 1; s /= static_cast<std::size_t>(p)) ++k;
  return k;
}

/// Normal subgroup N with G = P N and P ∩ N = 1 for a Sylow p-subgroup P.
/// When it exists it is exactly the set of elements of order prime to p.
inline std::optional<SubgroupHandle> normal_p_complement(const GroupTable& g, std::int64_t p) {
  const auto n = static_cast<std::int64_t>(g.order());
  const auto complement_order = static_cast<std::size_t>(n / p_part(n, p));
  std::vector<Element> coprime;
  for (Element e = 0; e < g.order(); ++e)
    if (g.element_order(e) % p != 0) coprime.push_back(e);
  if (coprime.size() != complement_order) return std::nullopt;
  if (closure_elements(g, coprime) != coprime) return std::nullopt;
  return SubgroupHandle(g, std::move(coprime));
}

/// Minimal index of a cyclic subgroup: |G| / (largest element order).
inline std::size_t min_cyclic_index(const GroupTable& g) { return g.order() / g.max_element_order(); }

enum class Order27 { Z27, Z9xZ3, Z3cubed, Z9semiZ3, U33 };

inline const char* to_string(Order27 c) {
  switch (c) {
    case Order27::Z27: return "Z27";
    case Order27::Z9xZ3: return "Z9xZ3";
    case Order27::Z3cubed: return "Z3cubed";
    case Order27::Z9semiZ3: return "Z9semiZ3";
    case Order27::U33: return "U33";
  }
  return "?";
}

inline Order27 classify_order_27(const GroupTable& g) {
  if (g.order() != 27) throw std::invalid_argument("classify_order_27 needs a group of order 27");
  const auto e = g.exponent();
  if (g.is_abelian()) return e == 27 ? Order27::Z27 : e == 9 ? Order27::Z9xZ3 : Order27::Z3cubed;
  return e == 9 ? Order27::Z9semiZ3 : Order27::U33;
}

struct DavisDecomposition {
  std::int64_t two_part_order = 1;  // 2^a
  int a = 0;
  SubgroupHandle odd_part;
};

/// G = Z_{2^a} × Γ with |Γ| odd, as an internal direct product, when possible.
inline std::optional<DavisDecomposition> davis_decomposition(const GroupTable& g) {
  const auto n = static_cast<std::int64_t>(g.order());
  const std::int64_t two = p_part(n, 2);
  const auto odd = static_cast<std::size_t>(n / two);
  std::vector<Element> two_elems, odd_elems;
  for (Element e = 0; e < g.order(); ++e) {
    if (is_power_of(g.element_order(e), 2)) two_elems.push_back(e);
    if (g.element_order(e) % 2 != 0) odd_elems.push_back(e);
  }
  // A unique (hence normal) Sylow 2-subgroup consists of all 2-elements.
  if (two_elems.size() != static_cast<std::size_t>(two)) return std::nullopt;
  const bool two_cyclic = std::any_of(two_elems.begin(), two_elems.end(),
                                      [&](Element e) { return g.element_order(e) == two; });
  if (!two_cyclic) return std::nullopt;
  if (odd_elems.size() != odd || closure_elements(g, odd_elems) != odd_elems) return std::nullopt;
  int a = 0;
  for (std::int64_t t = two; t > 1; t /= 2) ++a;
  return DavisDecomposition{two, a, SubgroupHandle(g, std::move(odd_elems))};
}

}  // namespace pcurv13::groups
