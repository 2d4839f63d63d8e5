// Rational Betti-vector bookkeeping for circle and torus actions: Euler
// characteristics, rank solving in the Smith-Gysin sequence, integer trace sets
// of finite-order automorphisms, Lefschetz value sets and the divisibility
// obstruction, Borel's codimension count, fixed-point profile census, and the
// Frankel and Allday-Puppe predicates.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcurv13::cohomology {

using BettiVector = std::vector<std::int64_t>;

inline std::int64_t euler_char(const BettiVector& b) {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < b.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * b[i];
  return chi;
}

inline std::int64_t total_betti(const BettiVector& b) { return std::accumulate(b.begin(), b.end(), std::int64_t{0}); }

/// Dimensions of H^i(X/S^1, X^{S^1}) for i = 0 .. dimX-1.
struct ExactSolution {
  std::vector<std::int64_t> R;
  std::int64_t chi_bar = 0;  // alternating sum of R
  friend bool operator==(const ExactSolution&, const ExactSolution&) = default;
};

namespace detail {

inline BettiVector padded(const BettiVector& b, std::size_t len, const char* what) {
  if (b.size() > len) throw std::invalid_argument(std::string(what) + " has entries above the top degree");
  for (auto v : b)
    if (v < 0) throw std::invalid_argument(std::string(what) + " has a negative entry");
  BettiVector out = b;
  out.resize(len, 0);
  return out;
}

}  // namespace detail

/// Dimensions of the terms of the Smith-Gysin sequence
///   0 -> R^0 -> H^0(X) -> R^{-1}+H^0(F) -> R^1 -> H^1(X) -> R^0+H^1(F) -> R^2 -> ...
/// ending with H^top(X) -> R^{top-1}+H^top(F) -> 0.
inline std::vector<std::int64_t> gysin_terms(const std::vector<std::int64_t>& R, const BettiVector& bX,
                                             const BettiVector& bF) {
  auto r = [&](long i) { return i >= 0 && static_cast<std::size_t>(i) < R.size() ? R[i] : std::int64_t{0}; };
  std::vector<std::int64_t> terms;
  for (std::size_t i = 0; i < bX.size(); ++i) {
    terms.push_back(r(static_cast<long>(i)));
    terms.push_back(bX[i]);
    terms.push_back(r(static_cast<long>(i) - 1) + bF[i]);
  }
  return terms;
}

/// All R admitting an exact sequence. Ranks are forced along the sequence
/// (rank_j = dim T_j - rank_{j-1}), so the search prunes as soon as one goes negative.
inline std::vector<ExactSolution> smith_gysin_solve(const BettiVector& bX_in, const BettiVector& bF_in, int dimX) {
  if (dimX < 1) throw std::invalid_argument("dimX must be positive");
  const auto len = static_cast<std::size_t>(dimX) + 1;
  const BettiVector bX = detail::padded(bX_in, len, "bX");
  const BettiVector bF = detail::padded(bF_in, len, "bF");
  const std::int64_t budget = total_betti(bX) + total_betti(bF);

  std::vector<ExactSolution> out;
  std::vector<std::int64_t> R(static_cast<std::size_t>(dimX), 0);
  // Incoming rank into the term R^i is the outgoing rank of R^{i-2}+H^{i-1}(F).
  std::function<void(int, std::int64_t)> choose = [&](int i, std::int64_t rank_in) {
    if (i == dimX) {
      // Remaining terms: R^dimX = 0, H^dimX(X), R^{dimX-1}+H^dimX(F), then 0.
      std::int64_t rk = 0 - rank_in;
      if (rk != 0) return;
      rk = bX[dimX] - 0;
      if (rk < 0) return;
      rk = R[dimX - 1] + bF[dimX] - rk;
      if (rk != 0) return;
      ExactSolution s;
      s.R = R;
      for (int k = 0; k < dimX; ++k) s.chi_bar += (k % 2 == 0 ? 1 : -1) * R[k];
      out.push_back(std::move(s));
      return;
    }
    for (std::int64_t v = rank_in; v <= budget; ++v) {
      R[i] = v;
      const std::int64_t r0 = v - rank_in;              // R^i -> H^i(X)
      const std::int64_t r1 = bX[i] - r0;               // H^i(X) -> R^{i-1}+H^i(F)
      if (r1 < 0) break;
      const std::int64_t r2 = (i >= 1 ? R[i - 1] : 0) + bF[i] - r1;  // -> R^{i+1}
      if (r2 < 0) continue;
      choose(i + 1, r2);
    }
    R[i] = 0;
  };
  choose(0, 0);
  return out;
}

/// Integer traces of finite-order automorphisms of Q^k, k <= 2. A rational
/// 2x2 of finite order has eigenvalues in {1, -1} or a conjugate pair of primitive
/// n-th roots with 2cos(2pi/n) rational, i.e. n in {3, 4, 6}.
inline std::set<std::int64_t> integer_trace_set(int k, bool odd_order_only) {
  if (k < 0 || k > 2) throw std::invalid_argument("trace sets are only available for dimension 0, 1 or 2");
  // (order n, eigenvalue) for rational eigenvalues; (order n, 2cos(2pi/n)) for conjugate pairs.
  const std::vector<std::pair<int, std::int64_t>> rational{{1, 1}, {2, -1}};
  const std::vector<std::pair<int, std::int64_t>> pairs{{3, -1}, {4, 0}, {6, 1}};
  auto allowed = [&](int n) { return !odd_order_only || n % 2 == 1; };
  std::set<std::int64_t> out;
  if (k == 0) return {0};
  for (auto [n, v] : rational) {
    if (!allowed(n)) continue;
    if (k == 1) out.insert(v);
    else
      for (auto [n2, v2] : rational)
        if (allowed(n2)) out.insert(v + v2);
  }
  if (k == 2)
    for (auto [n, v] : pairs)
      if (allowed(n)) out.insert(v);
  return out;
}

struct LefschetzSpec {
  std::vector<std::int64_t> dims;  // per-degree dimensions acted upon
  bool odd_order = true;
};

inline std::set<std::int64_t> lefschetz_value_set(const LefschetzSpec& spec) {
  std::set<std::int64_t> values{0};
  for (std::size_t i = 0; i < spec.dims.size(); ++i) {
    const auto d = spec.dims[i];
    if (d < 0) throw std::invalid_argument("negative dimension");
    if (d > 2) throw std::invalid_argument("degree " + std::to_string(i) + " has dimension " + std::to_string(d) +
                                           "; trace sets are limited to dimension 2");
    const auto traces = integer_trace_set(static_cast<int>(d), spec.odd_order);
    std::set<std::int64_t> next;
    const std::int64_t sign = i % 2 == 0 ? 1 : -1;
    for (auto v : values)
      for (auto t : traces) next.insert(v + sign * t);
    values = std::move(next);
  }
  return values;
}

/// The quotient index an action scenario forces: d for a class C_d group, p for Z_p x Z_p.
struct GroupScenario {
  enum class Kind { ClassCd, ZpxZp };
  Kind kind = Kind::ClassCd;
  std::int64_t value = 1;

  static GroupScenario class_cd(std::int64_t d) { return {Kind::ClassCd, d}; }
  static GroupScenario zp_x_zp(std::int64_t p) { return {Kind::ZpxZp, p}; }
  std::string str() const { return (kind == Kind::ClassCd ? "cd:" : "zpxzp:") + std::to_string(value); }
};

struct ObstructionVerdict {
  bool excluded = false;
  std::int64_t index = 1;
  std::set<std::int64_t> surviving;  // Lefschetz values divisible by the index
};

inline ObstructionVerdict divisibility_obstruction(const GroupScenario& g, const std::set<std::int64_t>& lef_values) {
  if (g.value < 1) throw std::invalid_argument("index must be positive");
  if (g.kind == GroupScenario::Kind::ZpxZp) {
    bool prime = g.value >= 2;
    for (std::int64_t d = 2; d * d <= g.value && prime; ++d) prime = g.value % d != 0;
    if (!prime) throw std::invalid_argument("Z_p x Z_p needs a prime p");
  }
  ObstructionVerdict v;
  v.index = g.value;
  for (auto x : lef_values)
    if (x % g.value == 0) v.surviving.insert(x);
  v.excluded = v.surviving.empty();
  return v;
}

/// Borel's formula: the fixed-point codimension must equal the sum of the circle contributions.
inline bool borel_feasible(std::int64_t codim_total, const std::vector<std::int64_t>& circle_codims) {
  if (codim_total < 0 || codim_total % 2 != 0) throw std::invalid_argument("codimension total must be even and >= 0");
  for (auto c : circle_codims)
    if (c < 0 || c % 2 != 0) throw std::invalid_argument("circle codimensions must be even and >= 0");
  return std::accumulate(circle_codims.begin(), circle_codims.end(), std::int64_t{0}) == codim_total;
}

enum class ComponentType { S1, S3, S5, S7, CP1xS3, CP2 };

inline constexpr ComponentType kAllComponentTypes[] = {ComponentType::S1, ComponentType::S3, ComponentType::S5,
                                                       ComponentType::S7, ComponentType::CP1xS3, ComponentType::CP2};

inline const char* to_string(ComponentType t) {
  switch (t) {
    case ComponentType::S1: return "S1";
    case ComponentType::S3: return "S3";
    case ComponentType::S5: return "S5";
    case ComponentType::S7: return "S7";
    case ComponentType::CP1xS3: return "CP1xS3";
    case ComponentType::CP2: return "CP2";
  }
  return "?";
}

inline ComponentType component_from_string(const std::string& s) {
  for (auto t : kAllComponentTypes)
    if (s == to_string(t)) return t;
  throw std::invalid_argument("unknown component type '" + s + "'");
}

/// Rational Betti numbers in degrees 0..dim.
inline BettiVector betti(ComponentType t) {
  switch (t) {
    case ComponentType::S1: return {1, 1};
    case ComponentType::S3: return {1, 0, 0, 1};
    case ComponentType::S5: return {1, 0, 0, 0, 0, 1};
    case ComponentType::S7: return {1, 0, 0, 0, 0, 0, 0, 1};
    case ComponentType::CP1xS3: return {1, 0, 1, 1, 0, 1};
    case ComponentType::CP2: return {1, 0, 1, 0, 1};
  }
  return {};
}

inline int dimension(ComponentType t) { return static_cast<int>(betti(t).size()) - 1; }

inline bool poincare_dual(const BettiVector& b) { return std::equal(b.begin(), b.end(), b.rbegin()); }

struct FixedPointProfile {
  std::vector<ComponentType> components;  // sorted by enum order

  std::int64_t total_betti() const {
    std::int64_t s = 0;
    for (auto c : components) s += cohomology::total_betti(betti(c));
    return s;
  }
  std::size_t count(ComponentType t) const { return static_cast<std::size_t>(std::count(components.begin(), components.end(), t)); }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (auto c : components) out.emplace_back(to_string(c));
    return out;
  }
  friend bool operator==(const FixedPointProfile&, const FixedPointProfile&) = default;
};

/// Profiles of equidimensional components with b_0 = 1, b_1 = 0 and Poincare
/// duality, total Betti sum <= budget, at most one CP1xS3 component. Ordered by
/// multiplicity vector compared from the last admissible type backwards.
inline std::vector<FixedPointProfile> enumerate_profiles(std::int64_t budget, int component_dim) {
  if (budget < 2) throw std::invalid_argument("budget must be >= 2");
  if (component_dim < 1 || component_dim % 2 == 0) throw std::invalid_argument("component dimension must be odd");
  std::vector<ComponentType> types;
  for (auto t : kAllComponentTypes) {
    const auto b = betti(t);
    if (dimension(t) != component_dim || b[0] != 1 || b[1] != 0 || !poincare_dual(b)) continue;
    types.push_back(t);
  }
  std::vector<std::vector<std::size_t>> mults;
  std::vector<std::size_t> current(types.size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t used) {
    if (k == types.size()) {
      if (used > 0) mults.push_back(current);
      return;
    }
    const std::int64_t cost = total_betti(betti(types[k]));
    const std::size_t cap = types[k] == ComponentType::CP1xS3 ? 1 : static_cast<std::size_t>(budget / cost);
    for (std::size_t n = 0; n <= cap && used + static_cast<std::int64_t>(n) * cost <= budget; ++n) {
      current[k] = n;
      rec(k + 1, used + static_cast<std::int64_t>(n) * cost);
    }
    current[k] = 0;
  };
  rec(0, 0);
  std::sort(mults.begin(), mults.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  std::vector<FixedPointProfile> out;
  for (const auto& m : mults) {
    FixedPointProfile p;
    for (std::size_t k = 0; k < types.size(); ++k) p.components.insert(p.components.end(), m[k], types[k]);
    out.push_back(std::move(p));
  }
  return out;
}

/// False iff two components have dimensions summing to at least the ambient dimension.
inline bool frankel_compatible(const std::vector<std::int64_t>& component_dims, std::int64_t ambient_dim) {
  for (std::size_t i = 0; i < component_dims.size(); ++i)
    for (std::size_t j = i + 1; j < component_dims.size(); ++j)
      if (component_dims[i] + component_dims[j] >= ambient_dim) return false;
  return true;
}

inline bool allday_bound_check(const BettiVector& bM, const BettiVector& bF) { return total_betti(bF) <= total_betti(bM); }

}  // namespace pcurv13::cohomology
