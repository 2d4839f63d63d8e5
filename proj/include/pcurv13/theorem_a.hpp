// Case engine for the cyclic-index bound of fundamental groups of positively
// curved 13-manifolds with T^2 or T^3 symmetry whose universal cover is a
// rational or mod 3 cohomology Bazaikin space.
//
// Each arithmetic or group-theoretic step is executed through a named operation
// registry and recorded as (tag, operation, inputs, verdict), so any step can be
// re-run from its record. Geometric inputs with no finite check are recorded as
// axiom steps.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcurv13/bazaikin.hpp"
#include "pcurv13/cohomology.hpp"
#include "pcurv13/group_analysis.hpp"
#include "pcurv13/group_catalog.hpp"
#include "pcurv13/serre.hpp"

namespace pcurv13::theorem_a {

using json = nlohmann::json;
using IndexSet = std::set<std::int64_t>;

enum class CohomologyType { RationalBazaikin, Mod3Bazaikin };

inline const char* to_string(CohomologyType t) { return t == CohomologyType::RationalBazaikin ? "rational" : "mod3"; }

inline CohomologyType cohomology_type_from_string(const std::string& s) {
  if (s == "rational") return CohomologyType::RationalBazaikin;
  if (s == "mod3") return CohomologyType::Mod3Bazaikin;
  throw std::invalid_argument("cohomology type must be 'rational' or 'mod3', got '" + s + "'");
}

struct ScenarioInput {
  int symmetry_rank = 2;
  CohomologyType cohomology = CohomologyType::RationalBazaikin;
  std::optional<bazaikin::QTuple> q;
};

struct TraceStep {
  std::string tag;
  std::string operation;
  json inputs;
  json verdict;
  std::string note;
};

struct BranchResult {
  IndexSet indices;
  std::vector<TraceStep> steps;
};

struct ObstructionReport {
  IndexSet index_bound_set;
  std::vector<TraceStep> case_trace;
  std::vector<std::string> axioms_used;
};

/// Geometric theorems taken as given. Every report lists all of them.
inline const std::vector<std::string>& declared_axioms() {
  static const std::vector<std::string> axioms{
      "connectedness-lemma",  // Wilking: totally geodesic codim-k inclusion is (n-2k+1)-connected
      "berger-sugahara",      // some circle (or T^2 inside T^3) has a fixed point
      "frankel",              // totally geodesic submanifolds of large dimension intersect
      "weinstein",            // free isometries act orientation-preservingly in odd dimension
      "smith",                // Z_p x Z_p cannot act freely on a mod p cohomology sphere
      "davis-weinberger",     // Sylow 2-subgroup splits off for (4k+1)-manifolds
      "codimension-two",      // codim-2 fixed component forces a cyclic group / homotopy sphere
      "allday-puppe",         // Betti sum of a torus fixed set is at most that of the manifold
      "totally-geodesic",     // circle fixed components have dimension at most seven
      "rong-isotropy",        // circle action without finite isotropy forces cyclic pi_1
  };
  return axioms;
}

inline bool is_declared_axiom(const std::string& name) {
  const auto& a = declared_axioms();
  return std::find(a.begin(), a.end(), name) != a.end();
}

namespace detail {

inline std::vector<std::int64_t> ints(const json& j) { return j.get<std::vector<std::int64_t>>(); }

inline std::vector<std::int64_t> odd_primes_upto(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 3; k <= n; k += 2)
    if (bazaikin::is_prime(k)) out.push_back(k);
  return out;
}

inline std::vector<std::int64_t> odd_upto(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= n; k += 2) out.push_back(k);
  return out;
}

inline groups::Pattern pattern_from_string(const std::string& s) {
  using groups::Pattern;
  for (Pattern p : {Pattern::ZpxZp, Pattern::Z9xZ3, Pattern::Z3cubed, Pattern::U33, Pattern::Z9semiZ3})
    if (s == groups::to_string(p)) return p;
  throw std::invalid_argument("unknown group pattern '" + s + "'");
}

/// Betti vectors (b_0..b_dim) of closed orientable manifolds of odd dimension
/// `dim` >= 3 with b_0 = 1, b_1 = 0 and Poincare duality, total at most `budget`.
inline std::vector<cohomology::BettiVector> poincare_vectors(int dim, std::int64_t budget) {
  if (dim < 3 || dim % 2 == 0) throw std::invalid_argument("dimension must be odd and >= 3");
  std::vector<cohomology::BettiVector> out;
  cohomology::BettiVector b(static_cast<std::size_t>(dim) + 1, 0);
  b[0] = b[dim] = 1;
  const int half = (dim - 1) / 2;  // free entries are degrees 2..half, mirrored
  std::function<void(int, std::int64_t)> rec = [&](int k, std::int64_t used) {
    if (k > half) {
      out.push_back(b);
      return;
    }
    for (std::int64_t v = 0; used + 2 * v <= budget; ++v) {
      b[k] = b[dim - k] = v;
      rec(k + 1, used + 2 * v);
    }
    b[k] = b[dim - k] = 0;
  };
  if (budget >= 2) rec(2, 2);
  return out;
}

}  // namespace detail

using Operation = std::function<json(const json&)>;

/// Every operation a trace step may name.
inline const std::map<std::string, Operation>& operations() {
  using namespace pcurv13;
  static const std::map<std::string, Operation> ops{
      {"bazaikin.betti",
       [](const json& in) {
         // p = 0 means rational coefficients.
         const auto profile = bazaikin::bazaikin_profile(in.at("m").get<std::int64_t>());
         const auto p = in.at("p").get<std::int64_t>();
         cohomology::BettiVector b;
         if (p == 0) {
           for (const auto& g : profile.groups)
             b.push_back(g.kind == bazaikin::CohomologyGroup::Kind::Free ? g.value : 0);
         } else {
           b = bazaikin::mod_p_betti(profile, p);
         }
         std::int64_t even = 0;
         for (std::size_t k = 0; k < b.size(); k += 2) even += b[k];
         return json{{"betti", b}, {"total", cohomology::total_betti(b)}, {"even_total", even}};
       }},
      {"cohomology.borel_feasible",
       [](const json& in) {
         return json(cohomology::borel_feasible(in.at("codim_total").get<std::int64_t>(), detail::ints(in.at("circle_codims"))));
       }},
      {"cohomology.smith_gysin_solve",
       [](const json& in) {
         json out = json::array();
         for (const auto& s : cohomology::smith_gysin_solve(detail::ints(in.at("bX")), detail::ints(in.at("bF")),
                                                             in.at("dimX").get<int>()))
           out.push_back({{"R", s.R}, {"chi_bar", s.chi_bar}});
         return out;
       }},
      {"cohomology.lefschetz_value_set",
       [](const json& in) {
         return json(cohomology::lefschetz_value_set({detail::ints(in.at("dims")), in.at("odd_order").get<bool>()}));
       }},
      {"cohomology.divisibility_sweep",
       [](const json& in) {
         // Keeps the candidates the divisibility obstruction does not exclude.
         const auto kind = in.at("kind").get<std::string>();
         const auto lef = detail::ints(in.at("lefschetz"));
         const std::set<std::int64_t> values(lef.begin(), lef.end());
         std::vector<std::int64_t> surviving;
         for (auto v : detail::ints(in.at("candidates"))) {
           cohomology::GroupScenario g;
           if (kind == "cd") g = cohomology::GroupScenario::class_cd(v);
           else if (kind == "zpxzp") g = cohomology::GroupScenario::zp_x_zp(v);
           else throw std::invalid_argument("sweep kind must be 'cd' or 'zpxzp'");
           if (!cohomology::divisibility_obstruction(g, values).excluded) surviving.push_back(v);
         }
         return json{{"surviving", surviving}};
       }},
      {"cohomology.enumerate_profiles",
       [](const json& in) {
         json out = json::array();
         for (const auto& p : cohomology::enumerate_profiles(in.at("budget").get<std::int64_t>(), in.at("dim").get<int>()))
           out.push_back(p.labels());
         return out;
       }},
      {"cohomology.frankel_compatible",
       [](const json& in) {
         return json(cohomology::frankel_compatible(detail::ints(in.at("dims")), in.at("ambient").get<std::int64_t>()));
       }},
      {"cohomology.allday_bound_check",
       [](const json& in) { return json(cohomology::allday_bound_check(detail::ints(in.at("bM")), detail::ints(in.at("bF")))); }},
      {"cohomology.poincare_vectors",
       [](const json& in) {
         return json(detail::poincare_vectors(in.at("dim").get<int>(), in.at("budget").get<std::int64_t>()));
       }},
      {"groups.maximal_normal_order_p",
       [](const json& in) {
         // Some normal subgroup of order p is not strictly contained in a cyclic subgroup.
         const auto g = groups::build_standard(in.at("group").get<std::string>());
         const auto p = in.at("p").get<std::int64_t>();
         for (const auto& h : groups::normal_maximal_cyclic_subgroups(g))
           if (static_cast<std::int64_t>(h.order()) == p) return json(true);
         return json(false);
       }},
      {"groups.sylow3_screen",
       [](const json& in) {
         std::vector<groups::Pattern> forbidden;
         for (const auto& s : in.at("forbidden")) forbidden.push_back(detail::pattern_from_string(s.get<std::string>()));
         json survivors = json::array();
         for (const auto& name : in.at("candidates")) {
           const auto g = groups::build_standard(name.get<std::string>());
           if (!groups::is_p_group(g, 3)) throw std::invalid_argument(name.get<std::string>() + " is not a 3-group");
           const bool clean = std::none_of(forbidden.begin(), forbidden.end(),
                                           [&](groups::Pattern p) { return groups::contains_copy(g, p); });
           if (clean) survivors.push_back({{"group", name}, {"min_cyclic_index", groups::min_cyclic_index(g)}});
         }
         return survivors;
       }},
      {"serre.exhaustive_verdict",
       [](const json& in) {
         const auto rep = serre::exhaustive_verdict(in.at("p").get<std::int64_t>());
         return json{{"verdict", rep.verdict}, {"min_deg6_survivors", rep.min_deg6_survivors}, {"choices", rep.choices_examined}};
       }},
      {"index.products",
       [](const json& in) {
         // Indices multiply along a chain of subgroups.
         IndexSet acc{1};
         for (const auto& factor : in.at("factors")) {
           IndexSet next;
           for (auto a : acc)
             for (auto b : detail::ints(factor)) next.insert(a * b);
           acc = std::move(next);
         }
         return json(acc);
       }},
      {"index.at_most",
       [](const json& in) {
         IndexSet out;
         for (std::int64_t k = 1; k <= in.at("bound").get<std::int64_t>(); ++k) out.insert(k);
         return json(out);
       }},
  };
  return ops;
}

inline json invoke(const std::string& op, const json& inputs) {
  const auto& ops = operations();
  const auto it = ops.find(op);
  if (it == ops.end()) throw std::invalid_argument("unknown operation '" + op + "'");
  return it->second(inputs);
}

/// Re-runs a step from its record. Axiom steps replay when the axiom is declared.
inline bool replay(const TraceStep& step) {
  if (step.operation == "axiom") return is_declared_axiom(step.inputs.at("name").get<std::string>());
  return invoke(step.operation, step.inputs) == step.verdict;
}

inline json to_json(const TraceStep& s) {
  return {{"tag", s.tag}, {"operation", s.operation}, {"inputs", s.inputs}, {"verdict", s.verdict}, {"note", s.note}};
}

inline TraceStep step_from_json(const json& j) {
  return {j.at("tag"), j.at("operation"), j.at("inputs"), j.at("verdict"), j.value("note", "")};
}

namespace detail {

class Tracer {
 public:
  explicit Tracer(std::vector<TraceStep>& sink) : sink_(sink) {}

  json call(const std::string& tag, const std::string& op, json inputs, std::string note) {
    json verdict = invoke(op, inputs);
    sink_.push_back({tag, op, std::move(inputs), verdict, std::move(note)});
    return verdict;
  }

  void axiom(const std::string& tag, const std::string& name, std::string note) {
    if (!is_declared_axiom(name)) throw std::logic_error("undeclared axiom " + name);
    sink_.push_back({tag, "axiom", json{{"name", name}}, json{{"assumed", true}}, std::move(note)});
  }

 private:
  std::vector<TraceStep>& sink_;
};

inline IndexSet as_set(const json& j) { return j.get<IndexSet>(); }

inline std::vector<std::int64_t> surviving(const json& j) { return ints(j.at("surviving")); }

inline const cohomology::BettiVector kEmpty{};

/// Odd-order isotropy analysis for a component with empty fixed set under some
/// circle: Smith-Gysin ranks of the orbit space, Lefschetz values of odd-order
/// elements, and the two divisibility sweeps. Returns (surviving primes, surviving d).
inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> orbit_space_sweeps(
    Tracer& t, const std::string& tag, cohomology::ComponentType c) {
  const auto bX = cohomology::betti(c);
  const int dim = cohomology::dimension(c);
  const json sols = t.call(tag, "cohomology.smith_gysin_solve", {{"bX", bX}, {"bF", kEmpty}, {"dimX", dim}},
                           std::string("orbit space of ") + cohomology::to_string(c) + " under a fixed-point-free circle");
  if (sols.size() != 1) throw std::logic_error("Smith-Gysin ranks are not unique");
  const auto R = ints(sols[0].at("R"));
  const json lef = t.call(tag, "cohomology.lefschetz_value_set", {{"dims", R}, {"odd_order", true}},
                          "Lefschetz numbers of odd-order elements on the orbit space");
  const json primes = t.call(tag, "cohomology.divisibility_sweep",
                             {{"kind", "zpxzp"}, {"candidates", odd_primes_upto(31)}, {"lefschetz", lef}},
                             "odd primes p for which Z_p x Z_p is not excluded");
  const json ds = t.call(tag, "cohomology.divisibility_sweep",
                         {{"kind", "cd"}, {"candidates", odd_upto(27)}, {"lefschetz", lef}},
                         "odd d for which a class C_d group is not excluded");
  return {surviving(primes), surviving(ds)};
}

/// Shared core for a component with the rational cohomology of S^5: the odd part
/// has a cyclic subgroup of index dividing 9.
inline IndexSet s5_core(Tracer& t, const std::string& tag) {
  t.axiom(tag, "weinstein", "the group acts trivially on the rational cohomology of the S^5 component");
  t.axiom(tag, "davis-weinberger", "the group splits as Z_{2^b} x (odd order)");
  const auto [primes, ds] = orbit_space_sweeps(t, tag, cohomology::ComponentType::S5);
  if (primes != std::vector<std::int64_t>{3}) throw std::logic_error("S5 branch: only p = 3 should survive");
  for (const char* g : {"Z_3xZ_3xZ_3", "U33", "Z_9xZ_3"}) {
    if (!t.call(tag, "groups.maximal_normal_order_p", {{"group", g}, {"p", 3}},
                std::string(g) + " has a normal order-3 subgroup in no larger cyclic subgroup, so it is excluded")
             .get<bool>())
      throw std::logic_error(std::string("expected a maximal normal order-3 subgroup in ") + g);
  }
  const json screen = t.call(tag, "groups.sylow3_screen",
                             {{"candidates", {"Z_3", "Z_9", "Z_27", "Z_3xZ_3", "Z_9xZ_3", "Z_3xZ_3xZ_3", "U33", "Z9semiZ3"}},
                              {"forbidden", {"Z3cubed", "U33", "Z9xZ3"}}},
                             "Sylow 3-subgroups avoiding the excluded groups, with their cyclic index");
  IndexSet sylow_index;
  for (const auto& s : screen) sylow_index.insert(s.at("min_cyclic_index").get<std::int64_t>());
  return as_set(t.call(tag, "index.products", {{"factors", {sylow_index, ds}}},
                       "index-3 subgroup with cyclic Sylow subgroups (normal 3-complement), then class C_d with d | 3"));
}

}  // namespace detail

/// Dimension-5 fixed set with one of the census profiles.
inline BranchResult lemma56_branch(const cohomology::FixedPointProfile& profile) {
  using cohomology::ComponentType;
  const auto census = cohomology::enumerate_profiles(6, 5);
  if (std::find(census.begin(), census.end(), profile) == census.end())
    throw std::invalid_argument("profile is not in the dimension-5 census");
  BranchResult out;
  detail::Tracer t(out.steps);
  const std::string tag = "dim5-profile";
  if (profile.count(ComponentType::CP1xS3) == 1) {
    t.axiom(tag, "weinstein", "index <= 2 subgroup acting trivially on H^*(M;Q)");
    t.axiom(tag, "davis-weinberger", "that subgroup splits as Z_{2^a} x (odd order)");
    const auto [primes, ds] = detail::orbit_space_sweeps(t, tag, ComponentType::CP1xS3);
    if (!primes.empty()) throw std::logic_error("CP1xS3 branch: no Z_p x Z_p should survive");
    out.indices = detail::as_set(t.call(tag, "index.products", {{"factors", {std::vector<std::int64_t>{1, 2}, ds}}},
                                        "odd part is cyclic; index comes from the orientation subgroup"));
    return out;
  }
  const auto k = static_cast<std::int64_t>(profile.count(ComponentType::S5));
  const IndexSet core = detail::s5_core(t, tag);
  IndexSet stabilizer;
  for (std::int64_t i = 1; i <= k; ++i) stabilizer.insert(i);
  if (k > 1) t.axiom(tag, "allday-puppe", "the component stabilizer has index at most the number of components");
  out.indices = detail::as_set(t.call(tag, "index.products", {{"factors", {stabilizer, core}}},
                                      "stabilizer of one S^5 component, then the S^5 analysis"));
  return out;
}

/// Largest total mod-3 Betti number over the mod 3 Bazaikin types (or of q's type).
inline std::int64_t mod3_budget(detail::Tracer& t, const std::string& tag, const std::optional<bazaikin::QTuple>& q) {
  std::vector<std::int64_t> ms{1, 3};
  if (q) ms = {bazaikin::integral_cohomology(*q).torsion_order()};
  std::int64_t best = 0;
  for (auto m : ms)
    best = std::max(best, t.call(tag, "bazaikin.betti", {{"m", m}, {"p", 3}}, "mod-3 Betti numbers of the universal cover")
                              .at("total")
                              .get<std::int64_t>());
  return best;
}

/// Two or three rational S^5 components with mod 3 coefficients.
inline BranchResult mod3_branch(const cohomology::FixedPointProfile& profile,
                                const std::optional<bazaikin::QTuple>& q = std::nullopt) {
  using cohomology::ComponentType;
  const auto k = static_cast<std::int64_t>(profile.count(ComponentType::S5));
  if ((k != 2 && k != 3) || profile.components.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("mod 3 branch needs two or three S5 components");
  BranchResult out;
  detail::Tracer t(out.steps);
  const std::string tag = "mod3-branch";
  t.axiom(tag, "totally-geodesic", "each S^5 component is also a component of the Z_3 fixed set");
  t.axiom(tag, "codimension-two", "otherwise a 7-dimensional Z_3 component would be a homotopy sphere");
  t.axiom(tag, "connectedness-lemma", "which contradicts 3-connectedness of its inclusion");
  const std::int64_t budget = mod3_budget(t, tag, q);
  const json small = t.call(tag, "cohomology.poincare_vectors", {{"dim", 5}, {"budget", budget / k}},
                            "mod-3 Betti vectors possible for the smallest component");
  bool needs_serre = false;
  for (const auto& b : small) {
    const auto v = detail::ints(b);
    if (v[2] > 0) needs_serre = true;
  }
  if (needs_serre) {
    const json ss = t.call(tag, "serre.exhaustive_verdict", {{"p", 3}},
                           "Z_3 x Z_3 cannot act freely on a mod-3 S^2 x S^3");
    if (!ss.at("verdict").get<bool>()) throw std::logic_error("spectral sequence verdict failed");
  }
  t.axiom(tag, "smith", "Z_3 x Z_3 cannot act freely on a mod-3 S^5");
  t.axiom(tag, "davis-weinberger", "stabilizer splits as Z_{2^c} x (odd order)");
  const auto [primes, ds] = detail::orbit_space_sweeps(t, tag, ComponentType::S5);
  if (primes != std::vector<std::int64_t>{3}) throw std::logic_error("mod 3 branch: only p = 3 should survive the sweep");
  IndexSet stabilizer;
  for (std::int64_t i = 1; i <= k; ++i) stabilizer.insert(i);
  out.indices = detail::as_set(t.call(tag, "index.products", {{"factors", {stabilizer, ds}}},
                                      "all Sylow subgroups of the odd part cyclic, class C_d with d | 3"));
  return out;
}

namespace detail {

inline IndexSet torus_fixed_point(Tracer& t) {
  const std::string tag = "torus-fixed-point";
  const json rat = t.call(tag, "bazaikin.betti", {{"m", 1}, {"p", 0}}, "rational Betti numbers of the universal cover");
  const auto even = rat.at("even_total").get<std::int64_t>();
  t.axiom(tag, "allday-puppe", "components of the T^2 fixed set are at most the even Betti sum");
  t.axiom(tag, "codimension-two", "a codim-2 step inside a circle fixed set gives a cyclic stabilizer");
  t.axiom(tag, "totally-geodesic", "circle fixed components have dimension <= 7");
  // Third case: a 3-dimensional T^2 component inside 7-dimensional circle components,
  // each contributing codimension 4 to Borel's sum of total codimension 10.
  for (std::size_t circles = 1; circles <= 3; ++circles) {
    const std::vector<std::int64_t> codims(circles, 4);
    if (t.call(tag, "cohomology.borel_feasible", {{"codim_total", 10}, {"circle_codims", codims}},
               "codimension-4 contributions cannot sum to 10")
            .get<bool>())
      throw std::logic_error("Borel count unexpectedly feasible");
  }
  return as_set(t.call(tag, "index.at_most", {{"bound", even}}, "cyclic stabilizer of a component"));
}

inline IndexSet low_dim_component(Tracer& t) {
  const std::string tag = "low-dim-component";
  t.axiom(tag, "weinstein", "index <= 2 subgroup acting trivially on H^*(M;Q)");
  t.axiom(tag, "davis-weinberger", "that subgroup splits as Z_{2^a} x (odd order)");
  t.axiom(tag, "allday-puppe", "at most three components, so the odd stabilizer index divides 3");
  const auto [primes, ds] = orbit_space_sweeps(t, tag, cohomology::ComponentType::S3);
  if (!primes.empty()) throw std::logic_error("S3 branch: no Z_p x Z_p should survive");
  return as_set(t.call(tag, "index.products",
                       {{"factors", {std::vector<std::int64_t>{1, 2}, std::vector<std::int64_t>{1, 3}, ds}}},
                       "orientation subgroup, component stabilizer, cyclic odd part"));
}

inline IndexSet dim5(Tracer& t, std::vector<TraceStep>& sink, CohomologyType type, const std::optional<bazaikin::QTuple>& q) {
  const std::string tag = "dim5-profile";
  t.axiom(tag, "allday-puppe", "Betti sum of the fixed set is at most 6");
  const json census = t.call(tag, "cohomology.enumerate_profiles", {{"budget", 6}, {"dim", 5}},
                             "rational types of a 5-dimensional circle fixed set");
  IndexSet out;
  for (const auto& labels : census) {
    cohomology::FixedPointProfile p;
    for (const auto& l : labels) p.components.push_back(cohomology::component_from_string(l.get<std::string>()));
    const bool mod3 = type == CohomologyType::Mod3Bazaikin && p.count(cohomology::ComponentType::S5) >= 2;
    BranchResult r = mod3 ? mod3_branch(p, q) : lemma56_branch(p);
    sink.insert(sink.end(), r.steps.begin(), r.steps.end());
    out.insert(r.indices.begin(), r.indices.end());
  }
  return out;
}

inline IndexSet dim7(Tracer& t, const IndexSet& low, const IndexSet& s5) {
  const std::string tag = "dim7-reduction";
  t.axiom(tag, "totally-geodesic", "circle fixed set has dimension at most 7");
  if (t.call(tag, "cohomology.frankel_compatible", {{"dims", {7, 7}}, {"ambient", 13}}, "two 7-dimensional components")
          .get<bool>())
    throw std::logic_error("Frankel check unexpectedly compatible");
  t.axiom(tag, "frankel", "so at most one 7-dimensional component");
  t.axiom(tag, "connectedness-lemma", "the 7-dimensional component has b_2 = 1, hence Betti sum >= 4");
  for (int d : {3, 5}) {
    const json others = t.call(tag, "cohomology.poincare_vectors", {{"dim", d}, {"budget", 2}},
                               "another component has Betti sum <= 2, so it is a rational sphere");
    if (others.size() != 1) throw std::logic_error("expected only the sphere type");
  }
  t.axiom(tag, "rong-isotropy", "a connected 7-dimensional fixed set: cyclic, or a torus fixed point, or another circle of dim <= 5");
  IndexSet out{1};
  out.insert(low.begin(), low.end());
  out.insert(s5.begin(), s5.end());
  return as_set(t.call(tag, "index.products", {{"factors", {out}}}, "a sphere component falls under the earlier branches"));
}

}  // namespace detail

inline ObstructionReport theorem_a_report(const ScenarioInput& s) {
  if (s.symmetry_rank != 2 && s.symmetry_rank != 3) throw std::invalid_argument("symmetry rank must be 2 or 3");
  ObstructionReport rep;
  rep.axioms_used = declared_axioms();
  detail::Tracer t(rep.case_trace);
  if (s.q) {
    const auto prof = bazaikin::integral_cohomology(*s.q);
    t.call("scenario-input", "bazaikin.betti",
           {{"m", prof.torsion_order()}, {"p", s.cohomology == CohomologyType::Mod3Bazaikin ? 3 : 0}},
           "cohomology of the given Bazaikin space");
  }
  if (s.symmetry_rank == 3) {
    t.axiom("torus-fixed-point", "berger-sugahara", "some T^2 inside T^3 has a fixed point");
    rep.index_bound_set = detail::torus_fixed_point(t);
    return rep;
  }
  t.axiom("torus-fixed-point", "berger-sugahara", "some circle in T^2 has a non-empty fixed set");
  const IndexSet torus = detail::torus_fixed_point(t);
  const IndexSet low = detail::low_dim_component(t);
  const IndexSet five = detail::dim5(t, rep.case_trace, s.cohomology, s.q);
  BranchResult s5 = lemma56_branch({{cohomology::ComponentType::S5}});
  for (auto& step : s5.steps) step.tag = "dim7-reduction";
  rep.case_trace.insert(rep.case_trace.end(), s5.steps.begin(), s5.steps.end());
  const IndexSet seven = detail::dim7(t, low, s5.indices);
  for (const IndexSet* part : {&torus, &low, &five, &seven}) rep.index_bound_set.insert(part->begin(), part->end());
  return rep;
}

inline json to_json(const ObstructionReport& r) {
  json trace = json::array();
  for (const auto& s : r.case_trace) trace.push_back(to_json(s));
  return {{"index_bound_set", r.index_bound_set}, {"case_trace", trace}, {"axioms_used", r.axioms_used}};
}

/// One line per step: "[tag] operation inputs -> verdict  (note)".
inline std::string explain(const ObstructionReport& r) {
  std::ostringstream os;
  for (const auto& s : r.case_trace) {
    os << "[" << s.tag << "] ";
    if (s.operation == "axiom") os << "axiom " << s.inputs.at("name").get<std::string>();
    else os << s.operation << " " << s.inputs.dump() << " -> " << s.verdict.dump();
    if (!s.note.empty()) os << "  (" << s.note << ")";
    os << "\n";
  }
  os << "index bound set: " << json(r.index_bound_set).dump() << "\n";
  os << "not covered: symmetry rank 1, and rank >= 4 where pi_1 is already known to be cyclic\n";
  return os.str();
}

}  // namespace pcurv13::theorem_a
