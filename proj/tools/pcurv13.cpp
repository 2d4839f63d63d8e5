// pcurv13: command-line front end. JSON goes to stdout, diagnostics to stderr.
// Exit status 0 on success, 2 on invalid input, 1 on internal failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcurv13/bazaikin.hpp"
#include "pcurv13/cohomology.hpp"
#include "pcurv13/group_analysis.hpp"
#include "pcurv13/group_catalog.hpp"
#include "pcurv13/serre.hpp"
#include "pcurv13/theorem_a.hpp"

namespace {

using json = nlohmann::json;
using namespace pcurv13;

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  if (s.empty() || s == "empty") return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

bazaikin::QTuple tuple_from(const std::vector<std::int64_t>& v) {
  if (v.size() != 5) throw std::invalid_argument("expected five weights, got " + std::to_string(v.size()));
  return bazaikin::QTuple(v[0], v[1], v[2], v[3], v[4]);
}

json bazaikin_json(const bazaikin::QTuple& q) {
  const auto free = bazaikin::check_free(q);
  const auto h = bazaikin::h6_order(q);
  json pairs = json::array();
  for (const auto& p : free.failing_pairs)
    pairs.push_back({{"pairs", {{p.first.first, p.first.second}, {p.second.first, p.second.second}}}, {"gcd", p.gcd}});
  json j{{"q", q.weights()},
         {"free", free.verdict},
         {"all_odd", free.all_odd},
         {"failing_pairs", pairs},
         {"curvature", bazaikin::to_string(bazaikin::check_curvature(q))},
         {"e3", h.e3},
         {"m", h.m.str()},
         {"m_integral", h.integral}};
  j["mod3_type"] = nullptr;
  if (free.verdict && h.integral) j["mod3_type"] = bazaikin::to_string(bazaikin::mod3_type(bazaikin::integral_cohomology(q)));
  return j;
}

void print_bazaikin_text(const json& j) {
  std::cout << "q = " << j["q"].dump() << "\n"
            << "free: " << (j["free"].get<bool>() ? "yes" : "no") << "\n";
  for (const auto& p : j["failing_pairs"]) std::cout << "  failing pair " << p["pairs"].dump() << " gcd " << p["gcd"] << "\n";
  std::cout << "curvature: " << j["curvature"].get<std::string>() << "\n"
            << "e3 = " << j["e3"] << ", m = " << j["m"].get<std::string>()
            << (j["m_integral"].get<bool>() ? "" : " (not integral)") << "\n"
            << "mod 3 type: " << (j["mod3_type"].is_null() ? std::string("n/a") : j["mod3_type"].get<std::string>()) << "\n";
}

json group_json(const groups::GroupTable& g) {
  const auto n = static_cast<std::int64_t>(g.order());
  json sylow = json::object(), p2 = json::object(), nrank = json::object();
  for (auto p : groups::prime_divisors(n)) {
    const auto key = std::to_string(p);
    const auto P = groups::sylow(g, p);
    sylow[key] = P.is_cyclic();
    p2[key] = groups::p2_condition(g, p);
    nrank[key] = groups::normal_rank(P.as_group(), p);
  }
  json j{{"order", n},
         {"abelian", g.is_abelian()},
         {"sylow", sylow},
         {"p2", p2},
         {"two_p", groups::two_p_condition(g)},
         {"all_sylow_cyclic", groups::all_sylow_cyclic(g)},
         {"min_cyclic_index", groups::min_cyclic_index(g)},
         {"normal_rank", nrank}};
  j["davis"] = nullptr;
  if (auto d = groups::davis_decomposition(g)) j["davis"] = {{"a", d->a}, {"odd_order", d->odd_part.order()}};
  if (n == 27) j["order27"] = groups::to_string(groups::classify_order_27(g));
  return j;
}

json verdict_json(const serre::VerdictReport& r) {
  json choices;
  try {
    choices = std::stoull(r.choices_examined);
  } catch (const std::out_of_range&) {
    choices = r.choices_examined;  // beyond 64 bits: keep the exact decimal string
  }
  return {{"p", r.p},
          {"choices", choices},
          {"min_deg6_survivors", r.min_deg6_survivors},
          {"min_e_inf_6_0", r.min_e_inf_6_0},
          {"free_action_possible", !r.verdict}};
}

json page_json(const serre::BigradedPage& page) {
  json dims = json::array();
  for (const auto& [mn, d] : page.dims) dims.push_back({{"m", mn.first}, {"n", mn.second}, {"dim", d}});
  return {{"r", page.r}, {"dims", dims}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstruction toolkit for fundamental groups of positively curved 13-manifolds"};
  app.require_subcommand(1);

  // bazaikin
  auto* baz = app.add_subcommand("bazaikin", "Bazaikin parameter checks");
  baz->require_subcommand(1);
  auto* baz_check = baz->add_subcommand("check", "freeness, curvature sign pattern and cohomology of one tuple");
  std::vector<std::int64_t> q_raw;
  bool baz_json = false;
  baz_check->add_option("q", q_raw, "five weights q1 .. q5")->required()->expected(5);
  baz_check->add_flag("--json", baz_json, "emit JSON");
  auto* baz_enum = baz->add_subcommand("enumerate", "free positively curved tuples up to a bound");
  std::int64_t bound = 5;
  std::string format = "json";
  baz_enum->add_option("--bound", bound, "max |q_i|")->required();
  baz_enum->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

  // group
  auto* grp = app.add_subcommand("group", "finite group tables");
  grp->require_subcommand(1);
  auto* grp_build = grp->add_subcommand("build", "write a multiplication table");
  std::vector<std::int64_t> burnside;
  std::string name, out_path, in_path;
  auto* opt_burn = grp_build->add_option("--burnside", burnside, "m n r")->expected(3);
  auto* opt_name = grp_build->add_option("--name", name, "catalog name, e.g. U33 or Z_9xZ_3");
  opt_burn->excludes(opt_name);
  grp_build->add_option("--out", out_path, "output file (default stdout)");
  auto* grp_an = grp->add_subcommand("analyze", "Sylow, (p^2), normal rank and Davis data");
  auto* opt_in = grp_an->add_option("--in", in_path, "table file");
  auto* opt_an_name = grp_an->add_option("--name", name, "catalog name instead of a file");
  opt_in->excludes(opt_an_name);
  bool grp_json = false;
  grp_an->add_flag("--json", grp_json, "emit JSON (default)");

  // fixedpoint
  auto* fp = app.add_subcommand("fixedpoint", "fixed-point and Lefschetz bookkeeping");
  fp->require_subcommand(1);
  auto* fp_prof = fp->add_subcommand("profiles", "fixed-set profile census");
  std::int64_t budget = 6;
  int dim = 5;
  bool fp_json = false;
  fp_prof->add_option("--budget", budget, "Betti-sum budget");
  fp_prof->add_option("--dim", dim, "component dimension");
  fp_prof->add_flag("--json", fp_json, "emit JSON (default)");
  auto* fp_gysin = fp->add_subcommand("gysin", "Smith-Gysin rank solutions");
  std::string space, fixed = "empty";
  fp_gysin->add_option("--space", space, "S1 S3 S5 S7 CP1xS3 CP2, or comma-separated Betti numbers")->required();
  fp_gysin->add_option("--fixed", fixed, "empty, a component name, or comma-separated Betti numbers");
  auto* fp_obs = fp->add_subcommand("obstruct", "divisibility obstruction");
  std::string group_spec, lef_list, dims_list;
  bool even_allowed = false;
  fp_obs->add_option("--group", group_spec, "cd:<d> or zpxzp:<p>")->required();
  auto* opt_lef = fp_obs->add_option("--lef", lef_list, "comma-separated Lefschetz values");
  auto* opt_dims = fp_obs->add_option("--dims", dims_list, "cohomology dimensions; the value set is computed");
  opt_lef->excludes(opt_dims);
  fp_obs->add_flag("--any-order", even_allowed, "allow even-order elements when computing from --dims");

  // ss
  auto* ss = app.add_subcommand("ss", "mod-p Serre spectral sequence engine");
  ss->require_subcommand(1);
  auto* ss_verify = ss->add_subcommand("verify", "exhaustive search over differential choices");
  std::int64_t p = 3;
  bool ss_trace = false;
  ss_verify->add_option("--p", p, "odd prime (3, 5 or 7)")->required();
  ss_verify->add_flag("--trace", ss_trace, "include the E_2 page and the all-zero run");

  // theorem-a
  auto* ta = app.add_subcommand("theorem-a", "cyclic-index bound case tree");
  int rank = 2;
  std::string cohom = "rational", q_list;
  bool ta_json = false, ta_explain = false;
  ta->add_option("--rank", rank, "symmetry rank (2 or 3)")->required();
  ta->add_option("--cohomology", cohom, "rational or mod3")->required();
  ta->add_option("--q", q_list, "optional tuple q1,..,q5");
  auto* opt_tj = ta->add_flag("--json", ta_json, "emit JSON (default)");
  auto* opt_te = ta->add_flag("--explain", ta_explain, "emit the trace as prose lines");
  opt_tj->excludes(opt_te);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*baz_check) {
      const json j = bazaikin_json(tuple_from(q_raw));
      if (baz_json) std::cout << j.dump(2) << "\n";
      else print_bazaikin_text(j);
    } else if (*baz_enum) {
      const auto spaces = bazaikin::enumerate_spaces(bound);
      if (format == "tsv") {
        std::cout << "q1\tq2\tq3\tq4\tq5\te3\tm\tmod3_type\n";
        for (const auto& q : spaces) {
          const json j = bazaikin_json(q);
          for (auto v : q.weights()) std::cout << v << "\t";
          std::cout << j["e3"] << "\t" << j["m"].get<std::string>() << "\t"
                    << (j["mod3_type"].is_null() ? std::string("-") : j["mod3_type"].get<std::string>()) << "\n";
        }
      } else {
        json arr = json::array();
        for (const auto& q : spaces) arr.push_back(bazaikin_json(q));
        std::cout << arr.dump(2) << "\n";
      }
    } else if (*grp_build) {
      if (burnside.empty() && name.empty()) throw std::invalid_argument("give --burnside m n r or --name NAME");
      const auto g = burnside.empty() ? groups::build_standard(name)
                                      : groups::build_burnside({burnside[0], burnside[1], burnside[2]});
      if (out_path.empty()) {
        groups::write_table(std::cout, g);
      } else {
        std::ofstream os(out_path);
        if (!os) throw std::invalid_argument("cannot write " + out_path);
        groups::write_table(os, g);
      }
    } else if (*grp_an) {
      groups::GroupTable g;
      if (!name.empty()) {
        g = groups::build_standard(name);
      } else if (!in_path.empty()) {
        std::ifstream is(in_path);
        if (!is) throw std::invalid_argument("cannot read " + in_path);
        g = groups::read_table(is);
      } else {
        throw std::invalid_argument("give --in FILE or --name NAME");
      }
      std::cout << group_json(g).dump(2) << "\n";
    } else if (*fp_prof) {
      json arr = json::array();
      for (const auto& prof : cohomology::enumerate_profiles(budget, dim)) arr.push_back(prof.labels());
      std::cout << json{{"profiles", arr}}.dump(2) << "\n";
    } else if (*fp_gysin) {
      auto betti_of = [](const std::string& s) {
        if (s.empty() || s == "empty") return cohomology::BettiVector{};
        if (s.find(',') != std::string::npos || std::isdigit(static_cast<unsigned char>(s[0]))) return parse_list(s);
        return cohomology::betti(cohomology::component_from_string(s));
      };
      const auto bX = betti_of(space);
      if (bX.size() < 2) throw std::invalid_argument("space needs dimension >= 1");
      const auto sols = cohomology::smith_gysin_solve(bX, betti_of(fixed), static_cast<int>(bX.size()) - 1);
      json arr = json::array();
      for (const auto& s : sols) arr.push_back({{"R", s.R}, {"chi_bar", s.chi_bar}});
      json j{{"solutions", arr}};
      if (sols.size() == 1) {
        j["R"] = sols[0].R;
        j["chi_bar"] = sols[0].chi_bar;
      }
      std::cout << j.dump(2) << "\n";
    } else if (*fp_obs) {
      const auto colon = group_spec.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("group must look like cd:3 or zpxzp:5");
      const std::string kind = group_spec.substr(0, colon);
      const auto vals = parse_list(group_spec.substr(colon + 1));
      if (vals.size() != 1) throw std::invalid_argument("group needs exactly one integer");
      cohomology::GroupScenario g;
      if (kind == "cd") g = cohomology::GroupScenario::class_cd(vals[0]);
      else if (kind == "zpxzp") g = cohomology::GroupScenario::zp_x_zp(vals[0]);
      else throw std::invalid_argument("group kind must be cd or zpxzp");
      std::set<std::int64_t> lef;
      if (!dims_list.empty()) {
        lef = cohomology::lefschetz_value_set({parse_list(dims_list), !even_allowed});
      } else {
        if (lef_list.empty()) throw std::invalid_argument("give --lef or --dims");
        const auto v = parse_list(lef_list);
        lef.insert(v.begin(), v.end());
      }
      const auto v = cohomology::divisibility_obstruction(g, lef);
      std::cout << json{{"group", g.str()}, {"lefschetz", lef}, {"excluded", v.excluded}, {"index", v.index}, {"surviving", v.surviving}}.dump(2)
                << "\n";
    } else if (*ss_verify) {
      json j = verdict_json(serre::exhaustive_verdict(p));
      if (ss_trace) {
        j["bg_dims"] = serre::bg_dims(p, serre::kWindow);
        j["e2"] = page_json(serre::e2_page(p));
        j["all_zero_e_inf"] = page_json(serre::run_choice(p, {}));
      }
      std::cout << j.dump(2) << "\n";
    } else if (*ta) {
      theorem_a::ScenarioInput s;
      s.symmetry_rank = rank;
      s.cohomology = theorem_a::cohomology_type_from_string(cohom);
      if (!q_list.empty()) s.q = tuple_from(parse_list(q_list));
      const auto rep = theorem_a::theorem_a_report(s);
      if (ta_explain) std::cout << theorem_a::explain(rep);
      else std::cout << theorem_a::to_json(rep).dump(2) << "\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
