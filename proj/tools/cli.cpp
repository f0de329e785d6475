#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgheun/conditional.hpp"
#include "kgheun/construct.hpp"
#include "kgheun/verify.hpp"
#include "spec_io.hpp"

namespace kgheun::cli {

using nlohmann::ordered_json;

namespace {

struct Options {
  std::vector<int> family;
  int row = 0;
  std::string V0, V1, V2, x0, sigma;
  std::string spec_file;
  std::string E = "0.5";
  double mass = 1.0;
  double hbar = 1.0;
  double c = 1.0;
  std::string branch = "+++";
  std::vector<double> grid;
  bool log = false;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out;
  double perturb_q = 0.0;
  std::optional<double> plane_wave;
  bool sweep = false;
  bool canonical = false;
  std::vector<double> sigmas{1.0, 3.0, 10.0};
};

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::degenerate:
    case ErrorKind::pole:
    case ErrorKind::singular_path:
    case ErrorKind::singular_point:
    case ErrorKind::convergence: return exit_degenerate;
    case ErrorKind::oracle_failure:
    case ErrorKind::witness_failure: return exit_verification;
    default: return exit_config;
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

ordered_json pair(Complex v) { return ordered_json::array({v.real() + 0.0, v.imag() + 0.0}); }

ordered_json spec_json(const catalog::PotentialSpec& s) { return ordered_json::parse(spec_to_json(s)); }

ordered_json query_json(const construct::QuerySpec& q) {
  return {{"E", pair(q.E)}, {"mass", q.mass}, {"hbar", q.constants.hbar}, {"c", q.constants.c}};
}

ordered_json heun_json(const specfun::HeunParams& h) {
  return {{"gamma", pair(h.gamma)}, {"delta", pair(h.delta)}, {"epsilon", pair(h.epsilon)},
          {"alpha", pair(h.alpha)}, {"q", pair(h.q)}};
}

ordered_json prefactor_json(const construct::Prefactor& p) {
  return {{"alpha0", pair(p.a0)}, {"alpha1", pair(p.a1)}, {"alpha2", pair(p.a2)},
          {"branch", construct::branch_string(p.signs)},
          {"double_root", {p.double_root[0], p.double_root[1], p.double_root[2]}}};
}

class Command {
 public:
  Command(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  catalog::PotentialSpec spec() const {
    catalog::PotentialSpec s;
    bool have = false;
    if (!o_.spec_file.empty()) {
      s = spec_from_file(o_.spec_file);
      have = true;
    }
    if (!o_.family.empty()) {
      s.family = catalog::FamilyId::from_twice(o_.family[0], o_.family[1]);
      have = true;
    } else if (o_.row != 0) {
      s.family = catalog::FamilyId::from_row(o_.row);
      have = true;
    }
    if (!have) throw Error(ErrorKind::config, "a family is required (--family, --row or --spec)");
    if (!o_.V0.empty()) s.V0 = parse_complex(o_.V0);
    if (!o_.V1.empty()) s.V1 = parse_complex(o_.V1);
    if (!o_.V2.empty()) s.V2 = parse_complex(o_.V2);
    if (!o_.x0.empty()) s.x0 = parse_complex(o_.x0);
    if (!o_.sigma.empty()) s.sigma = parse_complex(o_.sigma);
    return catalog::PotentialSpec::make(s.family, s.V0, s.V1, s.V2, s.x0, s.sigma);
  }

  construct::QuerySpec query() const {
    construct::QuerySpec q;
    q.E = parse_complex(o_.E);
    q.mass = o_.mass;
    q.constants = {o_.hbar, o_.c};
    q.validate();
    return q;
  }

  bool has_grid() const { return !o_.grid.empty(); }

  std::vector<double> real_grid(double start, double stop, int count) const {
    if (has_grid()) {
      start = o_.grid[0];
      stop = o_.grid[1];
      count = static_cast<int>(o_.grid[2]);
      if (o_.grid[2] != count) throw Error(ErrorKind::config, "grid count must be an integer");
    }
    if (count < 2) throw Error(ErrorKind::config, "grid count must be at least 2");
    const auto g = o_.log ? verify::Grid::logarithmic(start, stop, count, 1.0)
                          : verify::Grid::linear(start, stop, count, 1.0);
    std::vector<double> xs;
    for (Complex x : g.points) xs.push_back(x.real());
    return xs;
  }

  /// --grid in x if given, else x(z) for z in [0.05, 0.75].
  verify::Grid solution_grid(const catalog::PotentialSpec& s, int min_count) const {
    if (!has_grid()) return verify::Grid::from_z(s, 0.05, 0.75, 50);
    const auto xs = real_grid(0, 0, 0);
    if (static_cast<int>(xs.size()) < min_count) {
      throw Error(ErrorKind::config, "grid count must be at least " + std::to_string(min_count));
    }
    verify::Grid g;
    for (double x : xs) {
      g.points.emplace_back(x);
      g.steps.emplace_back(1e-3 * std::abs(s.sigma));
    }
    return g;
  }

  void emit(const std::string& text) const {
    if (o_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::config, "cannot write " + o_.out);
    f << text;
  }

  bool json() const { return o_.format == "json"; }

  int list() const {
    std::string text;
    ordered_json rows = ordered_json::array();
    if (!json()) text = "m1_x2,m2_x2,label,canonical,row,mirror_m1_x2,mirror_m2_x2,potential,transformation,annotation\n";
    for (const auto& f : catalog::all_families()) {
      if (o_.canonical && !f.canonical()) continue;
      const auto m = catalog::mirror(f);
      if (json()) {
        rows.push_back({{"m1_x2", f.m1.twice()}, {"m2_x2", f.m2.twice()}, {"label", f.label()},
                        {"canonical", f.canonical()}, {"row", m.canonical.row()},
                        {"mirror", {m.canonical.m1.twice(), m.canonical.m2.twice()}},
                        {"potential", catalog::potential_formula(f)},
                        {"transformation", catalog::transformation_formula(f)},
                        {"annotation", catalog::subpotential_annotation(f)}});
        continue;
      }
      text += std::to_string(f.m1.twice()) + "," + std::to_string(f.m2.twice()) + "," + csv_field(f.label()) + "," +
              (f.canonical() ? "true" : "false") + "," + std::to_string(m.canonical.row()) + "," +
              std::to_string(m.canonical.m1.twice()) + "," + std::to_string(m.canonical.m2.twice()) + "," +
              csv_field(catalog::potential_formula(f)) + "," + csv_field(catalog::transformation_formula(f)) + "," +
              csv_field(catalog::subpotential_annotation(f)) + "\n";
    }
    emit(json() ? rows.dump(2) + "\n" : text);
    return exit_ok;
  }

  int eval() const {
    const auto s = spec();
    const auto d = catalog::real_domain(s.family);
    const double lo = std::max(d.s_min, -5.0), hi = std::min(d.s_max, 5.0);
    const double sig = std::abs(s.sigma);
    const auto xs = real_grid(s.x0.real() + sig * lo, s.x0.real() + sig * hi, 101);
    std::string text = "x,re_z,im_z,re_V,im_V,status\n";
    ordered_json rows = ordered_json::array();
    const double nan = std::nan("");
    for (double x : xs) {
      Complex z(nan, nan), V(nan, nan);
      std::string status = "ok";
      try {
        z = catalog::map_x_to_z(s, x);
        V = catalog::potential_value(s, x);
      } catch (const Error& e) {
        status = to_string(e.kind());
      }
      if (json()) {
        rows.push_back({{"x", x}, {"z", pair(z)}, {"V", pair(V)}, {"status", status}});
      } else {
        text += num(x) + "," + num(z.real()) + "," + num(z.imag()) + "," + num(V.real()) + "," + num(V.imag()) + "," +
                status + "\n";
      }
    }
    if (json()) {
      ordered_json j{{"command", "eval"}, {"spec", spec_json(s)}, {"rows", rows}};
      emit(j.dump(2) + "\n");
    } else {
      emit(text);
    }
    return exit_ok;
  }

  construct::WaveFunction solution(const catalog::PotentialSpec& s, const construct::QuerySpec& q,
                                   const std::string& branch) const {
    auto wf = construct::build_solution(s, q, construct::parse_branch(branch));
    if (o_.perturb_q == 0.0) return wf;
    auto h = wf.heun();
    h.q += o_.perturb_q;
    return construct::WaveFunction(s, q, wf.prefactor(), h);
  }

  int solve() const {
    const auto s = spec();
    const auto q = query();
    const auto wf = solution(s, q, o_.branch);
    const auto grid = solution_grid(s, 2);
    const auto& h = wf.heun();
    const auto& p = wf.prefactor();
    if (json()) {
      ordered_json rows = ordered_json::array();
      for (Complex x : grid.points) rows.push_back({{"x", pair(x)}, {"psi", pair(wf(x))}});
      ordered_json j{{"command", "solve"}, {"spec", spec_json(s)}, {"query", query_json(q)},
                     {"prefactor", prefactor_json(p)}, {"heun", heun_json(h)}, {"rows", rows}};
      emit(j.dump(2) + "\n");
      return exit_ok;
    }
    std::string text = "re_x,im_x,re_psi,im_psi\n";
    for (Complex x : grid.points) {
      const Complex psi = wf(x);
      text += num(x.real()) + "," + num(x.imag()) + "," + num(psi.real()) + "," + num(psi.imag()) + "\n";
    }
    emit(text);
    err_ << "branch " << construct::branch_string(p.signs) << " alpha0=" << p.a0 << " alpha1=" << p.a1
         << " alpha2=" << p.a2 << " gamma=" << h.gamma << " delta=" << h.delta << " epsilon=" << h.epsilon
         << " alpha=" << h.alpha << " q=" << h.q << "\n";
    return exit_ok;
  }

  struct Check {
    std::string name;
    double value;
    double tol;
    bool pass;
  };

  int report(const std::string& command, const std::optional<catalog::PotentialSpec>& s,
             const construct::QuerySpec& q, const std::vector<Check>& checks, ordered_json extra = {}) const {
    bool ok = true;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
      ok = ok && c.pass;
      arr.push_back({{"name", c.name},
                     {"max_rel_residual", std::isnan(c.value) ? ordered_json(nullptr) : ordered_json(c.value)},
                     {"tol", c.tol},
                     {"pass", c.pass}});
      if (!c.pass) err_ << "check failed: " << c.name << " (" << num(c.value) << " >= " << num(c.tol) << ")\n";
    }
    const int code = ok ? exit_ok : exit_verification;
    ordered_json j{{"command", command}, {"spec", s ? spec_json(*s) : ordered_json(nullptr)},
                   {"query", query_json(q)}, {"checks", arr}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["exit"] = code;
    emit(j.dump(2) + "\n");
    return code;
  }

  std::vector<Check> verify_spec(const catalog::PotentialSpec& s, const construct::QuerySpec& q,
                                 const std::string& branch, const std::string& suffix) const {
    std::vector<Check> checks;
    const double kg_tol = o_.tol.value_or(1e-6);
    const auto wf = solution(s, q, branch);
    const auto grid = solution_grid(s, 9);
    const auto kg = verify::kg_residual(wf, grid, kg_tol);
    checks.push_back({"kg_residual" + suffix, kg.max_rel_residual, kg_tol, kg.pass});

    std::vector<Complex> zs;
    for (Complex x : grid.points) zs.push_back(catalog::map_x_to_z(s, x));
    const auto clean = construct::build_solution(s, q, construct::parse_branch(branch));
    const auto ode = verify::heun_ode_residual(clean.heun(), zs, 1e-8, wf.heun());
    checks.push_back({"heun_ode_residual" + suffix, ode.max_rel_residual, 1e-8, ode.pass});

    std::string flipped = branch;
    flipped[1] = flipped[1] == '+' ? '-' : '+';
    try {
      const auto other = construct::build_solution(s, q, construct::parse_branch(flipped));
      if (!other.prefactor().double_root[1]) {
        const auto [ja, jb] = verify::branch_jets(clean, other);
        const auto w = verify::wronskian_check(ja, jb, clean.heun(), zs, 1e-8);
        checks.push_back({"wronskian" + suffix, w.deviation, 1e-8, w.pass});
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::degenerate) throw;
      err_ << "wronskian" << suffix << " skipped: " << e.what() << "\n";
    }

    if (s.family.canonical() && s.real_coordinates()) {
      const auto t = verify::transform_consistency(s, verify::domain_grid(s, 50));
      checks.push_back({"transform_consistency" + suffix, std::max(t.max_derivative, t.max_roundtrip),
                        t.derivative_tol, t.pass});
    }
    return checks;
  }

  int verify_cmd() const {
    const auto q = query();
    if (o_.plane_wave) {
      const double k = *o_.plane_wave;
      const auto xs = real_grid(-1.0, 1.0, 21);
      verify::Grid g;
      for (double x : xs) {
        g.points.emplace_back(x);
        g.steps.emplace_back(1e-3);
      }
      const double tol = o_.tol.value_or(1e-8);
      const auto r = verify::kg_residual([&](Complex x) { return std::exp(Complex(0, k) * x); },
                                         [](Complex) { return Complex(0.0); }, q, g, tol);
      return report("verify", std::nullopt, q, {{"kg_residual_plane_wave", r.max_rel_residual, tol, r.pass}},
                    {{"plane_wave_k", k}});
    }
    if (o_.sweep) {
      std::vector<Check> checks;
      const double kg_tol = o_.tol.value_or(1e-6);
      for (const auto& f : catalog::canonical_families()) {
        auto s = catalog::PotentialSpec::make(f, 0.1, 0.2, 0.3, 0.0, 1.0);
        if (!o_.V0.empty()) s.V0 = parse_complex(o_.V0);
        if (!o_.V1.empty()) s.V1 = parse_complex(o_.V1);
        if (!o_.V2.empty() && catalog::has_v2(f)) s.V2 = parse_complex(o_.V2);
        const auto polys = construct::polys(s);
        for (const auto& pf : construct::exponents(polys, f, q)) {
          const std::string b = construct::branch_string(pf.signs);
          const std::string name = "kg_residual[row=" + std::to_string(f.row()) + ",branch=" + b + "]";
          try {
            const auto wf = construct::build_solution(s, q, pf.signs);
            const auto r = verify::kg_residual(wf, verify::Grid::from_z(s, 0.05, 0.75, 50), kg_tol);
            checks.push_back({name, r.max_rel_residual, kg_tol, r.pass});
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::degenerate) throw;
            err_ << name << " skipped: " << e.what() << "\n";
          }
        }
      }
      return report("verify", std::nullopt, q, checks, {{"sweep", true}});
    }
    const auto s = spec();
    return report("verify", s, q, verify_spec(s, q, o_.branch, ""));
  }

  int reduce() const {
    const auto s = spec();
    const auto q = query();
    const auto polys = construct::polys(s);
    const auto pf = construct::exponents_for(polys, s.family, q, construct::parse_branch(o_.branch));
    const auto h = construct::heun_params(pf, polys, s.family, q);
    const double tol = o_.tol.value_or(1e-10);
    const auto r = construct::detect_reduction(h, tol);
    ordered_json red{{"kind", construct::to_string(r.kind)}};
    std::vector<Check> checks;
    if (r.kind != construct::ReductionKind::none) {
      red["a"] = pair(r.a);
      red["b"] = pair(r.b);
      if (r.kind == construct::ReductionKind::gauss) {
        red["c"] = pair(r.c);
      } else {
        red["scale"] = pair(r.scale);
        red["shift"] = pair(r.shift);
      }
      red["normalization"] = pair(r.normalization);
      red["mirrored"] = r.mirrored;
      std::vector<Complex> zs;
      for (int k = 0; k < 20; ++k) zs.push_back(0.05 + 0.55 * k / 19.0);
      const double agreement = construct::reduction_agreement(r, h, zs);
      checks.push_back({"reduction_agreement", agreement, 1e-9, agreement < 1e-9});
    }
    return report("reduce", s, q, checks, {{"prefactor", prefactor_json(pf)}, {"heun", heun_json(h)}, {"reduction", red}});
  }

  int fig2() const {
    const auto xs = real_grid(0.05, 20.0, 400);
    const auto rows = conditional::fig2_data(o_.sigmas, xs);
    if (!json()) {
      emit(conditional::fig2_csv(rows));
      return exit_ok;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back({{"sigma", r.sigma}, {"x", r.x}, {"z", r.z}, {"V", pair(r.V)}});
    emit(ordered_json{{"command", "fig2"}, {"rows", arr}}.dump(2) + "\n");
    return exit_ok;
  }

  int selftest() const {
    std::vector<Check> checks;
    auto add = [&](const std::string& name, double dev, double tol) { checks.push_back({name, dev, tol, dev < tol}); };
    add("kummer_1f1(1;1;1) = e", std::abs(specfun::kummer_1f1(1.0, 1.0, 1.0) - std::exp(1.0)) / std::exp(1.0), 1e-14);
    add("gauss_2f1(1,1;2;0.5) = 2 ln 2",
        std::abs(specfun::gauss_2f1(1.0, 1.0, 2.0, 0.5) - 2.0 * std::log(2.0)) / (2.0 * std::log(2.0)), 1e-13);
    add("heun_c(alpha = q = 0) = 1", std::abs(specfun::heun_c({1.5, 0.7, 0.3, 0.0, 0.0}, 0.7) - 1.0), 1e-15);
    add("lambert_w(principal, e) = 1", std::abs(specfun::lambert_w(specfun::WBranch::principal, std::exp(1.0)) - 1.0),
        1e-14);
    const auto q = construct::QuerySpec{};
    const auto s = catalog::PotentialSpec::make(catalog::FamilyId::from_row(7), 0.1, 0.2, 0.0, 0.0, 1.0);
    const auto wf = construct::build_solution(s, q, construct::parse_branch("+++"));
    const auto r = verify::kg_residual(wf, verify::Grid::from_z(s, 0.05, 0.75, 50), 1e-6);
    add("kg_residual family (1,0)", r.max_rel_residual, 1e-6);
    return report("selftest", std::nullopt, q, checks);
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_spec_options(CLI::App* app, Options& o) {
  app->add_option("--family", o.family, "family as twice (m1, m2), e.g. 2 0")->expected(2);
  app->add_option("--row", o.row, "canonical row 1..9");
  app->add_option("--V0", o.V0, "re[,im]");
  app->add_option("--V1", o.V1, "re[,im]");
  app->add_option("--V2", o.V2, "re[,im]");
  app->add_option("--x0", o.x0, "re[,im]");
  app->add_option("--sigma", o.sigma, "re[,im]");
  app->add_option("--spec", o.spec_file, "JSON spec file; flags override its fields");
}

void add_query_options(CLI::App* app, Options& o) {
  app->add_option("--E", o.E, "energy re[,im]");
  app->add_option("--mass", o.mass, "rest mass");
  app->add_option("--hbar", o.hbar, "reduced Planck constant");
  app->add_option("--c", o.c, "speed of light");
}

void add_output_options(CLI::App* app, Options& o) {
  app->add_option("--grid", o.grid, "start stop count")->expected(3);
  app->add_flag("--log", o.log, "logarithmic grid spacing");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", o.out, "output path (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Klein-Gordon solutions in terms of the confluent Heun function"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list the admissible families");
  list->add_flag("--canonical", o.canonical, "only the nine canonical families");
  list->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  list->add_option("--out", o.out, "output path (default stdout)");

  auto* eval = app.add_subcommand("eval", "evaluate z(x) and V(x) on a grid");
  add_spec_options(eval, o);
  add_output_options(eval, o);

  auto* solve = app.add_subcommand("solve", "evaluate a wave function on a grid");
  add_spec_options(solve, o);
  add_query_options(solve, o);
  add_output_options(solve, o);
  solve->add_option("--branch", o.branch, "exponent signs, e.g. +-+");
  solve->add_option("--perturb-q", o.perturb_q, "add to q (negative control)");

  auto* ver = app.add_subcommand("verify", "run the residual checks, JSON report");
  add_spec_options(ver, o);
  add_query_options(ver, o);
  add_output_options(ver, o);
  ver->add_option("--branch", o.branch, "exponent signs, e.g. +-+");
  ver->add_option("--tol", o.tol, "Klein-Gordon residual tolerance");
  ver->add_option("--perturb-q", o.perturb_q, "add to q (negative control)");
  ver->add_option("--plane-wave", o.plane_wave, "check e^{ikx} with V = 0 instead of a spec");
  ver->add_flag("--sweep", o.sweep, "all nine families and all sign branches");

  auto* red = app.add_subcommand("reduce", "detect hypergeometric reductions");
  add_spec_options(red, o);
  add_query_options(red, o);
  red->add_option("--branch", o.branch, "exponent signs, e.g. +-+");
  red->add_option("--tol", o.tol, "reduction tolerance");
  red->add_option("--out", o.out, "output path (default stdout)");

  auto* fig = app.add_subcommand("fig2", "conditional potential for several sigma");
  add_output_options(fig, o);
  fig->add_option("--sigmas", o.sigmas, "length scales")->delimiter(',');

  auto* self = app.add_subcommand("selftest", "quick internal checks");
  self->add_option("--out", o.out, "output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }

  if (red->parsed() || ver->parsed() || self->parsed()) o.format = "json";

  Command cmd(o, out, err);
  try {
    if (list->parsed()) return cmd.list();
    if (eval->parsed()) return cmd.eval();
    if (solve->parsed()) return cmd.solve();
    if (ver->parsed()) return cmd.verify_cmd();
    if (red->parsed()) return cmd.reduce();
    if (fig->parsed()) return cmd.fig2();
    return cmd.selftest();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e);
  }
}

}  // namespace kgheun::cli
