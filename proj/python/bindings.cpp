#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kgheun/catalog.hpp"
#include "kgheun/conditional.hpp"
#include "kgheun/construct.hpp"
#include "kgheun/specfun.hpp"
#include "kgheun/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace kgheun;

namespace {

catalog::PotentialSpec make_spec(int m1_x2, int m2_x2, Complex V0, Complex V1, Complex V2, Complex x0, Complex sigma) {
  auto s = catalog::PotentialSpec::make(catalog::FamilyId::from_twice(m1_x2, m2_x2), V0, V1, V2, x0, sigma);
  s.validate();
  return s;
}

construct::QuerySpec make_query(Complex E, double mass, double hbar, double c) {
  construct::QuerySpec q;
  q.E = E;
  q.mass = mass;
  q.constants.hbar = hbar;
  q.constants.c = c;
  q.validate();
  return q;
}

construct::Sign sign_of(char c) {
  if (c == '+') return construct::Sign::plus;
  if (c == '-') return construct::Sign::minus;
  throw Error(ErrorKind::config, "sign must be '+' or '-'");
}

py::dict report_dict(const verify::ResidualReport& r) {
  return py::dict("max_abs_residual"_a = r.max_abs_residual, "max_rel_residual"_a = r.max_rel_residual, "tol"_a = r.tol,
                  "pass"_a = r.pass);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Klein-Gordon solutions in terms of the confluent Heun function";

  static py::exception<Error> error(m, "KgheunError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<specfun::HeunParams>(m, "HeunParams")
      .def(py::init([](Complex gamma, Complex delta, Complex epsilon, Complex alpha, Complex q) {
             return specfun::HeunParams{gamma, delta, epsilon, alpha, q};
           }),
           "gamma"_a, "delta"_a, "epsilon"_a, "alpha"_a, "q"_a)
      .def_readwrite("gamma", &specfun::HeunParams::gamma)
      .def_readwrite("delta", &specfun::HeunParams::delta)
      .def_readwrite("epsilon", &specfun::HeunParams::epsilon)
      .def_readwrite("alpha", &specfun::HeunParams::alpha)
      .def_readwrite("q", &specfun::HeunParams::q)
      .def("__repr__", [](const specfun::HeunParams& p) {
        return py::str("HeunParams(gamma={}, delta={}, epsilon={}, alpha={}, q={})")
            .format(p.gamma, p.delta, p.epsilon, p.alpha, p.q);
      });

  m.def("heun_c", [](const specfun::HeunParams& p, Complex z) { return specfun::heun_c(p, z); }, "p"_a, "z"_a);
  m.def(
      "heun_c_jet",
      [](const specfun::HeunParams& p, Complex z) {
        const auto j = specfun::heun_c_jet(p, z);
        return py::make_tuple(j.value, j.first, j.second);
      },
      "p"_a, "z"_a);
  m.def("kummer_1f1", [](Complex a, Complex b, Complex z) { return specfun::kummer_1f1(a, b, z); }, "a"_a, "b"_a, "z"_a);
  m.def(
      "gauss_2f1", [](Complex a, Complex b, Complex c, Complex z) { return specfun::gauss_2f1(a, b, c, z); }, "a"_a, "b"_a,
      "c"_a, "z"_a);
  m.def(
      "lambert_w",
      [](double x, int branch) {
        if (branch != 0 && branch != -1) throw Error(ErrorKind::config, "branch must be 0 or -1");
        return specfun::lambert_w(branch == 0 ? specfun::WBranch::principal : specfun::WBranch::lower, x);
      },
      "x"_a, "branch"_a = 0);

  m.def("families", [](bool canonical_only) {
    py::list out;
    for (const auto& f : canonical_only ? catalog::canonical_families() : catalog::all_families()) {
      out.append(py::dict("m1_x2"_a = f.m1.twice(), "m2_x2"_a = f.m2.twice(), "label"_a = f.label(),
                          "canonical"_a = f.canonical(), "row"_a = f.row(), "potential"_a = catalog::potential_formula(f),
                          "transformation"_a = catalog::transformation_formula(f),
                          "annotation"_a = catalog::subpotential_annotation(f)));
    }
    return out;
  }, "canonical_only"_a = false);

  py::class_<catalog::PotentialSpec>(m, "PotentialSpec")
      .def(py::init(&make_spec), "m1_x2"_a, "m2_x2"_a, "V0"_a = 0.0, "V1"_a = 0.0, "V2"_a = 0.0, "x0"_a = 0.0,
           "sigma"_a = 1.0)
      .def_static(
          "from_row",
          [](int row, Complex V0, Complex V1, Complex V2, Complex x0, Complex sigma) {
            const auto f = catalog::FamilyId::from_row(row);
            return make_spec(f.m1.twice(), f.m2.twice(), V0, V1, V2, x0, sigma);
          },
          "row"_a, "V0"_a = 0.0, "V1"_a = 0.0, "V2"_a = 0.0, "x0"_a = 0.0, "sigma"_a = 1.0)
      .def_property_readonly("label", [](const catalog::PotentialSpec& s) { return s.family.label(); })
      .def_readonly("V0", &catalog::PotentialSpec::V0)
      .def_readonly("V1", &catalog::PotentialSpec::V1)
      .def_readonly("V2", &catalog::PotentialSpec::V2)
      .def_readonly("x0", &catalog::PotentialSpec::x0)
      .def_readonly("sigma", &catalog::PotentialSpec::sigma)
      .def("z", [](const catalog::PotentialSpec& s, Complex x) { return catalog::map_x_to_z(s, x); }, "x"_a)
      .def("x", [](const catalog::PotentialSpec& s, Complex z) { return catalog::map_z_to_x(s, z); }, "z"_a)
      .def("potential", [](const catalog::PotentialSpec& s, Complex x) { return catalog::potential_value(s, x); }, "x"_a);

  py::class_<construct::WaveFunction>(m, "WaveFunction")
      .def("__call__", &construct::WaveFunction::operator(), "x"_a)
      .def("at_z", &construct::WaveFunction::at_z, "z"_a)
      .def_property_readonly("heun", &construct::WaveFunction::heun)
      .def_property_readonly("exponents",
                             [](const construct::WaveFunction& w) {
                               const auto& p = w.prefactor();
                               return py::make_tuple(p.a0, p.a1, p.a2);
                             })
      .def_property_readonly("branch",
                             [](const construct::WaveFunction& w) { return construct::branch_string(w.prefactor().signs); });

  m.def(
      "solve",
      [](const catalog::PotentialSpec& s, Complex E, const std::string& branch, double mass, double hbar, double c) {
        return construct::build_solution(s, make_query(E, mass, hbar, c), construct::parse_branch(branch));
      },
      "spec"_a, "E"_a, "branch"_a = "+++", "mass"_a = 1.0, "hbar"_a = 1.0, "c"_a = 1.0);

  m.def(
      "kg_residual",
      [](const construct::WaveFunction& w, const std::vector<double>& xs, double h, double tol) {
        verify::Grid g;
        for (double x : xs) {
          g.points.emplace_back(x);
          g.steps.emplace_back(h);
        }
        return report_dict(verify::kg_residual(w, g, tol));
      },
      "psi"_a, "xs"_a, "h"_a = 1e-3, "tol"_a = 1e-6);
  m.def(
      "heun_ode_residual",
      [](const specfun::HeunParams& p, const std::vector<Complex>& zs, double tol) {
        return report_dict(verify::heun_ode_residual(p, zs, tol));
      },
      "p"_a, "zs"_a, "tol"_a = 1e-8);
  m.def("domain_grid", &verify::domain_grid, "spec"_a, "count"_a);

  m.def(
      "reduce",
      [](const specfun::HeunParams& p, double tol) {
        const auto r = construct::detect_reduction(p, tol);
        py::dict d("kind"_a = construct::to_string(r.kind));
        if (r.kind != construct::ReductionKind::none) {
          d["a"] = r.a;
          d["b"] = r.b;
          d["c"] = r.c;
          d["mirrored"] = r.mirrored;
        }
        return d;
      },
      "p"_a, "tol"_a = 1e-10);

  py::class_<conditional::CondWaveFunction>(m, "CondWaveFunction")
      .def("__call__", &conditional::CondWaveFunction::operator(), "x"_a)
      .def("at_z", &conditional::CondWaveFunction::at_z, "z"_a);

  m.def("cond_z", [](Complex sigma, double x) { return conditional::cond_z(conditional::CondSpec::single(sigma), x); },
        "sigma"_a, "x"_a);
  m.def(
      "cond_potential",
      [](Complex sigma, double x) { return conditional::cond_potential_closed(conditional::CondSpec::single(sigma), x); },
      "sigma"_a, "x"_a);
  m.def(
      "cond_solution",
      [](Complex sigma, Complex E, const std::string& signs, double mass) {
        if (signs.size() != 2) throw Error(ErrorKind::config, "signs must have two characters");
        return conditional::cond_solution(conditional::CondSpec::single(sigma), make_query(E, mass, 1.0, 1.0),
                                          {sign_of(signs[0]), sign_of(signs[1])});
      },
      "sigma"_a, "E"_a, "signs"_a = "++", "mass"_a = 1.0);
  m.def(
      "fig2_csv",
      [](const std::vector<double>& sigmas, const std::vector<double>& grid) {
        return conditional::fig2_csv(conditional::fig2_data(sigmas, grid));
      },
      "sigmas"_a, "grid"_a);
}
