// Copyright 2026 The nsdensity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

#include "nsdensity/constants.hpp"
#include "nsdensity/core.hpp"
#include "nsdensity/enumeration.hpp"
#include "nsdensity/errors.hpp"
#include "nsdensity/limits.hpp"
#include "nsdensity/verify.hpp"

namespace py = pybind11;
using namespace nsdensity;

namespace {

py::object to_fraction(const Rational& r) {
  static const auto fraction = py::module_::import("fractions").attr("Fraction");
  const auto num = py::int_(py::str(boost::multiprecision::numerator(r).str()));
  const auto den =
      py::int_(py::str(boost::multiprecision::denominator(r).str()));
  return fraction(num, den);
}

py::object to_fraction(const Dyadic& d) { return to_fraction(d.to_rational()); }

DSet to_dset(const py::object& obj) {
  if (py::isinstance<DSet>(obj)) return obj.cast<DSet>();
  if (py::isinstance<py::str>(obj)) return DSet::parse(obj.cast<std::string>());
  return DSet(obj.cast<std::vector<int>>());
}

SweepOptions sweep_options(int workers, int budget) {
  return SweepOptions{workers, budget};
}

py::dict gamma_dict(const GammaEstimate& g) {
  py::dict out;
  out["d"] = g.d;
  out["depth"] = g.depth;
  out["value"] = to_fraction(g.value);
  out["tail_bound"] = to_fraction(g.tail_bound);
  out["lower"] = to_fraction(g.lower());
  out["upper"] = to_fraction(g.upper());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact densities of numerical semigroups under T -> A(T)";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<ConsistencyError>(m, "ConsistencyError");
  py::register_exception<CacheError>(m, "CacheError");

  m.attr("MAX_FROBENIUS") = kMaxFrobenius;
  m.attr("DEFAULT_ENUMERATION_BUDGET") = kDefaultEnumerationBudget;
  m.attr("DEFAULT_DEPTH_BUDGET") = kDefaultDepthBudget;
  m.attr("DEFAULT_LIMIT_DEPTH") = kDefaultLimitDepth;

  py::class_<DSet>(m, "DSet")
      .def(py::init<>())
      .def(py::init<std::vector<int>>(), py::arg("elements"))
      .def_static("parse", &DSet::parse, py::arg("text"))
      .def_property_readonly("max", &DSet::max)
      .def_property_readonly("elements", [](const DSet& d) {
        return std::vector<int>(d.elements().begin(), d.elements().end());
      })
      .def("key", &DSet::key)
      .def("with_", &DSet::with, py::arg("k"))
      .def("__contains__", &DSet::contains)
      .def("__len__", &DSet::size)
      .def("__eq__", [](const DSet& a, const DSet& b) { return a == b; })
      .def("__lt__", [](const DSet& a, const DSet& b) { return a < b; })
      .def("__hash__", [](const DSet& d) { return py::hash(py::str(d.key())); })
      .def("__repr__", [](const DSet& d) { return "DSet(" + d.key() + ")"; });

  py::class_<NumericalSet>(m, "NumericalSet")
      .def(py::init([](int f, const std::vector<int>& members) {
             return make_numerical_set(f, members);
           }),
           py::arg("f"), py::arg("members"))
      .def_static("minimal", &NumericalSet::minimal, py::arg("f"))
      .def_property_readonly("frobenius", &NumericalSet::frobenius)
      .def_property_readonly("small_members", &NumericalSet::small_members)
      .def("__contains__", &NumericalSet::contains)
      .def("__eq__",
           [](const NumericalSet& a, const NumericalSet& b) { return a == b; })
      .def("__repr__", &NumericalSet::to_string);

  m.def("associated_set", &associated_set, py::arg("t"),
        "A(T) = {x : x + T is contained in T}");
  m.def("is_semigroup", &is_semigroup, py::arg("t"));
  m.def(
      "n_of",
      [](const py::object& d, int f) { return n_of(to_dset(d), f).set; },
      py::arg("d"), py::arg("f"));
  m.def(
      "d_of",
      [](const NumericalSet& s) { return d_of(Semigroup::checked(s)); },
      py::arg("s"));
  m.def(
      "multiplicity",
      [](const NumericalSet& s) { return multiplicity(Semigroup::checked(s)); },
      py::arg("s"));
  m.def(
      "r_value",
      [](const NumericalSet& s) { return r_value(Semigroup::checked(s)); },
      py::arg("s"));

  m.def(
      "density_table",
      [](int f, int workers, int budget) {
        const DensityTable table = [&] {
          py::gil_scoped_release release;
          return density_table(f, sweep_options(workers, budget));
        }();
        py::dict out;
        for (const auto& [s, p] : table.entries()) {
          out[py::cast(d_of(s))] = p;
        }
        return out;
      },
      py::arg("f"), py::arg("workers") = 0,
      py::arg("budget") = kDefaultEnumerationBudget,
      "P(S) for every semigroup with Frobenius number f, keyed by D(S)");

  m.def(
      "count_B",
      [](const py::object& d, int f, int workers, int budget) {
        const DSet ds = to_dset(d);
        py::gil_scoped_release release;
        return count_B(ds, f, sweep_options(workers, budget));
      },
      py::arg("d"), py::arg("f"), py::arg("workers") = 0,
      py::arg("budget") = kDefaultEnumerationBudget);
  m.def(
      "count_B_l",
      [](int l, int k, int f, int workers, int budget) {
        py::gil_scoped_release release;
        return count_B_l(l, k, f, sweep_options(workers, budget));
      },
      py::arg("l"), py::arg("k"), py::arg("f"), py::arg("workers") = 0,
      py::arg("budget") = kDefaultEnumerationBudget);
  m.def(
      "count_G_l",
      [](int l, int f, int workers, int budget) {
        py::gil_scoped_release release;
        return count_G_l(l, f, sweep_options(workers, budget));
      },
      py::arg("l"), py::arg("f"), py::arg("workers") = 0,
      py::arg("budget") = kDefaultEnumerationBudget);
  m.def(
      "count_S",
      [](const py::object& d, int f, int workers, int budget) {
        const DSet ds = to_dset(d);
        py::gil_scoped_release release;
        return count_S(ds, f, sweep_options(workers, budget));
      },
      py::arg("d"), py::arg("f"), py::arg("workers") = 0,
      py::arg("budget") = kDefaultEnumerationBudget);
  m.def(
      "alpha_empirical",
      [](int f, int n, int workers, int budget) {
        const Dyadic v = [&] {
          py::gil_scoped_release release;
          return alpha_empirical(f, n, sweep_options(workers, budget));
        }();
        return to_fraction(v);
      },
      py::arg("f"), py::arg("n"), py::arg("workers") = 0,
      py::arg("budget") = kDefaultEnumerationBudget);

  py::class_<ConstantProvider, std::shared_ptr<ConstantProvider>>(m,
                                                                  "Constants")
      .def(py::init([](const std::optional<std::filesystem::path>& cache,
                       int workers, int budget, int depth_budget) {
             ConstantCache loaded;
             if (cache && std::filesystem::exists(*cache)) {
               loaded = cache_load(*cache);
             }
             return std::make_shared<ConstantProvider>(
                 std::move(loaded), sweep_options(workers, budget),
                 depth_budget);
           }),
           py::arg("cache") = py::none(), py::arg("workers") = 0,
           py::arg("budget") = kDefaultEnumerationBudget,
           py::arg("depth_budget") = kDefaultDepthBudget)
      .def(
          "a_const",
          [](ConstantProvider& c, const py::object& d) {
            const DSet ds = to_dset(d);
            py::gil_scoped_release release;
            return c.a_const(ds);
          },
          py::arg("d"))
      .def(
          "c_const",
          [](ConstantProvider& c, int l, int k) {
            py::gil_scoped_release release;
            return c.c_const(l, k);
          },
          py::arg("l"), py::arg("k"))
      .def_property_readonly("dirty", &ConstantProvider::dirty)
      .def(
          "save",
          [](const ConstantProvider& c, const std::filesystem::path& path) {
            cache_store(c.snapshot(), path);
          },
          py::arg("path"));

  m.def(
      "gamma",
      [](ConstantProvider& c, const py::object& d, int depth) {
        const DSet ds = to_dset(d);
        const GammaEstimate g = [&] {
          py::gil_scoped_release release;
          return gamma(c, ds, depth);
        }();
        return gamma_dict(g);
      },
      py::arg("constants"), py::arg("d"),
      py::arg("depth") = kDefaultLimitDepth);
  m.def(
      "alpha",
      [](ConstantProvider& c, int n, int depth) {
        const AlphaEstimate a = [&] {
          py::gil_scoped_release release;
          return alpha_limit(c, n, depth);
        }();
        py::dict out;
        out["n"] = a.n;
        out["depth"] = a.depth;
        out["value"] = to_fraction(a.value);
        out["tail_bound"] = to_fraction(a.tail_bound);
        out["terms"] = a.terms.size();
        return out;
      },
      py::arg("constants"), py::arg("n"),
      py::arg("depth") = kDefaultLimitDepth);
  m.def(
      "gamma_table",
      [](ConstantProvider& c, int max_t, int depth) {
        const GammaTable table = [&] {
          py::gil_scoped_release release;
          return gamma_table(c, max_t, depth);
        }();
        py::list rows;
        for (const auto& g : table.rows) rows.append(gamma_dict(g));
        return rows;
      },
      py::arg("constants"), py::arg("max_t"),
      py::arg("depth") = kDefaultLimitDepth);
  m.def("gamma_lower_bound", [](const py::object& d) -> py::object {
    const auto bound = gamma_lower_bound(to_dset(d));
    if (!bound) return py::none();
    return to_fraction(*bound);
  });

  m.def(
      "verify",
      [](ConstantProvider& c, const std::string& suite, int max_f, int depth) {
        const auto results = [&] {
          py::gil_scoped_release release;
          return run_verify(suite, VerifyOptions{max_f, depth}, c);
        }();
        py::list out;
        for (const auto& r : results) {
          py::dict row;
          row["suite"] = r.suite;
          row["name"] = r.name;
          row["passed"] = r.passed;
          row["detail"] = r.detail;
          out.append(row);
        }
        return out;
      },
      py::arg("constants"), py::arg("suite") = "all", py::arg("max_f") = 20,
      py::arg("depth") = kDefaultLimitDepth);
}
