#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcprod/analytic.hpp"
#include "rcprod/cli.hpp"
#include "rcprod/rayclass.hpp"
#include "rcprod/sieve.hpp"

namespace py = pybind11;
using namespace rcprod;

PYBIND11_MODULE(_rcprod, m) {
  m.doc() = "Bindings for the rcprod verification toolkit";

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command line; returns (exit_status, stdout, stderr).");

  m.def(
      "ray_class_order",
      [](const std::string& field, const std::string& modulus) {
        quad::Field K(quad::FieldSpec::parse(field));
        return ray::ray_class_order(K, K.parse_ideal(modulus));
      },
      py::arg("field"), py::arg("modulus"));

  m.def(
      "w0_mellin_one",
      [](int n) {
        auto v = analytic::w0_mellin_one(n);
        return py::make_tuple(v.get_num().get_str(), v.get_den().get_str());
      },
      py::arg("n"), "Exact value of the Mellin transform of w_0 at 1 as (numerator, denominator) strings.");

  m.def(
      "reciprocal_identity",
      [](const std::string& field, const std::string& modulus, long z) {
        auto K = std::make_shared<const quad::Field>(quad::FieldSpec::parse(field));
        auto ctx = sieve::make_context(K, K->parse_ideal(modulus), z);
        auto t = sieve::lambda_table(ctx);
        auto r = sieve::verify_reciprocal_identity(ctx, t);
        return py::make_tuple(r.lhs.get_str(), r.rhs.get_str(), r.holds);
      },
      py::arg("field"), py::arg("modulus"), py::arg("z"));

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
}
