#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "thetacalc/cli.hpp"
#include "thetacalc/formulas.hpp"
#include "thetacalc/json_io.hpp"
#include "thetacalc/mukai.hpp"
#include "thetacalc/verify.hpp"

namespace py = pybind11;
using namespace thetacalc;

namespace {

// Python ints of any size arrive as decimal text.
Integer to_integer(const py::handle& obj) {
  if (!py::isinstance<py::int_>(obj)) throw py::type_error("expected an int");
  return Integer(py::str(obj).cast<std::string>());
}

py::int_ to_py(const Integer& x) { return py::int_(py::str(x.get_str())); }

mukai::MukaiVector to_vector(const py::sequence& triple, const py::handle& n) {
  if (py::len(triple) != 3) throw py::value_error("a Mukai vector is (r, k, chi)");
  return mukai::make_vector(to_integer(triple[0]), to_integer(triple[1]), to_integer(triple[2]), to_integer(n));
}

py::tuple from_vector(const mukai::MukaiVector& v) { return py::make_tuple(to_py(v.r), to_py(v.k()), to_py(v.chi)); }

cli::Theorem theorem_of(const std::string& name) {
  try {
    return cli::parse_theorem(name);
  } catch (const std::invalid_argument& e) {
    throw py::value_error(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact theta Euler characteristics on moduli of sheaves over abelian surfaces";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  m.def(
      "d_v", [](const py::sequence& v, const py::int_& n) { return to_py(mukai::dv(to_vector(v, n))); },
      py::arg("v"), py::arg("n"));
  m.def(
      "chi_tensor",
      [](const py::sequence& v, const py::sequence& w, const py::int_& n) {
        return to_py(mukai::euler_chi_tensor(to_vector(v, n), to_vector(w, n)));
      },
      py::arg("v"), py::arg("w"), py::arg("n"));
  m.def(
      "fm_vector", [](const py::sequence& v, const py::int_& n) { return from_vector(mukai::fm_vector(to_vector(v, n))); },
      py::arg("v"), py::arg("n"));
  m.def(
      "binom", [](const py::int_& a, unsigned long b) { return to_py(formulas::binom(to_integer(a), b)); },
      py::arg("a"), py::arg("b"));

  m.def(
      "eval_json",
      [](const py::sequence& v, const py::sequence& w, const py::int_& n, const std::string& theorem) {
        return cli::eval_document(to_vector(v, n), to_vector(w, n), theorem_of(theorem)).dump();
      },
      py::arg("v"), py::arg("w"), py::arg("n"), py::arg("theorem") = "all");
  m.def(
      "kummer_json",
      [](const py::int_& n, const py::int_& chid, const py::int_& r) {
        return cli::kummer_document({to_integer(chid), to_integer(r), to_integer(n)}).dump();
      },
      py::arg("n"), py::arg("chiD"), py::arg("r"));
  m.def(
      "enumerate_csv",
      [](std::vector<long> n_values, long max_rank, long max_k, long max_chi) {
        cli::EnumerateBounds b;
        b.n_values = std::move(n_values);
        b.max_rank = max_rank;
        b.max_k = max_k;
        b.max_chi = max_chi;
        py::gil_scoped_release release;
        return cli::rows_to_csv(cli::enumerate_pairs(b));
      },
      py::arg("n_values"), py::arg("max_rank"), py::arg("max_k"), py::arg("max_chi"));

  m.def(
      "verify_json",
      [](std::uint64_t seed, int trials, std::optional<std::vector<std::string>> only, bool corrupt_sign) {
        verify::SuiteOptions opts;
        opts.seed = seed;
        opts.trials = trials;
        opts.only = std::move(only);
        opts.verify.corrupt_sign = corrupt_sign;
        std::vector<verify::IdentityReport> reports;
        {
          py::gil_scoped_release release;
          reports = verify::run_suite(opts);
        }
        return io::to_json(reports).dump();
      },
      py::arg("seed") = 42, py::arg("trials") = 200, py::arg("only") = py::none(), py::arg("corrupt_sign") = false);
  m.def("identities", [] {
    std::vector<std::string> ids;
    for (const auto& info : verify::registry()) ids.push_back(info.id);
    return ids;
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"thetacalc"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"));
}
