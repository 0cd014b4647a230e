#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>

#include "octic/arrangement.hpp"
#include "octic/counting.hpp"
#include "octic/elliptic.hpp"
#include "octic/errors.hpp"
#include "octic/resolution.hpp"
#include "octic/specseq.hpp"
#include "octic/verify.hpp"
#include "octic/zeta.hpp"

namespace py = pybind11;
using namespace octic;

namespace {

py::int_ big(const Integer& z) { return py::int_(py::str(to_string(z))); }

Integer from_py(const py::int_& v) { return Integer(py::str(v).cast<std::string>()); }

IntPoly intpoly_from(const std::vector<py::int_>& c) {
  IntPoly out;
  for (const auto& v : c) out.push_back(from_py(v));
  return out;
}

std::vector<py::int_> intpoly_to(const IntPoly& f) {
  std::vector<py::int_> out;
  for (const auto& c : f) out.push_back(big(c));
  return out;
}

py::dict census(const std::string& t) {
  auto sig = incidence_signature(instantiate(reference_octic(), parse_rational(t)));
  py::dict d;
  d["lines"] = sig.line_census;
  py::dict pts;
  for (const auto& [key, n] : sig.point_census) pts[py::make_tuple(key.first, key.second)] = n;
  d["points"] = pts;
  py::list five;
  for (const auto& p : sig.fivefold_points) five.append(py::make_tuple(p.point.to_string(), p.planes));
  d["fivefold_points"] = five;
  py::list triple;
  for (const auto& l : sig.lines)
    if (l.planes.size() >= 3) triple.append(py::make_tuple(l.line.to_string(), l.planes));
  d["triple_lines"] = triple;
  return d;
}

py::dict degeneracies() {
  auto d = degenerate_parameters(reference_octic());
  py::dict out;
  std::vector<std::string> vals;
  for (const auto& v : d.values) vals.push_back(to_string(v));
  out["values"] = vals;
  out["infinity"] = d.infinity;
  out["residual"] = d.residual;
  return out;
}

py::dict pipeline(std::uint32_t p, const std::string& t) {
  auto r = run_local_pipeline(p, parse_rational(t));
  py::dict out;
  out["ok"] = r.ok();
  out["generic_smooth"] = r.generic_smooth;
  out["singular_line_is_L"] = r.singular_line_is_L;
  out["singular_line_charts"] = r.singular_line_charts;
  out["pinch_form_degree"] = r.pinch_form_degree;
  out["pinch_form_squarefree"] = r.pinch_form_squarefree;
  out["j"] = r.j_value;
  out["j_is_1728"] = r.j_is_1728;
  py::list stages;
  for (const auto& s : r.stages) {
    py::dict st;
    st["id"] = s.id;
    st["status"] = s.status;
    st["detail"] = s.detail;
    st["data"] = s.data;
    st["equations"] = s.equations;
    stages.append(st);
  }
  out["stages"] = stages;
  return out;
}

std::uint64_t count_octic(std::uint32_t p, int k, const std::string& t, unsigned jobs, bool oracle) {
  auto task = octic_task(instantiate(reference_octic(), parse_rational(t)), p, k);
  return oracle ? naive_oracle(task).N : run_count(task, jobs).N;
}

std::uint64_t count_legendre(const std::string& lambda, std::uint32_t p, int k, bool oracle) {
  auto task = legendre_task(parse_rational(lambda), p, k);
  return oracle ? naive_oracle(task).N : run_count(task).N;
}

std::map<int, std::size_t> buckets(const std::vector<py::int_>& num, const std::vector<py::int_>& den,
                                   const py::int_& q) {
  auto w = weight_buckets(ZetaFunction::make(intpoly_from(num), intpoly_from(den), from_py(q)));
  std::map<int, std::size_t> out;
  for (const auto& [i, roots] : w.buckets)
    if (!roots.empty()) out[i] = roots.size();
  if (!w.unassigned.empty()) out[-1] = w.unassigned.size();
  return out;
}

std::string run_report(const std::string& subcommand, std::uint32_t prime, std::optional<std::string> t,
                       std::vector<int> ext_degrees, unsigned jobs, bool timing) {
  RunConfig cfg;
  cfg.p = prime;
  cfg.t = std::move(t);
  cfg.ext_degrees = std::move(ext_degrees);
  cfg.jobs = jobs;
  cfg.timing = timing;
  return run(subcommand, cfg).to_json();
}

}  // namespace

PYBIND11_MODULE(_octic, m) {
  m.doc() = "Double octic verification kernels";

  py::register_exception<Error>(m, "OcticError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("census", &census, py::arg("t"));
  m.def("degenerate_parameters", &degeneracies);
  m.def("j_from_lambda", [](const std::string& l) { return to_string(j_from_lambda(parse_rational(l))); },
        py::arg("lam"));
  m.def("pipeline", &pipeline, py::arg("p"), py::arg("t"));
  m.def("count_octic", &count_octic, py::arg("p"), py::arg("k") = 1, py::arg("t") = "7", py::arg("jobs") = 1,
        py::arg("oracle") = false);
  m.def("count_legendre", &count_legendre, py::arg("lam"), py::arg("p"), py::arg("k") = 1,
        py::arg("oracle") = false);
  m.def(
      "zeta_elliptic",
      [](const py::int_& n1, const py::int_& p) {
        auto z = zeta_elliptic_from_count(from_py(n1), from_py(p));
        return py::make_tuple(intpoly_to(z.numerator), intpoly_to(z.denominator));
      },
      py::arg("n1"), py::arg("p"));
  m.def(
      "predict_count",
      [](const std::vector<py::int_>& num, const std::vector<py::int_>& den, const py::int_& q, int k) {
        return big(predict_count(ZetaFunction::make(intpoly_from(num), intpoly_from(den), from_py(q)), k));
      },
      py::arg("num"), py::arg("den"), py::arg("q"), py::arg("k"));
  m.def("weight_buckets", &buckets, py::arg("num"), py::arg("den"), py::arg("q"));
  m.def(
      "obstructed",
      [](const std::vector<py::int_>& num_a, const std::vector<py::int_>& num_b, const py::int_& q) {
        return weight3_obstruction(ZetaFunction::make(intpoly_from(num_a), {1}, from_py(q)),
                                   ZetaFunction::make(intpoly_from(num_b), {1}, from_py(q)))
            .obstructed;
      },
      py::arg("num_a"), py::arg("num_b"), py::arg("q"));
  m.def(
      "h3_values",
      [](int b2c) {
        auto page = build_E1(two_component_instance(2, 2, 0, 0, 0, b2c), 7);
        std::set<int> out;
        for (const auto& r : consistency_search(page, {})) out.insert(abutment_dims(page, r)[3]);
        return out;
      },
      py::arg("b2C") = 0);
  m.def("run", &run_report, py::arg("subcommand"), py::arg("prime") = 7, py::arg("t") = std::nullopt,
        py::arg("ext_degrees") = std::vector<int>{1}, py::arg("jobs") = 1, py::arg("timing") = false);
}
