#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coversys/census.hpp"
#include "coversys/cli.hpp"
#include "coversys/cover.hpp"
#include "coversys/frames.hpp"
#include "coversys/io.hpp"
#include "coversys/structure.hpp"

namespace py = pybind11;
using namespace coversys;

namespace {

using PyPlane = std::vector<std::optional<std::uint32_t>>;

Hyperplane to_plane(const PyPlane& p) {
  std::vector<std::uint32_t> c;
  for (const auto& v : p) c.push_back(v ? *v : Hyperplane::kFree);
  return Hyperplane(std::move(c));
}

PyPlane from_plane(const Hyperplane& h) {
  PyPlane out;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    out.push_back(h.is_free(i) ? std::nullopt : std::optional<std::uint32_t>(h.value(i)));
  }
  return out;
}

CoverSystem from_pairs(const std::vector<std::pair<std::uint64_t, std::string>>& pairs) {
  std::vector<Progression> ps;
  for (const auto& [a, d] : pairs) {
    const FactoredModulus m = FactoredModulus::parse(d);
    ps.emplace_back(a % m.value_or_throw(), m);
  }
  return CoverSystem::from_progressions(ps);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> to_pairs(const CoverSystem& c) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const Progression& p : c.progressions()) out.emplace_back(p.residue(), p.modulus_value());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Covering systems: verification, frames, counting and census";

  py::register_exception<CapacityError>(m, "CapacityError");
  py::register_exception<InputError>(m, "InputError");

  py::class_<CoverSystem>(m, "CoverSystem")
      .def(py::init([](std::vector<std::uint32_t> sizes, const std::vector<PyPlane>& planes) {
             std::vector<Hyperplane> hs;
             for (const auto& p : planes) hs.push_back(to_plane(p));
             return CoverSystem(ProductSpace(std::move(sizes)), std::move(hs));
           }),
           py::arg("space"), py::arg("planes"))
      .def_static("from_progressions", &from_pairs, py::arg("progressions"),
                  "Pairs (a, d) with d an integer string or factored text such as '2^2*3'.")
      .def_static("from_json", [](const std::string& text) {
        return system_from_json(Json::parse(text));
      })
      .def("to_json", [](const CoverSystem& c) { return dump_json(to_json(c)); })
      .def_property_readonly("space", [](const CoverSystem& c) {
        return std::vector<std::uint32_t>(c.space().sizes().begin(), c.space().sizes().end());
      })
      .def_property_readonly("planes", [](const CoverSystem& c) {
        std::vector<PyPlane> out;
        for (const Hyperplane& h : c.planes()) out.push_back(from_plane(h));
        return out;
      })
      .def("progressions", &to_pairs)
      .def("__len__", &CoverSystem::size)
      .def("is_cover", [](const CoverSystem& c) { return is_cover(c); })
      .def("is_minimal", [](const CoverSystem& c) { return is_minimal(c); })
      .def("uncovered", [](const CoverSystem& c) { return find_uncovered(c); })
      .def("simpson", [](const CoverSystem& c) {
        const SimpsonReport r = simpson_check(c);
        return py::dict(py::arg("bound") = r.bound, py::arg("size") = r.size,
                        py::arg("tight") = r.tight);
      })
      .def("geometric_simpson_all", [](const CoverSystem& c) { return geometric_simpson_all(c); })
      .def("greedy_certified", [](const CoverSystem& c) { return greedy_order(c).certified; });

  m.def("simpson_bound", [](const std::string& n) { return simpson_bound(FactoredModulus::parse(n)); });
  m.def("q_value", [](const std::string& n) { return q_value(canonical_ordering(FactoredModulus::parse(n))); });
  m.def("tau", [] {
    const TauValue t = compute_tau();
    return py::make_tuple(t.value, t.error_bound);
  });
  m.def("frame_family", [](const std::string& n) {
    const FrameFamily f(canonical_ordering(FactoredModulus::parse(n)));
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> out;
    for (const CoverSystem& c : f.enumerate()) out.push_back(to_pairs(c));
    return out;
  });
  m.def(
      "census",
      [](std::uint32_t n, std::uint32_t shards, bool distinct_moduli) {
        CensusOptions opt;
        opt.n = n;
        opt.shards = shards;
        opt.distinct_moduli = distinct_moduli;
        const CensusRecord r = shard_and_merge(opt);
        py::dict by_lcm;
        for (const auto& [lcm, count] : r.by_lcm) by_lcm[py::str(lcm.to_string())] = count;
        return py::dict(py::arg("n") = r.n, py::arg("total") = r.total,
                        py::arg("by_lcm") = by_lcm, py::arg("contains_Z") = r.contains_Z);
      },
      py::arg("n"), py::arg("shards") = 1, py::arg("distinct_moduli") = false);
  m.def(
      "analyze",
      [](const CoverSystem& c, double C, double eps) {
        const StructureReport r = analyze(c, StructureParams::strict_params(C, eps));
        return py::dict(py::arg("tree_valid") = r.tree_check.valid,
                        py::arg("frame_valid") = r.frame_check.valid,
                        py::arg("generalized_valid") = r.generalized_check.valid,
                        py::arg("frame_size") = r.frame_size,
                        py::arg("slack") = r.slack_total,
                        py::arg("frame_bound") = r.frame_bound);
      },
      py::arg("system"), py::arg("C") = 4.0, py::arg("eps") = 0.5);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::ostringstream out;
        std::ostringstream err;
        std::istringstream in(stdin_text);
        const int code = cli::run(args, out, err, in);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "");
}
