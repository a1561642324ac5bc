#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "mapsolve/ap.hpp"
#include "mapsolve/bench.hpp"
#include "mapsolve/exact.hpp"
#include "mapsolve/heuristics.hpp"
#include "mapsolve/instance.hpp"
#include "mapsolve/memetic.hpp"

namespace py = pybind11;
using namespace mapsolve;

namespace {

// Assignments cross the boundary as lists of 1-based coordinate lists.
using Vectors = std::vector<std::vector<int>>;

struct Instance {
  OraclePtr oracle;
  std::string name;
};

Instance from_tensor(int s, int n, std::vector<double> weights) {
  return {std::make_shared<TensorOracle>(ProblemShape{s, n}, std::move(weights)), "explicit"};
}

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["assignment"] = r.best.to_vectors();
  d["weight"] = r.weight;
  d["generations"] = r.generations;
  d["evaluations"] = r.evaluations;
  d["elapsed"] = r.elapsed;
  return d;
}

Budget make_budget(std::optional<double> time, std::optional<std::string> deterministic) {
  if (time && deterministic) throw std::invalid_argument("give either time or deterministic, not both");
  if (deterministic) return Budget::parse_deterministic(*deterministic);
  return Budget::time(time.value_or(1.0));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multidimensional assignment: instances, local searches and the memetic solver";

  py::register_exception<NodeLimitExceeded>(m, "NodeLimitExceeded", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("s", [](const Instance& i) { return i.oracle->shape().s; })
      .def_property_readonly("n", [](const Instance& i) { return i.oracle->shape().n; })
      .def_readonly("name", &Instance::name)
      .def("weight", [](const Instance& i, const std::vector<int>& v) {
        if (static_cast<int>(v.size()) != i.oracle->shape().s) throw std::invalid_argument("vector has wrong length");
        for (int c : v)
          if (c < 1 || c > i.oracle->shape().n) throw std::invalid_argument("coordinate out of range");
        return i.oracle->weight(v);
      })
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.name + " s=" + std::to_string(i.oracle->shape().s) +
               " n=" + std::to_string(i.oracle->shape().n) + ">";
      });

  m.def(
      "make_instance",
      [](const std::string& family, int s, int n, int index, std::optional<std::int64_t> seed) {
        const auto [fam, perturbed] = parse_family_token(family);
        auto desc = InstanceDescriptor::standard(fam, perturbed, {s, n}, index);
        if (seed) {
          desc.seed = *seed;
          desc.index = 0;
        }
        return Instance{make_instance(desc), desc.name()};
      },
      py::arg("family"), py::arg("s"), py::arg("n"), py::arg("index") = 1, py::arg("seed") = py::none(),
      "Seeded instance; family is cc, ccp, cq, cqp, sr or srp and the seed defaults to s + n + index.");
  m.def("tensor_instance", &from_tensor, py::arg("s"), py::arg("n"), py::arg("weights"),
        "Explicit instance from n**s weights, last dimension fastest.");
  m.def(
      "read_instance",
      [](const std::string& path) {
        auto loaded = read_instance_file(path);
        return Instance{loaded.oracle, loaded.name()};
      },
      py::arg("path"));

  m.def(
      "validate",
      [](const Vectors& a, int s, int n) {
        std::vector<std::string> out;
        for (const auto& v : validate(Assignment::from_vectors(a), {s, n})) out.push_back(to_string(v));
        return out;
      },
      py::arg("assignment"), py::arg("s"), py::arg("n"), "Violation messages; empty when feasible.");
  m.def(
      "weight",
      [](const Instance& inst, const Vectors& a) { return assignment_weight(*inst.oracle, Assignment::from_vectors(a)); },
      py::arg("instance"), py::arg("assignment"));
  m.def("solution_error", &solution_error, py::arg("value"), py::arg("best"));

  m.def(
      "solve_ap",
      [](const std::vector<std::vector<double>>& costs) {
        const int n = static_cast<int>(costs.size());
        std::vector<double> flat;
        for (const auto& row : costs) {
          if (static_cast<int>(row.size()) != n) throw std::domain_error("cost matrix must be square");
          flat.insert(flat.end(), row.begin(), row.end());
        }
        const auto sol = solve_ap(CostMatrix(n, std::move(flat)));
        return py::make_tuple(sol.perm, sol.value);
      },
      py::arg("costs"), "Minimum-cost assignment: (0-based column per row, value).");

  m.def(
      "greedy", [](const Instance& inst) { return greedy_construct(*inst.oracle).to_vectors(); },
      py::arg("instance"));
  m.def(
      "local_search",
      [](const Instance& inst, const Vectors& a, const std::string& name) {
        return local_search_by_name(name)(*inst.oracle, Assignment::from_vectors(a)).to_vectors();
      },
      py::arg("instance"), py::arg("assignment"), py::arg("method") = "mdv2",
      "Runs a local search to its fixed point: 2opt, 3opt, dv, mdv, dv2, mdv2 or mdv3.");
  m.def("local_search_names", &local_search_names);

  m.def(
      "memetic",
      [](const Instance& inst, std::optional<double> time, std::optional<std::string> deterministic,
         const std::string& local_search, std::int32_t seed) {
        const auto budget = make_budget(time, deterministic);
        SolveReport report;
        {
          py::gil_scoped_release release;
          report = run_memetic(*inst.oracle, {}, budget, local_search_by_name(local_search), seed);
        }
        return report_dict(report);
      },
      py::arg("instance"), py::arg("time") = py::none(), py::arg("deterministic") = py::none(),
      py::arg("local_search") = "mdv2", py::arg("seed") = 1,
      "Memetic solver. Pass time=seconds or deterministic='<generations>x<size>'.");
  m.def(
      "solve",
      [](const Instance& inst, const std::string& solver, std::optional<double> time,
         std::optional<std::string> deterministic, std::int32_t seed) {
        return report_dict(bench::run_solver(*inst.oracle, solver, make_budget(time, deterministic), seed));
      },
      py::arg("instance"), py::arg("solver") = "gk", py::arg("time") = py::none(),
      py::arg("deterministic") = py::none(), py::arg("seed") = 1);
  m.def(
      "brute_force",
      [](const Instance& inst, std::uint64_t node_limit) {
        const auto res = brute_force(*inst.oracle, node_limit);
        return py::make_tuple(res.optimum.to_vectors(), res.value);
      },
      py::arg("instance"), py::arg("node_limit") = kDefaultNodeLimit);

  m.def("next_gen_size", &next_gen_size, py::arg("m_real"), py::arg("total"), py::arg("elapsed"), py::arg("delta"),
        py::arg("target_generations"), py::arg("index"), py::arg("k"));
  m.def("round_gen_size", &round_gen_size, py::arg("m_real"), py::arg("m_prev"), py::arg("p"));

#ifdef VERSION_INFO
#define MAPSOLVE_STR(x) #x
#define MAPSOLVE_XSTR(x) MAPSOLVE_STR(x)
  m.attr("__version__") = MAPSOLVE_XSTR(VERSION_INFO);
#endif
}
