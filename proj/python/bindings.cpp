// Python bindings. Reports cross the boundary as JSON text and are decoded
// by the pure-Python wrapper; big integers travel as decimal strings.

#include "nashcount/candidates.hpp"
#include "nashcount/experiments.hpp"
#include "nashcount/game_io.hpp"
#include "nashcount/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace nashcount;

namespace {

py::object to_pyint(const BigInt& value) { return py::module_::import("builtins").attr("int")(value.str()); }

CharacteristicTuple make_tuple(const std::vector<int>& v, const std::vector<std::vector<int>>& sigma) {
  CharacteristicTuple tuple;
  tuple.v = v;
  for (const auto& images : sigma) tuple.sigma.emplace_back(images);
  tuple.validate();
  return tuple;
}

FloatGame float_game_from_json(const std::string& text) { return parse_game_document(text).as_float(); }

SolverConfig solver_config(int starts, double residual_tol, double dedup_tol, std::uint64_t seed, int threads) {
  SolverConfig config;
  config.starts = starts;
  config.residual_tol = residual_tol;
  config.dedup_tol = dedup_tol;
  config.seed = seed;
  config.threads = threads;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and numerical equilibrium counting for product two-action games";

  m.def("subfactorial", [](unsigned n) { return to_pyint(subfactorial(n)); }, py::arg("n"));
  m.def("vidunas_bound", [](unsigned n) { return to_pyint(vidunas_bound(n)); }, py::arg("m"));
  m.def("lower_bound", [](unsigned n) { return to_pyint(lower_bound(n)); }, py::arg("m"));
  m.def("face_equilibrium_bound", [](unsigned n, unsigned l) { return to_pyint(face_equilibrium_bound(n, l)); },
        py::arg("m"), py::arg("l"));
  m.def("delta_permutation", [](int n, int i) { return delta_permutation(n, i).images(); }, py::arg("m"),
        py::arg("i"));

  py::class_<ProductTwoActionGame>(m, "ProductGame")
      .def(py::init([](const std::vector<int>& v, const std::vector<std::vector<int>>& sigma) {
             const CharacteristicTuple tuple = make_tuple(v, sigma);
             return build_product_game(tuple, default_coefficients(tuple));
           }),
           py::arg("v"), py::arg("sigma"), "Product game with the default equally spaced coefficients.")
      .def_static("maximal", &maximal_game, py::arg("m"))
      .def_static("from_json",
                  [](const std::string& text) {
                    GameDocument doc = parse_game_document(text);
                    if (!doc.product) throw std::invalid_argument("game file has no product section");
                    return *doc.product;
                  },
                  py::arg("text"))
      .def_property_readonly("players", &ProductTwoActionGame::players)
      .def_property_readonly("v", [](const ProductTwoActionGame& g) { return g.tuple().v; })
      .def_property_readonly("sigma",
                             [](const ProductTwoActionGame& g) {
                               std::vector<std::vector<int>> out;
                               for (const auto& p : g.tuple().sigma) out.push_back(p.images());
                               return out;
                             })
      .def("coefficient", [](const ProductTwoActionGame& g, int i, int j) { return format_rational(g.coefficients()(i, j)); },
           py::arg("i"), py::arg("j"))
      .def("to_json", [](const ProductTwoActionGame& g) { return game_to_json(g).dump(); });

  m.def("_census", [](const ProductTwoActionGame& g, const std::string& method, int threads) {
    return to_json(census(g, parse_classification_method(method), threads)).dump();
  });
  m.def("_candidates", [](const ProductTwoActionGame& g) {
    nlohmann::json out = nlohmann::json::array();
    for_each_candidate(g, [&](const EquilibriumCandidate& c) {
      nlohmann::json entry = candidate_to_json(c);
      entry["equilibrium"] = classify_by_sign(g, c) == Classification::equilibrium;
      std::vector<int> incs;
      for (int i : c.fixed) incs.push_back(increment(g.tuple(), c, i));
      entry["increments"] = incs;
      out.push_back(std::move(entry));
    });
    return out.dump();
  });
  m.def("_solve", [](const std::string& game_json, int starts, double residual_tol, double dedup_tol,
                     std::uint64_t seed, int threads) {
    py::gil_scoped_release release;
    return to_json(solve_all(float_game_from_json(game_json), solver_config(starts, residual_tol, dedup_tol, seed, threads)))
        .dump();
  });
  m.def("_deform", [](const ProductTwoActionGame& g, double epsilon, int trials, std::uint64_t seed, int threads) {
    py::gil_scoped_release release;
    return to_json(verify_deformation(g, epsilon, trials, seed, solver_config(0, 1e-10, 1e-6, 0, threads))).dump();
  });
  m.def("_scan", [](int players, int trials, std::uint64_t seed, int threads) {
    py::gil_scoped_release release;
    ScanConfig config;
    config.m = players;
    config.trials = trials;
    config.seed = seed;
    config.solver.threads = threads;
    return to_json(scan_inequalities(config)).dump();
  });
  m.def("_random_game", [](int players, std::uint64_t seed) { return game_to_json(random_game(players, seed)).dump(); });

  py::register_exception<GameFormatError>(m, "GameFormatError", PyExc_ValueError);
}
