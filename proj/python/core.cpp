#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "defdyn/arith.hpp"
#include "defdyn/ellis.hpp"
#include "defdyn/scenario.hpp"

namespace py = pybind11;

namespace {

  std::pair<std::string, int> run(std::string const& text, bool with_oracle) {
    defdyn::RunOptions options;
    options.with_oracle = with_oracle;
    auto out            = defdyn::run_scenario_text(text, options);
    return {out.report.dump(), out.exit_code};
  }

  std::string star(std::string const& group, std::string const& p, std::string const& q) {
    try {
      auto const ctx = defdyn::group_from_json(defdyn::Json::parse(group));
      auto const a   = defdyn::point_from_json(ctx, defdyn::Json::parse(p));
      auto const b   = defdyn::point_from_json(ctx, defdyn::Json::parse(q));
      return defdyn::to_json(defdyn::star(ctx, a, b)).dump();
    } catch (defdyn::Json::exception const& e) {
      throw defdyn::SchemaError(e.what());
    }
  }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of defdyn. Values cross the boundary as JSON text.";

  auto base = py::register_exception<defdyn::Error>(m, "DefdynError", PyExc_RuntimeError);
  py::register_exception<defdyn::SchemaError>(m, "SchemaError", base);
  py::register_exception<defdyn::LevelTooCoarse>(m, "LevelTooCoarse", base);
  py::register_exception<defdyn::Unsupported>(m, "Unsupported", base);

  m.attr("__version__")    = defdyn::kToolVersion;
  m.attr("SCHEMA_VERSION") = defdyn::kSchemaVersion;

  m.def("run_scenario", &run, py::arg("text"), py::arg("with_oracle") = false,
        "Run a scenario given as JSON text. Returns (report JSON text, exit code).");
  m.def("capabilities", [] { return defdyn::list_capabilities().dump(); });
  m.def("render_text", [](std::string const& report) {
    return defdyn::render_text(defdyn::Json::parse(report));
  });
  m.def("star", &star, py::arg("group"), py::arg("p"), py::arg("q"),
        "Ellis product of two type points, all arguments as JSON text.");
  m.def("level_guard", [] { return defdyn::level_guard(); });
  m.def("set_level_guard", [](std::uint64_t g) {
    if (g == 0) {
      throw defdyn::InvalidArgument("level guard must be positive");
    }
    defdyn::set_level_guard(g);
  });
}
