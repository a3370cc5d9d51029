#include <pybind11/pybind11.h>

#include "endoquant/algebra/errors.hpp"
#include "endoquant/cli/commands.hpp"

namespace py = pybind11;
using namespace endoquant;

namespace {

// JSON crosses the boundary as text; the Python side owns (de)serialization.
py::tuple run(const std::string& command, const std::string& config_json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  CommandResult r;
  {
    py::gil_scoped_release release;
    r = run_command(command, parse_config(j));
  }
  return py::make_tuple(r.status, r.output.dump(), r.text);
}

}  // namespace

PYBIND11_MODULE(_endoquant, m) {
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  m.attr("EXIT_OK") = kExitOk;
  m.attr("EXIT_VERIFICATION_FAILURE") = kExitVerificationFailure;
  m.attr("EXIT_INPUT_ERROR") = kExitInputError;
  m.def("run", &run, py::arg("command"), py::arg("config_json"),
        "Run graphs|tensor|mul|verify on a JSON config; returns (status, json, text).");
}
