#include <pybind11/pybind11.h>

#include "igtype/cli.hpp"

namespace py = pybind11;
using namespace igtype;

PYBIND11_MODULE(_igtype, m) {
  m.doc() = "exact toolkit for monoids built from group-graded lattice data";

  m.def("digest", &input_digest, py::arg("text"));

  m.def(
      "run",
      [](const std::string& command, const std::string& text,
         std::size_t height, std::size_t bound, std::size_t degree,
         const std::string& expect) {
        Flags f;
        f.height = height;
        f.bound = bound;
        f.degree = degree;
        f.expect = expect;
        RunOutcome out = run_command(command, parse_document(text), text, f);
        return py::make_tuple(out.report.dump(2), out.exit_code);
      },
      py::arg("command"), py::arg("text"), py::arg("height") = 1,
      py::arg("bound") = 2, py::arg("degree") = 3, py::arg("expect") = "");

  m.def("run_corpus", [](const std::string& dir) {
    RunOutcome out = run_corpus(dir);
    return py::make_tuple(out.report.dump(2), out.exit_code);
  });

  m.def("render", [](const std::string& text) {
    return render_document(parse_document(text));
  });
}
