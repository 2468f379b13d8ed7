#include <pybind11/pybind11.h>

#include "lde/version.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_lde, m) {
    m.doc() = "long-distance entanglement toolkit (C++ core)";
    m.attr("__version__") = lde::version_string;
}
