#include <pybind11/pybind11.h>
PYBIND11_MODULE(patecon, m) { m.doc() = "placeholder"; }
