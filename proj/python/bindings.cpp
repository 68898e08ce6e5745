#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cicr/driver.hpp"
#include "cicr/error.hpp"

namespace py = pybind11;
using namespace cicr;

PYBIND11_MODULE(_cicr, m) {
    m.doc() = "Type checker and parametricity translator";

    static PyObject* error = py::exception<KernelError>(m, "CicrError").release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        auto raise = [](ErrorCode code, const char* what) {
            PyErr_SetString(error, (std::string(error_code_name(code)) + ": " + what).c_str());
        };
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SourceError& e) {
            raise(e.code(), e.what());
        } catch (const KernelError& e) {
            raise(e.code(), e.what());
        }
    });

    py::class_<Options>(m, "Options")
        .def(py::init([](std::uint64_t fuel, bool continue_on_error, bool cic_prop_cumul) {
                 return Options{fuel, continue_on_error, cic_prop_cumul};
             }),
             py::arg("fuel") = 1'000'000, py::arg("continue_on_error") = false, py::arg("cic_prop_cumul") = false)
        .def_readwrite("fuel", &Options::fuel)
        .def_readwrite("continue_on_error", &Options::continue_on_error)
        .def_readwrite("cic_prop_cumul", &Options::cic_prop_cumul);

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_property_readonly("file", [](const Diagnostic& d) { return d.span.file; })
        .def_property_readonly("line", [](const Diagnostic& d) { return d.span.line; })
        .def_property_readonly("col", [](const Diagnostic& d) { return d.span.col; })
        .def_property_readonly("code", [](const Diagnostic& d) { return std::string(error_code_name(d.code)); })
        .def_readonly("message", &Diagnostic::message)
        .def_readonly("judgment", &Diagnostic::judgment)
        .def("format", &Diagnostic::format)
        .def("__repr__", &Diagnostic::format);

    py::class_<CommandReport>(m, "CommandReport")
        .def_property_readonly("line", [](const CommandReport& r) { return r.span.line; })
        .def_readonly("label", &CommandReport::label)
        .def_readonly("ok", &CommandReport::ok)
        .def_readonly("output", &CommandReport::output)
        .def("format", &CommandReport::format)
        .def("__repr__", &CommandReport::format);

    py::class_<Session>(m, "Session")
        .def(py::init<Options>(), py::arg("options") = Options{})
        .def("run_file", &Session::run_file, py::arg("path"))
        .def("run_source", &Session::run_source, py::arg("source"), py::arg("filename") = "<string>")
        .def_property_readonly("diagnostics", &Session::diagnostics)
        .def_property_readonly("reports", &Session::reports)
        .def_property_readonly("failed", &Session::failed)
        .def_property_readonly("exit_status", &Session::exit_status)
        .def("names", [](const Session& s) { return s.env().names(); })
        .def("parametricity", &Session::parametricity, py::arg("name"))
        .def("embedding", &Session::embedding, py::arg("name"))
        .def("evaluate", &Session::evaluate, py::arg("term"));
}
