#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcurve/curve.hpp"
#include "qcurve/errors.hpp"
#include "qcurve/evolve.hpp"
#include "qcurve/frenet.hpp"
#include "qcurve/reconstruct.hpp"

namespace py = pybind11;
using namespace qcurve;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a, const char* what) {
    if (a.ndim() != 1) throw InvalidInput(std::string(what) + " must be one-dimensional");
    return {a.data(), a.data() + a.size()};
}

std::vector<Quaternion> to_quaternions(const Array& a) {
    if (a.ndim() != 2 || a.shape(1) != 4) throw InvalidInput("q must have shape (n, 4)");
    std::vector<Quaternion> out(static_cast<std::size_t>(a.shape(0)));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i) out[i] = {r(i, 0), r(i, 1), r(i, 2), r(i, 3)};
    return out;
}

py::array_t<double> from_quaternions(const std::vector<Quaternion>& q) {
    py::array_t<double> a({static_cast<py::ssize_t>(q.size()), py::ssize_t{4}});
    auto w = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (int k = 0; k < 4; ++k) w(static_cast<py::ssize_t>(i), k) = q[i][k];
    }
    return a;
}

py::array_t<double> from_vector(const std::vector<double>& v) {
    py::array_t<double> a({static_cast<py::ssize_t>(v.size())});
    auto w = a.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) w(static_cast<py::ssize_t>(i)) = v[i];
    return a;
}

Quaternion as_quaternion(const py::object& o) {
    if (py::isinstance<Quaternion>(o)) return o.cast<Quaternion>();
    const auto v = o.cast<std::vector<double>>();
    if (v.size() == 3) return {0.0, v[0], v[1], v[2]};
    if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
    throw InvalidInput("expected a Quaternion or a sequence of 3 or 4 numbers");
}

CurveSamples make_curve(const Array& t, const Array& q) {
    CurveSamples c;
    c.t = to_vector(t, "t");
    c.q = to_quaternions(q);
    c.meta = "ingested";
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Differential geometry of sampled quaternionic curves";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<IrregularCurve>(m, "IrregularCurve", domain.ptr());

    py::class_<Quaternion>(m, "Quaternion")
        .def(py::init<double, double, double, double>(), py::arg("x0") = 0.0, py::arg("x1") = 0.0,
             py::arg("x2") = 0.0, py::arg("x3") = 0.0)
        .def_readwrite("x0", &Quaternion::x0)
        .def_readwrite("x1", &Quaternion::x1)
        .def_readwrite("x2", &Quaternion::x2)
        .def_readwrite("x3", &Quaternion::x3)
        .def_static("i", &Quaternion::i)
        .def_static("j", &Quaternion::j)
        .def_static("k", &Quaternion::k)
        .def("to_list", [](const Quaternion& q) { return std::vector<double>{q.x0, q.x1, q.x2, q.x3}; })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(-py::self)
        .def(py::self * py::self)
        .def(py::self * double())
        .def(double() * py::self)
        .def(py::self / double())
        .def(py::self == py::self)
        .def("__repr__", [](const Quaternion& q) {
            std::ostringstream os;
            os.precision(17);
            os << "Quaternion(" << q.x0 << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ")";
            return os.str();
        });

    m.def("mul", &mul);
    m.def("conj", &conj);
    m.def("norm", &norm);
    m.def("inverse", &inverse);
    m.def("scalar_product", &scalar_product);
    m.def("is_orthogonal", &is_orthogonal, py::arg("p"), py::arg("q"), py::arg("tol") = 1e-9);
    m.def("is_parallel", &is_parallel, py::arg("p"), py::arg("q"), py::arg("tol") = 1e-9);

    py::class_<PolarForm>(m, "PolarForm")
        .def(py::init<>())
        .def_readwrite("rho", &PolarForm::rho)
        .def_readwrite("theta", &PolarForm::theta)
        .def_readwrite("omega", &PolarForm::omega)
        .def_readwrite("degenerate", &PolarForm::degenerate);
    m.def("to_polar", &to_polar);
    m.def("from_polar", &from_polar);
    m.def("polar_unit_power", &polar_unit_power);

    py::class_<SymplecticPolarForm>(m, "SymplecticPolarForm")
        .def(py::init<>())
        .def_readwrite("rho", &SymplecticPolarForm::rho)
        .def_readwrite("vartheta", &SymplecticPolarForm::vartheta)
        .def_readwrite("phi", &SymplecticPolarForm::phi)
        .def_readwrite("psi", &SymplecticPolarForm::psi);
    m.def("to_symplectic", [](const Quaternion& q) {
        const auto s = to_symplectic(q);
        return py::make_tuple(s.z0, s.z1);
    });
    m.def("from_symplectic", [](Complex z0, Complex z1) { return from_symplectic(z0, z1); });
    m.def("to_symplectic_polar", &to_symplectic_polar);
    m.def("from_symplectic_polar", &from_symplectic_polar);
    m.def("symplectic_unit_power", &symplectic_unit_power);

    py::class_<CurveSamples>(m, "CurveSamples")
        .def(py::init(&make_curve), py::arg("t"), py::arg("q"))
        .def_property_readonly("t", [](const CurveSamples& c) { return from_vector(c.t); })
        .def_property_readonly("q", [](const CurveSamples& c) { return from_quaternions(c.q); })
        .def_readonly("meta", &CurveSamples::meta)
        .def("__len__", &CurveSamples::size);

    m.def("builtin_constant_curvature",
          [](const py::object& kappa, double phi0, const Array& t) {
              const auto grid = to_vector(t, "t");
              return builtin_constant_curvature(as_quaternion(kappa), phi0, grid);
          },
          py::arg("kappa"), py::arg("phi0"), py::arg("t"));
    m.def("builtin_symplectic",
          [](Complex c, double phi0, const Array& t) {
              const auto grid = to_vector(t, "t");
              return builtin_symplectic(c, phi0, grid);
          },
          py::arg("c"), py::arg("phi0"), py::arg("t"));
    m.def("derivatives", [](const CurveSamples& c) {
        const auto d = derivatives(c);
        return py::make_tuple(from_quaternions(d.d1), from_quaternions(d.d2));
    });
    m.def("is_regular", [](const CurveSamples& c) { return is_regular(c); });
    m.def("arc_length", &arc_length, py::arg("curve"), py::arg("t_from"), py::arg("t_to"));
    m.def("reparametrize_by_arc_length", &reparametrize_by_arc_length);

    py::class_<CurvatureProfile>(m, "CurvatureProfile")
        .def(py::init([](const Array& t, const Array& k1, const Array& k2, const Array& k3) {
                 const auto tt = to_vector(t, "t"), a = to_vector(k1, "k1"), b = to_vector(k2, "k2"),
                            c = to_vector(k3, "k3");
                 if (a.size() != tt.size() || b.size() != tt.size() || c.size() != tt.size()) {
                     throw InvalidInput("curvature components must match the grid length");
                 }
                 CurvatureProfile p;
                 for (std::size_t i = 0; i < tt.size(); ++i) p.push_back(tt[i], {0.0, a[i], b[i], c[i]});
                 return p;
             }),
             py::arg("t"), py::arg("k1"), py::arg("k2"), py::arg("k3"))
        .def_property_readonly("t", [](const CurvatureProfile& p) { return from_vector(p.t); })
        .def_property_readonly("k1", [](const CurvatureProfile& p) { return from_vector(p.k1); })
        .def_property_readonly("k2", [](const CurvatureProfile& p) { return from_vector(p.k2); })
        .def_property_readonly("k3", [](const CurvatureProfile& p) { return from_vector(p.k3); })
        .def_property_readonly("kappa_mag", [](const CurvatureProfile& p) { return from_vector(p.kappa_mag); })
        .def_property_readonly("residual", [](const CurvatureProfile& p) { return from_vector(p.residual); });

    py::class_<SymplecticCurvatureProfile>(m, "SymplecticCurvatureProfile")
        .def_property_readonly("t", [](const SymplecticCurvatureProfile& p) { return from_vector(p.t); })
        .def_property_readonly("c", [](const SymplecticCurvatureProfile& p) {
            return py::array_t<Complex>(static_cast<py::ssize_t>(p.c.size()), p.c.data());
        })
        .def_property_readonly("residual",
                               [](const SymplecticCurvatureProfile& p) { return from_vector(p.residual); });

    m.def("curvature_cartesian", [](const CurveSamples& c) { return curvature_cartesian(c); });
    m.def("curvature_symplectic", [](const CurveSamples& c) { return curvature_symplectic(c); });

    m.def("reconstruct_closed_form",
          [](const Array& t, const Array& kappa_mag, const py::object& omega, double phi0,
             const py::object& P0, const py::object& V0) {
              ReconstructionSpec s;
              s.t = to_vector(t, "t");
              s.kappa_mag = to_vector(kappa_mag, "kappa_mag");
              s.omega = as_quaternion(omega);
              s.phi0 = phi0;
              s.P0 = as_quaternion(P0);
              s.V0 = as_quaternion(V0);
              return reconstruct_closed_form(s);
          },
          py::arg("t"), py::arg("kappa_mag"), py::arg("omega"), py::arg("phi0"), py::arg("P0"),
          py::arg("V0"));
    m.def("reconstruct_ode",
          [](const CurvatureProfile& p, const py::object& P0, const py::object& V0, std::size_t anchor) {
              return reconstruct_ode(p, as_quaternion(P0), as_quaternion(V0), anchor);
          },
          py::arg("profile"), py::arg("P0"), py::arg("V0"), py::arg("anchor") = 0);
    m.def("reconstruct_symplectic",
          [](const Array& t, const Array& c_mag, double phi0, Complex P0, Complex Q0) {
              const auto tt = to_vector(t, "t"), cm = to_vector(c_mag, "c_mag");
              return reconstruct_symplectic(tt, cm, phi0, P0, Q0);
          },
          py::arg("t"), py::arg("c_mag"), py::arg("phi0"), py::arg("P0"), py::arg("Q0"));

    py::class_<Check>(m, "Check")
        .def_readonly("name", &Check::name)
        .def_property_readonly("status", [](const Check& c) { return std::string(to_string(c.status)); })
        .def_readonly("measured", &Check::measured)
        .def_readonly("tolerance", &Check::tolerance)
        .def_readonly("flagged", &Check::flagged)
        .def_readonly("note", &Check::note)
        .def("passed", &Check::passed);

    py::class_<EvoluteResult>(m, "EvoluteResult")
        .def_readonly("curve", &EvoluteResult::curve)
        .def_readonly("singular_nodes", &EvoluteResult::singular_nodes)
        .def_property_readonly("omega_used",
                               [](const EvoluteResult& e) { return from_quaternions(e.omega_used); });

    m.def("evolute", [](const CurveSamples& c) { return evolute(c); });
    m.def("evolute_symplectic", [](const CurveSamples& c) { return evolute_symplectic(c); });
    m.def("evolute_tangent_check", &evolute_tangent_check);
    m.def("evolvent", [](const CurveSamples& c, double lambda0) { return evolvent(c, lambda0); },
          py::arg("curve"), py::arg("lambda0"));
    m.def("evolute_of_evolvent_roundtrip",
          [](const CurveSamples& c, double lambda0) { return evolute_of_evolvent_roundtrip(c, lambda0); },
          py::arg("curve"), py::arg("lambda0"));
}
