#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qutele/channels.hpp"
#include "qutele/figures.hpp"
#include "qutele/metrology.hpp"
#include "qutele/schemes.hpp"
#include "qutele/teleport.hpp"
#include "qutele/verify.hpp"

namespace py = pybind11;
using namespace qutele;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CArray to_numpy(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  CArray out({n, n});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

ComplexMatrix from_numpy(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("expected a square 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return ComplexMatrix(n, std::vector<Complex>(a.data(), a.data() + n * n));
}

py::list kraus_to_list(const KrausSet& ks) {
  py::list out;
  for (const auto& k : ks.operators) out.append(to_numpy(k));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Qutrit teleportation under amplitude damping: channels, pipelines, QFIM and schemes.";

  py::register_exception<Error>(m, "QuteleError", PyExc_ValueError);

  py::class_<NoiseParams>(m, "NoiseParams")
      .def(py::init([](double d1, double d2) { return NoiseParams{d1, d2, std::nullopt}; }),
           py::arg("d1"), py::arg("d2"))
      .def_static("symmetric", &NoiseParams::symmetric, py::arg("d"))
      .def_static("from_gamma_t", &NoiseParams::from_gamma_t, py::arg("gamma_t"))
      .def_readwrite("d1", &NoiseParams::d1)
      .def_readwrite("d2", &NoiseParams::d2)
      .def_readwrite("gamma_t", &NoiseParams::gamma_t);

  py::class_<MeasurementStrengths>(m, "MeasurementStrengths")
      .def(py::init([](double p, double q, double p_r, double q_r) {
             return MeasurementStrengths{p, q, p_r, q_r};
           }),
           py::arg("p") = 0.0, py::arg("q") = 0.0, py::arg("p_r") = 0.0, py::arg("q_r") = 0.0)
      .def_static("symmetric", &MeasurementStrengths::symmetric, py::arg("p"), py::arg("p_r"))
      .def_readwrite("p", &MeasurementStrengths::p)
      .def_readwrite("q", &MeasurementStrengths::q)
      .def_readwrite("p_r", &MeasurementStrengths::p_r)
      .def_readwrite("q_r", &MeasurementStrengths::q_r);

  py::class_<InputState>(m, "InputState")
      .def(py::init([](double a, double b, double d, double phi1, double phi2) {
             InputState s{a, b, d, phi1, phi2};
             s.validate();
             return s;
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("delta"), py::arg("phi1"), py::arg("phi2"))
      .def_static("balanced", &InputState::balanced, py::arg("phi1") = kDefaultPhi1,
                  py::arg("phi2") = kDefaultPhi2)
      .def("projector", [](const InputState& s) { return to_numpy(s.projector()); })
      .def_readwrite("alpha", &InputState::alpha)
      .def_readwrite("beta", &InputState::beta)
      .def_readwrite("delta", &InputState::delta)
      .def_readwrite("phi1", &InputState::phi1)
      .def_readwrite("phi2", &InputState::phi2);

  py::enum_<SchemeKind>(m, "SchemeKind")
      .value("PlainAD", SchemeKind::PlainAD)
      .value("WM", SchemeKind::WM)
      .value("EAM", SchemeKind::EAM);
  py::enum_<Zeta3Variant>(m, "Zeta3Variant")
      .value("Corrected", Zeta3Variant::Corrected)
      .value("AsPrinted", Zeta3Variant::AsPrinted);

  // Operators and gates.
  m.def("ad_kraus", [](const NoiseParams& np) { return kraus_to_list(ad_kraus(np)); });
  m.def("wm_kraus", [](const MeasurementStrengths& ms) { return kraus_to_list(wm_kraus(ms)); });
  m.def("qmr_operator", [](const MeasurementStrengths& ms) { return to_numpy(qmr_operator(ms)); });
  m.def("gate_x", [](int i) { return to_numpy(gate_x(i)); });
  m.def("gate_z", [](int k) { return to_numpy(gate_z(k)); });
  m.def("gate_h", [] { return to_numpy(gate_h()); });
  m.def("gate_rc", [] { return to_numpy(gate_rc()); });
  m.def("gate_lc", [] { return to_numpy(gate_lc()); });
  m.def("partial_trace",
        [](const CArray& rho, std::vector<std::size_t> dims, std::vector<std::size_t> keep) {
          return to_numpy(partial_trace(from_numpy(rho), dims, keep));
        },
        py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def("eigvalsh", [](const CArray& a) { return hermitian_eig(from_numpy(a)).eigenvalues; });

  // Pipelines.
  auto prep = [](const ResourcePrep& r) { return py::make_tuple(to_numpy(r.rho), r.success_probability); };
  m.def("bell_resource", [] { return to_numpy(bell_resource()); });
  m.def("prepare_plain", [prep](const NoiseParams& np) { return prep(prepare_plain(np)); });
  m.def("prepare_wm", [prep](const NoiseParams& np, const MeasurementStrengths& ms) {
    return prep(prepare_wm(np, ms));
  });
  m.def("prepare_eam", [prep](const NoiseParams& np, const MeasurementStrengths& ms) {
    return prep(prepare_eam(np, ms));
  });
  m.def("teleport", [](const InputState& in, const CArray& resource) {
    return to_numpy(teleport(in, from_numpy(resource)).rho_out);
  });
  m.def("closed_output_plain", [](const NoiseParams& np, const InputState& in) {
    return to_numpy(closed_output_plain(np, in).rho_out);
  });
  m.def("closed_output_wm", [](const NoiseParams& np, const MeasurementStrengths& ms, const InputState& in) {
    return to_numpy(closed_output_wm(np, ms, in).rho_out);
  });
  m.def("closed_output_eam", [](const NoiseParams& np, const MeasurementStrengths& ms, const InputState& in) {
    return to_numpy(closed_output_eam(np, ms, in).rho_out);
  });
  m.def("coherence_factor", [](const CArray& rho, const InputState& in) {
    return coherence_factor(OutputState{from_numpy(rho)}, in);
  });
  m.def("correction_table", [] {
    py::dict out;
    const auto& table = correction_table();
    for (int o = 0; o < 9; ++o) out[py::make_tuple(o / 3, o % 3)] = py::make_tuple(table[o].z_exp, table[o].x_exp);
    return out;
  });

  // Metrology.
  auto qfim_tuple = [](const Qfim2& f) { return py::make_tuple(py::make_tuple(f.f11, f.f12), py::make_tuple(f.f21, f.f22)); };
  m.def("qfim", [qfim_tuple](const CArray& rho, const CArray& d1, const CArray& d2) {
    return qfim_tuple(qfim(from_numpy(rho), from_numpy(d1), from_numpy(d2)));
  });
  m.def("qfim_teleported", [qfim_tuple](const CArray& resource, const InputState& in) {
    return qfim_tuple(qfim(teleported_family(from_numpy(resource), in)));
  });
  m.def("bounds", [](double f11, double f12, double f22) {
    const auto b = bounds({f11, f12, f12, f22});
    return py::dict(py::arg("delta_ind") = b.delta_ind, py::arg("delta_sim") = b.delta_sim,
                    py::arg("ratio_r") = b.ratio_r);
  });

  // Schemes.
  m.def("zeta1", &zeta1, py::arg("d"));
  m.def("zeta2", [](double d, double p, double p_r) { return zeta2(d, p, p_r).zeta; },
        py::arg("d"), py::arg("p"), py::arg("p_r"));
  m.def("zeta3", [](double d, double q_r, Zeta3Variant v) { return zeta3(d, q_r, v).zeta; },
        py::arg("d"), py::arg("q_r"), py::arg("variant") = Zeta3Variant::Corrected);
  m.def("published_optimal_strength", [](SchemeKind k, double d, double p) {
    const auto r = published_optimal_strength(k, d, p);
    return py::make_tuple(r.value, r.in_range);
  });
  m.def("numeric_optimal_strength", [](SchemeKind k, double d, double p) {
    const auto r = numeric_optimal_strength(k, d, p);
    return py::make_tuple(r.strength, r.zeta);
  });
  m.def("success_probability", &success_probability, py::arg("kind"), py::arg("d"), py::arg("p"),
        py::arg("strength"));
  m.def("delta_comparison", &delta_comparison, py::arg("d"), py::arg("p"));
  m.def("variance_bounds", [](SchemeKind k, double zeta) {
    const auto b = variance_bounds(k, zeta);
    return py::make_tuple(b.delta_ind, b.delta_sim);
  });

  // Figure tables and verification.
  m.def("figure_csv", [](const std::string& name) {
    const FigureOptions opt;
    if (name == "fig2.csv") return fig2_table(opt).to_string();
    if (name == "fig3a.csv") return fig3a_table(opt).to_string();
    if (name == "fig3b.csv") return fig3b_table(opt).to_string();
    if (name == "fig4a.csv") return fig4a_table(opt).to_string();
    if (name == "fig4b.csv") return fig4b_table(opt).to_string();
    if (name == "fig5.csv") return fig5_table(opt).to_string();
    throw py::value_error("unknown figure file: " + name);
  }, py::arg("name"), "Default-option CSV text for one figure file.");
  m.def("csv_schemas", [] { return csv_schemas(); });
  m.def("verification_report_json", [] { return run_verification().to_json(); });
}
