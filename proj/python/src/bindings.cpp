#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "nus/bench.hpp"
#include "nus/codec.hpp"
#include "nus/duality.hpp"
#include "nus/error.hpp"
#include "nus/multidim.hpp"
#include "nus/reconstructor.hpp"
#include "nus/sampler.hpp"
#include "nus/segmenter.hpp"
#include "nus/signal.hpp"
#include "nus/tree.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

nus::UniformSignal to_signal(const Array& a) {
  if (a.ndim() != 1) throw nus::ParameterError("signal must be one-dimensional");
  return nus::UniformSignal(std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

nus::Segmentation segment(const Array& values, std::size_t n, const std::string& method) {
  const auto s = to_signal(values);
  if (method == "threshold") return nus::segment_by_threshold(nus::derivative(s), n).segmentation;
  if (method == "expander") return nus::segment_by_expander(nus::compressor(nus::optimal_density(nus::derivative(s))), n);
  if (method == "uniform") return nus::uniform_segmentation(s.size(), n);
  throw nus::ParameterError("unknown method '" + method + "'");
}

std::vector<std::size_t> edges(const nus::Segmentation& s) { return {s.boundaries().begin(), s.boundaries().end()}; }

nus::CodecConfig make_config(unsigned b_j, unsigned b_ext, unsigned b_val0, double phi_min, double phi_max) {
  nus::CodecConfig c{b_j, b_ext, b_val0, phi_min, phi_max};
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_nus, m) {
  m.doc() = "Optimal nonuniform sampling: segmentation, reconstruction, coding";

  py::register_exception<nus::Error>(m, "NusError", PyExc_ValueError);

  m.def("generate", [](const std::string& spec, std::size_t nu) {
    const auto s = nus::generate(nus::AnalyticSignalSpec::parse(spec), nu);
    return to_array({s.values().begin(), s.values().end()});
  }, py::arg("spec"), py::arg("nu"));

  m.def("derivative", [](const Array& v) { return to_array(nus::derivative(to_signal(v)).values); });
  m.def("optimal_density", [](const Array& v, double eps) {
    return to_array(nus::optimal_density(nus::derivative(to_signal(v)), eps).values);
  }, py::arg("values"), py::arg("epsilon") = nus::kDefaultEpsilon);

  m.def("segment", [](const Array& v, std::size_t n, const std::string& method) {
    return edges(segment(v, n, method));
  }, py::arg("values"), py::arg("n"), py::arg("method") = "threshold");
  m.def("threshold", [](const Array& v, std::size_t n) {
    return nus::segment_by_threshold(nus::derivative(to_signal(v)), n).threshold;
  });

  m.def("optimal_samples", [](const Array& v, std::vector<std::size_t> b) {
    return nus::optimal_samples(to_signal(v), nus::Segmentation(std::move(b))).samples;
  }, py::arg("values"), py::arg("boundaries"));
  m.def("empirical_mse", [](const Array& v, std::vector<std::size_t> b, std::vector<double> samples) {
    return nus::empirical_mse(to_signal(v), nus::PiecewiseConstant{nus::Segmentation(std::move(b)), std::move(samples)});
  }, py::arg("values"), py::arg("boundaries"), py::arg("samples"));
  m.def("panter_dite_mse", [](const Array& v, std::size_t n) {
    return nus::panter_dite_mse(nus::derivative(to_signal(v)), n);
  });
  m.def("bennett_mse", [](const Array& v, const Array& density, std::size_t n) {
    return nus::bennett_mse(nus::derivative(to_signal(v)),
                            nus::DensityGrid{std::vector<double>(density.data(), density.data() + density.size())}, n);
  });

  py::class_<nus::SamplerDescriptor>(m, "Descriptor")
      .def_property_readonly("boundaries", [](const nus::SamplerDescriptor& d) { return edges(d.boundaries); })
      .def_property_readonly("extrema", [](const nus::SamplerDescriptor& d) {
        std::vector<std::pair<std::size_t, double>> out;
        for (const auto& e : d.extrema.entries) out.emplace_back(e.index, e.amplitude);
        return out;
      })
      .def_readonly("s0", &nus::SamplerDescriptor::s0)
      .def_readonly("phi0", &nus::SamplerDescriptor::phi0)
      .def_readonly("t_opt", &nus::SamplerDescriptor::t_opt)
      .def_readonly("n_u", &nus::SamplerDescriptor::n_u)
      .def("to_json", &nus::descriptor_to_json)
      .def_static("from_json", &nus::descriptor_from_json)
      .def("__repr__", [](const nus::SamplerDescriptor& d) {
        return "<Descriptor N=" + std::to_string(d.boundaries.segments()) + " J=" + std::to_string(d.extrema.size()) +
               " n_u=" + std::to_string(d.n_u) + ">";
      });

  m.def("describe", [](const Array& v, std::size_t n) { return nus::describe(to_signal(v), n); });
  m.def("reconstruct", [](const nus::SamplerDescriptor& d) { return nus::reconstruct(d).samples; });

  m.def("encode", [](const nus::SamplerDescriptor& d, unsigned b_j, unsigned b_ext, unsigned b_val0, double lo, double hi) {
    const auto bytes = nus::encode_descriptor(d, make_config(b_j, b_ext, b_val0, lo, hi));
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }, py::arg("descriptor"), py::arg("b_j") = 8, py::arg("b_ext") = 13, py::arg("b_val0") = 15,
     py::arg("phi_min") = -255.0, py::arg("phi_max") = 255.0);
  m.def("decode", [](const py::bytes& data, unsigned b_j, unsigned b_ext, unsigned b_val0, double lo, double hi) {
    const std::string s = data;
    const std::vector<std::uint8_t> bytes(s.begin(), s.end());
    return nus::decode_descriptor(bytes, make_config(b_j, b_ext, b_val0, lo, hi)).descriptor;
  }, py::arg("data"), py::arg("b_j") = 8, py::arg("b_ext") = 13, py::arg("b_val0") = 15,
     py::arg("phi_min") = -255.0, py::arg("phi_max") = 255.0);

  m.def("encode_monotone", [](std::vector<std::size_t> ints, unsigned b) { return nus::encode_monotone(ints, b); });
  m.def("decode_monotone", [](std::vector<std::uint32_t> sym, unsigned b, std::size_t count) {
    return nus::decode_monotone(sym, b, count);
  });
  m.def("choose_b_diff", [](std::vector<std::size_t> ints) { return nus::choose_b_diff(ints); });

  m.def("tree_sweep", [](const Array& v, unsigned depth, std::vector<double> mu_grid) {
    const auto s = to_signal(v);
    const auto full = nus::build_full_tree(s, depth);
    if (mu_grid.empty()) mu_grid = nus::default_mu_grid(full);
    py::list out;
    for (const auto& r : nus::tree_sweep(s, full, mu_grid)) {
      py::dict d;
      d["mu"] = r.mu;
      d["leaves"] = r.leaves;
      d["bits"] = r.bits;
      d["mse"] = r.mse;
      d["mse_quantized"] = r.mse_quantized;
      out.append(d);
    }
    return out;
  }, py::arg("values"), py::arg("depth"), py::arg("mu_grid") = std::vector<double>{});

  m.def("design_quantizer", [](const Array& pdf, std::size_t n, double x_low, double x_high) {
    const auto p = nus::PdfGrid::normalized(x_low, x_high, std::vector<double>(pdf.data(), pdf.data() + pdf.size()));
    const auto q = nus::design_quantizer_via_sampling(p, n);
    return py::make_tuple(q.boundaries, q.reproduction);
  }, py::arg("pdf"), py::arg("n"), py::arg("x_low") = 0.0, py::arg("x_high") = 1.0);

  m.def("mse_lower_bound_kd", [](std::vector<std::size_t> shape, const Array& beta2, std::size_t n, double m_k) {
    nus::GradientField f{std::move(shape), std::vector<double>(beta2.data(), beta2.data() + beta2.size())};
    return nus::mse_lower_bound_kd(f, n, m_k);
  }, py::arg("shape"), py::arg("beta2"), py::arg("n"), py::arg("m_k"));
  m.def("hexagon_inertia", &nus::hexagon_inertia);
}
