#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "geflab/cli.hpp"
#include "geflab/errors.hpp"
#include "geflab/experiments.hpp"
#include "geflab/potential.hpp"
#include "geflab/serialize.hpp"
#include "geflab/zeros.hpp"

namespace py = pybind11;
using namespace geflab;

namespace {

EventSpec event_from_name(const std::string& name) {
  for (EventSpec e : {EventSpec::Hole, EventSpec::CountDeviation, EventSpec::LogMDeviation,
                      EventSpec::CircleMeanLow, EventSpec::Claim32Failure,
                      EventSpec::AbsMeanHigh, EventSpec::JensenResidual}) {
    if (event_name(e) == name) return e;
  }
  throw std::domain_error("unknown event: " + name);
}

ProbePlacement placement_from_name(const std::string& name) {
  if (name == "centers") return ProbePlacement::Centers;
  if (name == "random") return ProbePlacement::UniformRandom;
  if (name == "corner") return ProbePlacement::CornerAdversarial;
  throw std::domain_error("unknown placement: " + name);
}

LogMode mode_from_name(const std::string& name) {
  if (name == "signed") return LogMode::Signed;
  if (name == "absolute") return LogMode::Absolute;
  if (name == "positive") return LogMode::PositivePart;
  throw std::domain_error("unknown mode: " + name);
}

std::string hole_tag_name(HoleTag tag) {
  switch (tag) {
    case HoleTag::Hole: return "Hole";
    case HoleTag::NotHole: return "NotHole";
    case HoleTag::Uncertain: return "Uncertain";
  }
  return "Uncertain";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "simulation of zero statistics of the Gaussian entire function";

  py::register_exception<CertificationError>(m, "CertificationError");
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError");
  py::register_exception<SingularGridError>(m, "SingularGridError");
  py::register_exception<NotInOmegaError>(m, "NotInOmegaError");

  py::class_<RngState>(m, "RngState")
      .def(py::init<std::uint64_t, std::uint32_t, std::uint64_t>(),
           py::arg("master_seed") = 0, py::arg("stream_id") = 0, py::arg("counter") = 0)
      .def_readwrite("master_seed", &RngState::master_seed)
      .def_readwrite("stream_id", &RngState::stream_id)
      .def_readwrite("counter", &RngState::counter)
      .def("__eq__", [](const RngState& a, const RngState& b) { return a == b; });

  m.def("derive_trial_rng", &derive_trial_rng, py::arg("master_seed"),
        py::arg("stream_id"), py::arg("trial_index"));
  m.def("sample_standard_complex", &sample_standard_complex, py::arg("state"));
  m.def("gaussian_tail", &gaussian_tail, py::arg("lam"));
  m.def("gaussian_small_ball", &gaussian_small_ball, py::arg("lam"));
  m.def("log_gaussian_tail", &log_gaussian_tail, py::arg("lam"));
  m.def("log_gaussian_small_ball", &log_gaussian_small_ball, py::arg("lam"));

  py::class_<TruncatedGef>(m, "TruncatedGef")
      .def_readonly("coefficients", &TruncatedGef::coefficients)
      .def_readonly("degree", &TruncatedGef::degree)
      .def_readonly("certified_radius", &TruncatedGef::certified_radius)
      .def_readonly("tail_bound", &TruncatedGef::tail_bound)
      .def_readonly("tail_failure_log_prob", &TruncatedGef::tail_failure_log_prob)
      .def("to_json", [](const TruncatedGef& g) { return gef_to_json(g).dump(); });

  m.def("gef_from_json", [](const std::string& text) {
    return gef_from_json(nlohmann::json::parse(text));
  });
  m.def(
      "truncation_degree",
      [](double r, double alpha, int min_degree) {
        return truncation_degree(r, TruncationPolicy{alpha, min_degree});
      },
      py::arg("r"), py::arg("alpha") = 8.0, py::arg("min_degree") = 24);
  m.def(
      "tail_bound",
      [](int degree, double r) {
        const TailBound tb = tail_bound(degree, r);
        return py::make_tuple(tb.tau, tb.failure_log_prob);
      },
      py::arg("degree"), py::arg("r"));
  m.def(
      "sample_gef",
      [](double r, const RngState& state, double alpha, int min_degree) {
        return sample_gef(r, state, TruncationPolicy{alpha, min_degree});
      },
      py::arg("r"), py::arg("state"), py::arg("alpha") = 8.0, py::arg("min_degree") = 24);
  m.def("evaluate", &evaluate, py::arg("gef"), py::arg("z"));
  m.def(
      "max_modulus_on_circle",
      [](const TruncatedGef& gef, double rho) { return max_modulus_on_circle(gef, rho); },
      py::arg("gef"), py::arg("rho"));

  py::class_<CountResult>(m, "CountResult")
      .def_readonly("count", &CountResult::count)
      .def_readonly("min_circle_modulus", &CountResult::min_circle_modulus)
      .def_readonly("guard_margin", &CountResult::guard_margin)
      .def_readonly("refinement_depth", &CountResult::refinement_depth)
      .def_readonly("unresolved_arcs", &CountResult::unresolved_arcs);

  py::class_<DiscZeroSet>(m, "DiscZeroSet")
      .def_readonly("zeros", &DiscZeroSet::zeros)
      .def_readonly("radius", &DiscZeroSet::radius)
      .def_readonly("center", &DiscZeroSet::center)
      .def_readonly("max_poly_residual", &DiscZeroSet::max_poly_residual)
      .def("to_json", [](const DiscZeroSet& s) { return zeros_to_json(s).dump(); });

  m.def(
      "winding_count",
      [](const TruncatedGef& gef, std::complex<double> center, double radius) {
        return winding_count(gef, center, radius);
      },
      py::arg("gef"), py::arg("center"), py::arg("radius"));
  m.def("find_zeros", &find_zeros, py::arg("gef"), py::arg("radius"));
  m.def(
      "classify_hole",
      [](const TruncatedGef& gef, double r) {
        const HoleVerdict v = classify_hole(gef, r);
        py::dict d;
        d["tag"] = hole_tag_name(v.tag);
        if (v.tag == HoleTag::NotHole) d["count"] = v.count;
        if (v.tag == HoleTag::Uncertain) d["reason"] = v.reason;
        return d;
      },
      py::arg("gef"), py::arg("r"));

  m.def(
      "circle_mean_log_modulus",
      [](const TruncatedGef& gef, double radius, const std::string& mode, int n_points) {
        const CircleGrid grid = n_points > 0 ? CircleGrid::with_points(radius, n_points)
                                             : CircleGrid::for_radius(radius);
        return circle_mean_log_modulus(gef, grid, mode_from_name(mode));
      },
      py::arg("gef"), py::arg("radius"), py::arg("mode") = "signed",
      py::arg("n_points") = 0);
  m.def("poisson_kernel", &poisson_kernel, py::arg("z"), py::arg("zeta"), py::arg("r"));

  py::class_<PoissonProbe>(m, "PoissonProbe")
      .def_readonly("delta", &PoissonProbe::delta)
      .def_readonly("r", &PoissonProbe::r)
      .def_readonly("kappa", &PoissonProbe::kappa)
      .def_readonly("n_discs", &PoissonProbe::n_discs)
      .def_readonly("probe_centers", &PoissonProbe::probe_centers)
      .def_readonly("probe_points", &PoissonProbe::probe_points);

  m.def(
      "make_poisson_probe",
      [](double delta, double r, const std::string& placement, const RngState& state) {
        return make_poisson_probe(delta, r, placement_from_name(placement), state);
      },
      py::arg("delta"), py::arg("r"), py::arg("placement") = "random",
      py::arg("state") = RngState{});
  m.def("probe_deviation", &probe_deviation, py::arg("probe"),
        py::arg("min_grid_points") = 4096);
  m.def("jensen_residual", &jensen_residual, py::arg("gef"), py::arg("r"));
  m.def("local_sup_log_modulus", &local_sup_log_modulus, py::arg("gef"), py::arg("z0"),
        py::arg("rho"));

  py::class_<OmegaChainReport>(m, "OmegaChainReport")
      .def_readonly("r", &OmegaChainReport::r)
      .def_readonly("zeta0_abs", &OmegaChainReport::zeta0_abs)
      .def_readonly("sum_prime", &OmegaChainReport::sum_prime)
      .def_readonly("sum_double_prime_bound", &OmegaChainReport::sum_double_prime_bound)
      .def_readonly("lower_bound_on_min_psi", &OmegaChainReport::lower_bound_on_min_psi)
      .def_readonly("chain_holds", &OmegaChainReport::chain_holds);

  m.def("log_prob_omega", &log_prob_omega, py::arg("r"));
  m.def(
      "conditional_omega_degree",
      [](double r) { return conditional_omega_degree(r); }, py::arg("r"));
  m.def("sample_conditional_omega", &sample_conditional_omega, py::arg("r"),
        py::arg("state"), py::arg("degree"));
  m.def("verify_omega_chain", &verify_omega_chain, py::arg("gef"), py::arg("r"));

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("event_name", &McEstimate::event_name)
      .def_readonly("r", &McEstimate::r)
      .def_readonly("delta", &McEstimate::delta)
      .def_readonly("trials", &McEstimate::trials)
      .def_readonly("successes", &McEstimate::successes)
      .def_readonly("uncertain", &McEstimate::uncertain)
      .def_readonly("p_hat", &McEstimate::p_hat)
      .def_readonly("p_low_bound", &McEstimate::p_low_bound)
      .def_readonly("p_high_bound", &McEstimate::p_high_bound)
      .def_readonly("ci_low", &McEstimate::ci_low)
      .def_readonly("ci_high", &McEstimate::ci_high)
      .def_readonly("master_seed", &McEstimate::master_seed);

  m.def(
      "estimate_event_probability",
      [](const std::string& event, double r, std::optional<double> delta,
         long long trials, std::uint64_t master_seed, int workers) {
        return estimate_event_probability(event_from_name(event), r, delta, trials,
                                          master_seed, workers);
      },
      py::arg("event"), py::arg("r"), py::arg("delta") = std::nullopt,
      py::arg("trials") = 10000, py::arg("master_seed") = 1, py::arg("workers") = 0,
      py::call_guard<py::gil_scoped_release>());

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("amplitude", &FitResult::amplitude)
      .def_readonly("exponent", &FitResult::exponent)
      .def_readonly("window", &FitResult::window)
      .def_readonly("residual_rms", &FitResult::residual_rms);

  m.def("fit_decay_exponent", &fit_decay_exponent, py::arg("points"));
  m.def("wilson_interval", &wilson_interval, py::arg("p_hat"), py::arg("trials"));

  m.def("cli_run", &cli::run, py::arg("args"),
        py::call_guard<py::gil_scoped_release>());
}
