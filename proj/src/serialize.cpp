#include "brwa/serialize.hpp"

namespace brwa {
namespace {

nlohmann::ordered_json complex_json(std::complex<double> z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

}  // namespace

void to_json(nlohmann::ordered_json& j, const ModeParams& p) {
  j = {{"omega_a", p.omega_a}, {"omega_b", p.omega_b}, {"g", p.g}};
}

void to_json(nlohmann::ordered_json& j, const DerivedParams& d) {
  j = {{"omega_plus", d.omega_plus}, {"omega_minus", d.omega_minus},
       {"A", d.A},                   {"B", d.B},
       {"theta", d.theta},           {"alpha", d.alpha},
       {"Gamma", d.Gamma},           {"E", d.E},
       {"calE", d.calE}};
}

void to_json(nlohmann::ordered_json& j, const AlgebraReport& r) {
  j = {{"cutoff", r.cutoff},
       {"interior_cutoff", r.interior_cutoff},
       {"tolerance", r.tolerance},
       {"worst", r.worst()},
       {"passed", r.passed()},
       {"relations", nlohmann::ordered_json::array()}};
  for (const auto& rel : r.relations) {
    j["relations"].push_back({{"relation", rel.relation},
                              {"family", rel.source},
                              {"residual", rel.residual},
                              {"passed", rel.residual <= r.tolerance}});
  }
}

void to_json(nlohmann::ordered_json& j, const ChainReport& r) {
  j = {{"cutoff", r.cutoff},
       {"interior_cutoff", r.interior_cutoff},
       {"t", r.t},
       {"frame_residual", r.frame_residual},
       {"vacuum_phase_residual", r.vacuum_phase_residual},
       {"interaction_residual", r.interaction_residual},
       {"interaction_amplitude", complex_json(r.interaction_amplitude)},
       {"effective_amplitude", complex_json(r.effective_amplitude)},
       {"squeeze_amplitude", complex_json(r.squeeze_amplitude)},
       {"final_scalar", r.final_scalar},
       {"expected", r.expected},
       {"final_residual", r.final_residual},
       {"identity_tolerance", r.identity_tolerance},
       {"scalar_tolerance", r.scalar_tolerance},
       {"passed", r.passed()}};
}

void to_json(nlohmann::ordered_json& j, const TruncationDiagnostics& d) {
  j = {{"tail_mass", d.tail_mass}, {"verdict", verdict_name(d.verdict)}};
}

}  // namespace brwa
