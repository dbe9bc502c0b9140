#pragma once

#include <string>

#include "qent/bell_analyzer.hpp"
#include "qent/gamma_sup.hpp"
#include "qent/local_unitary.hpp"
#include "qent/measures.hpp"
#include "qent/states.hpp"

namespace qent {

/// Parses a JSON state descriptor into a validated density matrix.
/// Supported kinds:
///   {"kind":"bell","which":"phi+"|"phi-"|"psi+"|"psi-"}
///   {"kind":"horodecki","a":real,"p":real}
///   {"kind":"werner","p":real}
///   {"kind":"bell_diagonal","lambdas":[l1,l2,l3,l4]}
///   {"kind":"pure","amplitudes":[[re,im] x 4]}
///   {"kind":"density","matrix":[[[re,im] x 4] x 4]} (row-major)
/// Malformed documents and invalid states throw std::invalid_argument with a
/// message naming the problem.
DensityMatrix parse_state_descriptor(const std::string& text);

/// Full-precision export of a state as a {"kind":"density"} descriptor.
/// Feeding the text back through parse_state_descriptor reproduces the
/// matrix bit for bit (doubles are printed shortest-round-trip).
std::string density_descriptor_text(const DensityMatrix& rho);

std::string measure_report_text(const MeasureReport& report);

/// Keys: gamma_sup, params, sweeps, restarts, converged, oracle_checked,
/// oracle_value (null when no oracle ran).
std::string gamma_sup_result_text(const GammaSupResult& result);

std::string protocol_result_text(const ProtocolResult& result);

/// Angles as {"phi","vartheta","theta_a","theta_b"}, radians.
std::string params_text(const LocalUnitaryParams& params);

LocalUnitaryParams parse_params(const std::string& text);

}  // namespace qent
