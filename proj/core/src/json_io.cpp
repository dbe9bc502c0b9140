#include "qent/json_io.hpp"

#include <array>
#include <stdexcept>

#include <json.hpp>

namespace qent {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": malformed JSON: " +
                                e.what());
  }
}

BellKind bell_kind_from_name(const std::string& name) {
  if (name == "phi+") return BellKind::PhiPlus;
  if (name == "phi-") return BellKind::PhiMinus;
  if (name == "psi+") return BellKind::PsiPlus;
  if (name == "psi-") return BellKind::PsiMinus;
  throw std::invalid_argument(
      "state descriptor: unknown bell state \"" + name +
      "\" (expected phi+, phi-, psi+ or psi-)");
}

Complex complex_from_json(const json& pair, const char* what) {
  if (!pair.is_array() || pair.size() != 2) {
    throw std::invalid_argument(std::string(what) +
                                ": complex entries must be [re, im] pairs");
  }
  return Complex(pair[0].get<double>(), pair[1].get<double>());
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

DensityMatrix state_from_descriptor(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind")) {
    throw std::invalid_argument(
        "state descriptor: expected an object with a \"kind\" key");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "bell") {
    return density_from_pure(
        bell_state(bell_kind_from_name(doc.at("which").get<std::string>())));
  }
  if (kind == "horodecki") {
    return horodecki_state(doc.at("a").get<double>(),
                           doc.at("p").get<double>());
  }
  if (kind == "werner") {
    return werner_state(doc.at("p").get<double>());
  }
  if (kind == "bell_diagonal") {
    const json& l = doc.at("lambdas");
    if (!l.is_array() || l.size() != 4) {
      throw std::invalid_argument(
          "state descriptor: \"lambdas\" must be an array of 4 weights");
    }
    return bell_diagonal_state({l[0].get<double>(), l[1].get<double>(),
                                l[2].get<double>(), l[3].get<double>()});
  }
  if (kind == "pure") {
    const json& a = doc.at("amplitudes");
    if (!a.is_array() || a.size() != 4) {
      throw std::invalid_argument(
          "state descriptor: \"amplitudes\" must be an array of 4 [re, im] "
          "pairs");
    }
    Vec4 amps;
    for (int i = 0; i < 4; ++i) {
      amps(i) = complex_from_json(a[i], "state descriptor");
    }
    return density_from_pure(PureState(amps));
  }
  if (kind == "density") {
    const json& m = doc.at("matrix");
    if (!m.is_array() || m.size() != 4) {
      throw std::invalid_argument(
          "state descriptor: \"matrix\" must be a 4x4 row-major array");
    }
    Mat4 mat;
    for (int i = 0; i < 4; ++i) {
      const json& row = m[i];
      if (!row.is_array() || row.size() != 4) {
        throw std::invalid_argument(
            "state descriptor: \"matrix\" must be a 4x4 row-major array");
      }
      for (int j = 0; j < 4; ++j) {
        mat(i, j) = complex_from_json(row[j], "state descriptor");
      }
    }
    return DensityMatrix(mat);
  }
  throw std::invalid_argument("state descriptor: unknown kind \"" + kind +
                              "\"");
}

json params_to_json(const LocalUnitaryParams& params) {
  return json{{"phi", params.phi_mix},
              {"vartheta", params.theta_mix},
              {"theta_a", params.theta_a},
              {"theta_b", params.theta_b}};
}

}  // namespace

DensityMatrix parse_state_descriptor(const std::string& text) {
  const json doc = parse_document(text, "state descriptor");
  try {
    return state_from_descriptor(doc);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("state descriptor: ") + e.what());
  }
}

std::string density_descriptor_text(const DensityMatrix& rho) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) {
      row.push_back(complex_to_json(rho.matrix()(i, j)));
    }
    rows.push_back(row);
  }
  const json doc{{"kind", "density"}, {"matrix", rows}};
  return doc.dump(2) + "\n";
}

std::string measure_report_text(const MeasureReport& report) {
  const json doc{{"gamma", report.gamma},
                 {"gamma_sup", report.gamma_sup},
                 {"concurrence", report.concurrence},
                 {"negativity", report.negativity},
                 {"is_ppt", report.is_ppt}};
  return doc.dump(2) + "\n";
}

std::string gamma_sup_result_text(const GammaSupResult& result) {
  json doc{{"gamma_sup", result.value},
           {"params", params_to_json(result.best_params)},
           {"sweeps", result.sweeps_used},
           {"restarts", result.restarts_used},
           {"converged", result.converged},
           {"oracle_checked", result.oracle_checked}};
  if (result.oracle_value.has_value()) {
    doc["oracle_value"] = *result.oracle_value;
  } else {
    doc["oracle_value"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string protocol_result_text(const ProtocolResult& result) {
  const json doc{{"gamma_sup_estimate", result.gamma_sup_estimate},
                 {"settings_evaluated", result.settings_evaluated},
                 {"inner_phase_settings", result.inner_phase_settings},
                 {"shot_noise_sigma", result.shot_noise_sigma}};
  return doc.dump(2) + "\n";
}

std::string params_text(const LocalUnitaryParams& params) {
  return params_to_json(params).dump(2) + "\n";
}

LocalUnitaryParams parse_params(const std::string& text) {
  const json doc = parse_document(text, "unitary parameters");
  try {
    LocalUnitaryParams params;
    params.phi_mix = doc.at("phi").get<double>();
    params.theta_mix = doc.at("vartheta").get<double>();
    params.theta_a = doc.at("theta_a").get<double>();
    params.theta_b = doc.at("theta_b").get<double>();
    return params;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("unitary parameters: ") +
                                e.what());
  }
}

}  // namespace qent
