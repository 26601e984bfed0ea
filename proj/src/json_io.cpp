#include "ttolab/json_io.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ttolab {

namespace {

const Json& require_field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw std::invalid_argument(std::string(name) + ": missing field");
  }
  return j.at(name);
}

FiniteBlaschkeProduct theta_field(const Json& j, const char* name) {
  const Json& sub = require_field(j, name);
  try {
    return blaschke_from_json(sub);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + "." + e.what());
  }
}

}  // namespace

Json complex_to_json(Complex value) {
  return Json::array({value.real(), value.imag()});
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw std::invalid_argument(field + ": expected a [re, im] pair");
  }
  const Complex value(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw std::invalid_argument(field + ": entries must be finite");
  }
  return value;
}

Json blaschke_to_json(const FiniteBlaschkeProduct& theta) {
  Json zeros = Json::array();
  for (const DiskPoint& z : theta.zeros()) {
    zeros.push_back(complex_to_json(z.value()));
  }
  Json j;
  j["gamma"] = complex_to_json(theta.gamma().value());
  j["zeros"] = std::move(zeros);
  return j;
}

FiniteBlaschkeProduct blaschke_from_json(const Json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("blaschke: expected an object");
  }
  const Json& zeros_json = require_field(j, "zeros");
  if (!zeros_json.is_array()) {
    throw std::invalid_argument("zeros: expected an array");
  }
  if (zeros_json.empty()) {
    throw std::invalid_argument("zeros: at least one zero is required");
  }
  std::vector<DiskPoint> zeros;
  zeros.reserve(zeros_json.size());
  for (std::size_t k = 0; k < zeros_json.size(); ++k) {
    const std::string field = "zeros[" + std::to_string(k) + "]";
    const Complex z = complex_from_json(zeros_json[k], field);
    try {
      zeros.emplace_back(z);
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(field + ": " + e.what());
    }
  }
  UnimodularConstant gamma;
  if (j.contains("gamma")) {
    const Complex g = complex_from_json(j.at("gamma"), "gamma");
    try {
      gamma = UnimodularConstant(g);
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(std::string("gamma: ") + e.what());
    }
  }
  return FiniteBlaschkeProduct(std::move(gamma), std::move(zeros));
}

Json parameter_to_json(const ExtendedParameter& a) {
  if (a.is_infinite()) return Json("infinity");
  return complex_to_json(a.value());
}

ExtendedParameter parameter_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "infinity") {
      return ExtendedParameter::infinity();
    }
    throw std::invalid_argument(field + ": unknown symbolic value \"" +
                                j.get<std::string>() +
                                "\" (use \"infinity\")");
  }
  return ExtendedParameter::classify(complex_from_json(j, field));
}

Json query_to_json(const IsoQuery& query) {
  Json j;
  j["theta1"] = blaschke_to_json(query.theta1);
  j["a1"] = parameter_to_json(query.a1);
  j["theta2"] = blaschke_to_json(query.theta2);
  j["a2"] = parameter_to_json(query.a2);
  return j;
}

IsoQuery query_from_json(const Json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("query: expected an object");
  }
  IsoQuery query{theta_field(j, "theta1"),
                 parameter_from_json(require_field(j, "a1"), "a1"),
                 theta_field(j, "theta2"),
                 parameter_from_json(require_field(j, "a2"), "a2")};
  return query;
}

Json decision_to_json(const IsoDecision& decision) {
  Json j;
  switch (decision.verdict) {
    case IsoDecision::Verdict::Equivalent:
      j["verdict"] = "equivalent";
      break;
    case IsoDecision::Verdict::NotEquivalent:
      j["verdict"] = "not-equivalent";
      break;
    case IsoDecision::Verdict::Undetermined:
      j["verdict"] = "undetermined";
      break;
  }
  j["reason"] = decision.reason;
  j["best_residual"] = decision.best_residual;
  j["starts_used"] = decision.starts_used;
  if (decision.witness) {
    Json psi;
    psi["lambda"] = complex_to_json(decision.witness->psi.lambda().value());
    psi["c"] = complex_to_json(decision.witness->psi.c().value());
    Json w;
    w["zeta"] = complex_to_json(decision.witness->zeta.value());
    w["psi"] = std::move(psi);
    w["residual"] = decision.witness->residual;
    w["sharp1"] = decision.witness->sharp1;
    w["sharp2"] = decision.witness->sharp2;
    j["witness"] = std::move(w);
  }
  return j;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(complex_to_json(m(r, c)));
    }
  }
  Json j;
  j["rows"] = static_cast<int>(m.rows());
  j["cols"] = static_cast<int>(m.cols());
  j["entries"] = std::move(entries);
  return j;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("matrix: expected an object");
  }
  const Json& rows_json = require_field(j, "rows");
  const Json& cols_json = require_field(j, "cols");
  if (!rows_json.is_number_integer() || !cols_json.is_number_integer()) {
    throw std::invalid_argument("rows/cols: expected integers");
  }
  const int rows = rows_json.get<int>();
  const int cols = cols_json.get<int>();
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("rows/cols: must be positive");
  }
  const Json& entries = require_field(j, "entries");
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("entries: expected rows * cols pairs");
  }
  Eigen::MatrixXcd m(rows, cols);
  std::size_t k = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c, ++k) {
      m(r, c) = complex_from_json(entries[k],
                                  "entries[" + std::to_string(k) + "]");
    }
  }
  return m;
}

std::string clark_to_csv(const ClarkMeasure& measure) {
  std::string out = "location_re,location_im,weight\n";
  for (const ClarkMeasure::Atom& atom : measure.atoms) {
    out += Json(atom.location.real()).dump();
    out += ',';
    out += Json(atom.location.imag()).dump();
    out += ',';
    out += Json(atom.weight).dump();
    out += '\n';
  }
  return out;
}

Json clark_to_json(const ClarkMeasure& measure) {
  Json atoms = Json::array();
  for (const ClarkMeasure::Atom& atom : measure.atoms) {
    Json entry;
    entry["location"] = complex_to_json(atom.location);
    entry["weight"] = atom.weight;
    atoms.push_back(std::move(entry));
  }
  Json j;
  j["parameter"] = complex_to_json(measure.parameter.value());
  j["atoms"] = std::move(atoms);
  return j;
}

Json report_to_json(const VerifyReport& report) {
  Json checks = Json::array();
  for (const VerifyCheck& check : report.checks) {
    Json c;
    c["name"] = check.name;
    c["residual"] = check.residual;
    c["tolerance"] = check.tolerance;
    c["passed"] = check.passed;
    checks.push_back(std::move(c));
  }
  Json j;
  j["degree"] = report.degree;
  j["seed"] = report.seed;
  j["checks"] = std::move(checks);
  j["passed"] = report.all_passed();
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ttolab
