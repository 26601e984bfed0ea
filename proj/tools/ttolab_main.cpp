#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ttolab/blaschke.hpp"
#include "ttolab/isodecider.hpp"
#include "ttolab/json_io.hpp"
#include "ttolab/verify.hpp"

namespace {

using ttolab::Json;

std::string read_text_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw std::invalid_argument("cannot open input file: " + path);
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("parse error: ") + e.what());
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  stream << content;
}

struct DescribeConfig {
  std::string input;
  std::string output;
  std::string format = "json";
};

struct DecideConfig {
  std::string input;
  std::string output;
  std::string format = "json";
  double tol_accept = 0.0;
  double tol_reject = 0.0;
  int grid = 0;
};

struct VerifyConfig {
  std::string input;
  std::string output;
  std::string format = "text";
  std::uint64_t seed = 12345;
  int quadrature = 0;
  int max_degree = 8;
};

// The describe input is either a bare inner function object or
// {"theta": ..., "clark_parameters": [...]} with unimodular parameters; the
// default Clark parameter is 1.
int run_describe(const DescribeConfig& config) {
  const Json input = parse_json(read_text_file(config.input));
  Json theta_json = input;
  std::vector<ttolab::UnimodularConstant> parameters;
  if (input.is_object() && input.contains("theta")) {
    theta_json = input.at("theta");
    if (input.contains("clark_parameters")) {
      const Json& list = input.at("clark_parameters");
      if (!list.is_array()) {
        throw std::invalid_argument("clark_parameters: expected an array");
      }
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string field = "clark_parameters[" + std::to_string(k) + "]";
        const ttolab::ExtendedParameter a =
            ttolab::parameter_from_json(list[k], field);
        if (!a.on_circle()) {
          throw std::invalid_argument(field +
                                      ": parameter must lie on the unit circle");
        }
        parameters.emplace_back(a.value());
      }
    }
  }
  if (parameters.empty()) {
    parameters.emplace_back(ttolab::Complex(1.0, 0.0));
  }

  const ttolab::FiniteBlaschkeProduct theta =
      ttolab::blaschke_from_json(theta_json);

  if (config.format == "csv") {
    std::string out;
    for (std::size_t k = 0; k < parameters.size(); ++k) {
      if (k > 0) out += "\n";
      out += ttolab::clark_to_csv(ttolab::clark_measure(theta, parameters[k]));
    }
    write_output(config.output, out);
    return 0;
  }

  Json report;
  report["degree"] = theta.degree();
  report["gamma"] = ttolab::complex_to_json(theta.gamma().value());
  Json zeros = Json::array();
  for (const ttolab::DiskPoint& z : theta.zeros()) {
    zeros.push_back(ttolab::complex_to_json(z.value()));
  }
  report["zeros"] = std::move(zeros);

  Json rotations = Json::array();
  for (const ttolab::RotationalSymmetry& s : ttolab::rotational_symmetry(theta)) {
    Json entry;
    entry["u"] = ttolab::complex_to_json(s.u.value());
    entry["v"] = ttolab::complex_to_json(s.v.value());
    rotations.push_back(std::move(entry));
  }
  Json symmetries;
  symmetries["rotations"] = std::move(rotations);
  const auto same_argument = ttolab::same_argument_zeros(theta);
  symmetries["same_argument_rotation"] =
      same_argument ? ttolab::complex_to_json(same_argument->value())
                    : Json(nullptr);
  report["symmetries"] = std::move(symmetries);

  Json clark = Json::array();
  for (const ttolab::UnimodularConstant& a : parameters) {
    const ttolab::ClarkMeasure measure = ttolab::clark_measure(theta, a);
    const ttolab::KappaInvariant invariant = ttolab::kappa(measure);
    Json entry = ttolab::clark_to_json(measure);
    Json kappa_json;
    kappa_json["atom_count"] = invariant.atom_count;
    kappa_json["continuous_components"] = invariant.continuous_components;
    entry["kappa"] = std::move(kappa_json);
    entry["total_mass"] = measure.total_mass();
    clark.push_back(std::move(entry));
  }
  report["clark"] = std::move(clark);

  write_output(config.output, ttolab::dump_json(report));
  return 0;
}

int run_decide(const DecideConfig& config) {
  if (config.format != "json") {
    throw std::invalid_argument("decide output supports only json format");
  }
  const ttolab::IsoQuery query =
      ttolab::query_from_json(parse_json(read_text_file(config.input)));
  ttolab::DeciderOptions options;
  if (config.tol_accept > 0.0) options.tol_accept = config.tol_accept;
  if (config.tol_reject > 0.0) options.tol_reject = config.tol_reject;
  if (config.grid > 0) options.grid_angles = config.grid;

  const ttolab::IsoDecision decision = ttolab::decide(query, options);
  write_output(config.output, ttolab::dump_json(decision_to_json(decision)));
  switch (decision.verdict) {
    case ttolab::IsoDecision::Verdict::Equivalent:
      return 0;
    case ttolab::IsoDecision::Verdict::NotEquivalent:
      return 1;
    case ttolab::IsoDecision::Verdict::Undetermined:
      return 2;
  }
  return 2;
}

int run_verify(const VerifyConfig& config) {
  if (config.format != "text" && config.format != "json") {
    throw std::invalid_argument("verify output supports only text or json format");
  }
  const ttolab::FiniteBlaschkeProduct theta =
      ttolab::blaschke_from_json(parse_json(read_text_file(config.input)));
  const ttolab::VerifyReport report = ttolab::run_verify(
      theta, config.seed, config.quadrature, config.max_degree);
  if (config.format == "json") {
    write_output(config.output, ttolab::dump_json(ttolab::report_to_json(report)));
  } else {
    write_output(config.output, ttolab::format_report(report));
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model spaces, truncated Toeplitz operators, and their algebras"};
  app.require_subcommand(1);

  DescribeConfig describe_config;
  CLI::App* describe =
      app.add_subcommand("describe", "report an inner function's invariants");
  describe->add_option("--input", describe_config.input, "inner function JSON file")
      ->required();
  describe->add_option("--output", describe_config.output,
                       "output path (default stdout)");
  describe->add_option("--format", describe_config.format,
                       "output format: json or csv (Clark atoms only)")
      ->check(CLI::IsMember({"json", "csv"}));

  DecideConfig decide_config;
  CLI::App* decide =
      app.add_subcommand("decide", "decide spatial isomorphism of two algebras");
  decide->add_option("--input", decide_config.input, "query JSON file")
      ->required();
  decide->add_option("--output", decide_config.output,
                     "output path (default stdout)");
  decide->add_option("--format", decide_config.format, "output format: json")
      ->check(CLI::IsMember({"json"}));
  decide->add_option("--tol-accept", decide_config.tol_accept,
                     "residual below which a witness is accepted");
  decide->add_option("--tol-reject", decide_config.tol_reject,
                     "residual above which a search start is hopeless");
  decide->add_option("--grid", decide_config.grid,
                     "multistart grid angle count");

  VerifyConfig verify_config;
  CLI::App* verify =
      app.add_subcommand("verify", "run the invariant suite on an inner function");
  verify->add_option("--input", verify_config.input, "inner function JSON file")
      ->required();
  verify->add_option("--output", verify_config.output,
                     "output path (default stdout)");
  verify->add_option("--format", verify_config.format,
                     "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--seed", verify_config.seed,
                     "seed for the randomized checks")
      ->envname("TTOLAB_SEED");
  verify->add_option("--quadrature", verify_config.quadrature,
                     "quadrature size override (0 chooses automatically)");
  verify->add_option("--max-degree", verify_config.max_degree,
                     "largest degree the suite accepts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (describe->parsed()) return run_describe(describe_config);
    if (decide->parsed()) return run_decide(decide_config);
    if (verify->parsed()) return run_verify(verify_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
