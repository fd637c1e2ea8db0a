#include <bandedge/error.hpp>
#include <bandedge/parallel.hpp>

#include <CLI11.hpp>

#include <iostream>

#include "cli/config.hpp"
#include "cli/jobs.hpp"

namespace {

constexpr int kConfigFailure = 2;
constexpr int kNumericalFailure = 3;

int config_failure(const std::exception& e) {
  std::cerr << "bandedge: configuration error: " << e.what() << "\n";
  return kConfigFailure;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bandedge;
  using namespace bandedge::cli;

  CLI::App app{"bandedge: band edges of periodic second-order operators on 2D lattices"};
  std::string config_path, out_path, format_name, job_name;
  unsigned workers = default_workers();
  app.add_option("-c,--config", config_path, "JSON job configuration")->check(CLI::ExistingFile);
  app.add_option("-o,--out", out_path, "output path (overrides output.path)");
  app.add_option("-f,--format", format_name, "csv or json (overrides output.format)");
  app.add_option("-j,--job", job_name, "bands, extrema, t1scan, discriminant, discrete or selfcheck");
  app.add_option("-w,--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigFailure;
  }

  JobConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (!job_name.empty()) config.job = parse_job_kind(job_name);
    if (!format_name.empty()) config.format = parse_format(format_name);
    if (!out_path.empty()) config.out_path = out_path;
    if (config.job != JobKind::Discrete && config.job != JobKind::SelfCheck) build_coefficients(config);
  } catch (const std::exception& e) {
    return config_failure(e);
  }

  JobResult result;
  try {
    result = run(config, workers);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::IOFailure) return config_failure(e);
    std::cerr << "bandedge: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }

  try {
    const std::vector<std::string> written = emit(result, config.format, config.out_path);
    std::ostream& log = config.out_path.empty() ? std::cerr : std::cout;
    for (const std::string& line : result.summary) log << line << "\n";
    for (const std::string& path : written) log << "wrote " << path << "\n";
  } catch (const Error& e) {
    return config_failure(e);
  }
  return result.exit_code;
}
