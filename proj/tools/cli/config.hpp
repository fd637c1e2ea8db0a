#pragma once

#include <bandedge/bands.hpp>
#include <bandedge/coefficients.hpp>
#include <bandedge/discrete.hpp>
#include <bandedge/linearization.hpp>

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bandedge::cli {

enum class JobKind { Bands, Extrema, T1Scan, Discriminant, Discrete, SelfCheck };
enum class Format { Csv, Json };

const char* to_string(JobKind kind);
const char* to_string(Format format);
/// Throws ConfigError on an unknown name.
JobKind parse_job_kind(std::string_view name);
Format parse_format(std::string_view name);

/// One Fourier coefficient (m1, m2, re, im).
struct Term {
  int m1 = 0;
  int m2 = 0;
  double re = 0.0;
  double im = 0.0;
};

struct DiscreteJob {
  DiatomicModel model{0.0, 2.0};
  /// Points per axis of the band surface over [-pi, pi]^2 (inclusive).
  int surface_resolution = 65;
  int adapter_resolution = 200;
  std::vector<int> torus_sizes{2, 4, 8, 16};
  double level_eps = 1e-9;
};

struct JobConfig {
  JobKind job = JobKind::Bands;

  Vec2 b1 = Vec2(1.0, 0.0);
  Vec2 b2 = Vec2(0.0, 1.0);
  std::vector<Term> V;
  std::vector<Term> A1;
  std::vector<Term> A2;
  std::vector<Term> omega{{0, 0, 1.0, 0.0}};

  int truncation = 4;
  int n1 = 16;
  int n2 = 16;
  int band_count = 3;

  // extrema
  int band = 1;
  ExtremumKind kind = ExtremumKind::Min;
  double eps = 1e-3;
  ExtremumOptions extremum;

  // t1scan and discriminant
  Complex lambda = 0.0;
  std::vector<double> k2{0.0};
  ScanPolicy scan;

  DiscreteJob discrete;

  std::string out_path;
  Format format = Format::Csv;
};

/// Strict schema: every section is optional, unknown keys are rejected.
/// Throws Error(ConfigError).
JobConfig parse_config(const nlohmann::json& doc);
JobConfig load_config(const std::string& path);

/// Lattice and coefficients from the config, validated (m_g certified).
CoefficientSet build_coefficients(const JobConfig& config);

}  // namespace bandedge::cli
