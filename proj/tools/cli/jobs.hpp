#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cli/config.hpp"
#include "cli/serialize.hpp"

namespace bandedge::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

/// One CSV table. Comment lines and the column list are written with a
/// leading '#'.
struct Table {
  std::string name;
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct JobResult {
  JobKind job = JobKind::Bands;
  /// The first table is the primary artifact.
  std::vector<Table> tables;
  Json document;
  /// Human-readable lines for stdout.
  std::vector<std::string> summary;
  int exit_code = 0;
};

/// Runs the job. Numerical failures propagate as bandedge::Error.
JobResult run(const JobConfig& config, unsigned workers);

/// CSV: the first table goes to `path`, every other table to
/// `<path without extension>.<table name>.csv`. JSON: one document at `path`.
/// Returns the written paths. Throws Error(IOFailure).
std::vector<std::string> emit(const JobResult& result, Format format, const std::string& path);

std::string format_cell(const Cell& cell);

}  // namespace bandedge::cli
