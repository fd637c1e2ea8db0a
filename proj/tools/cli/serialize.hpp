#pragma once

#include <bandedge/bands.hpp>
#include <bandedge/linearization.hpp>

#include <ostream>
#include <string>

#include <json.hpp>

namespace bandedge::cli {

using Json = nlohmann::ordered_json;

/// Doubles print with 17 significant digits; non-finite values become the
/// strings "NaN", "Infinity" and "-Infinity".
void write_json(std::ostream& out, const Json& value, int indent = 2);
std::string format_double(double v);

Json number(double v);
double number_of(const Json& j);
Json complex_json(Complex z);
Complex complex_of(const Json& j);

Json to_json(const BandGrid& grid);
BandGrid band_grid_of(const Json& j);

Json to_json(const ExtremumReport& report);
ExtremumReport extremum_report_of(const Json& j);

Json to_json(const DiscriminantScan& scan);
DiscriminantScan discriminant_scan_of(const Json& j);

}  // namespace bandedge::cli
