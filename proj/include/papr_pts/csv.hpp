#pragma once

#include "papr_pts/harness.hpp"

#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace papr {

// Every file starts with
//   # papr-pts v1
//   # config: <canonical flag string>
//   <header>
// followed by one row per entry; all lines end in '\n'.

/// Fixed six-decimal rendering used for every floating-point field.
std::string format_fixed6(double value);

void write_ccdf_csv(std::ostream& out, std::string_view config, const CcdfCurve& curve);
void write_compare_csv(std::ostream& out, std::string_view config, std::span<const ComparisonRow> rows);
void write_convergence_csv(std::ostream& out, std::string_view config, const ConvergenceStat& stat);
void write_oracle_csv(std::ostream& out, std::string_view config, const OracleReport& report);

} // namespace papr
