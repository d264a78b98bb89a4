#include "papr_pts/csv.hpp"

#include <cstdio>

namespace papr {

namespace {

void write_preamble(std::ostream& out, std::string_view config, std::string_view header)
{
    out << "# papr-pts v1\n"
        << "# config: " << config << '\n'
        << header << '\n';
}

} // namespace

std::string format_fixed6(double value)
{
    char buffer[64];
    const int len = std::snprintf(buffer, sizeof buffer, "%.6f", value);
    std::string text(buffer, static_cast<std::size_t>(len));
    if (text == "-0.000000") {
        text.erase(0, 1);
    }
    return text;
}

void write_ccdf_csv(std::ostream& out, std::string_view config, const CcdfCurve& curve)
{
    write_preamble(out, config, "threshold_db,ccdf");
    for (std::size_t i = 0; i < curve.thresholds_db.size(); ++i) {
        out << format_fixed6(curve.thresholds_db[i]) << ',' << format_fixed6(curve.probabilities[i]) << '\n';
    }
}

void write_compare_csv(std::ostream& out, std::string_view config, std::span<const ComparisonRow> rows)
{
    write_preamble(out, config, "optimizer,evaluations,papr_db");
    for (const auto& row : rows) {
        out << row.optimizer << ',' << format_fixed6(row.evaluations) << ',' << format_fixed6(row.papr_db) << '\n';
    }
}

void write_convergence_csv(std::ostream& out, std::string_view config, const ConvergenceStat& stat)
{
    write_preamble(out, config, "iteration,mean_best_papr_db");
    for (std::size_t t = 0; t < stat.mean_best_db.size(); ++t) {
        out << (t + 1) << ',' << format_fixed6(stat.mean_best_db[t]) << '\n';
    }
}

void write_oracle_csv(std::ostream& out, std::string_view config, const OracleReport& report)
{
    write_preamble(out, config, "seed,optimum_db,exhaustive_db,passed");
    for (const auto& e : report.entries) {
        out << e.seed << ',' << format_fixed6(papr_db(e.optimum)) << ',' << format_fixed6(papr_db(e.exhaustive))
            << ',' << (e.passed() ? 1 : 0) << '\n';
    }
}

} // namespace papr
