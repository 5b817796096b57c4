#pragma once
// Machine-readable forms of sweep reports and Gram matrices.
//
// Sweep CSV columns, in order: m,rho,density,lo,hi,reference,remainder.
// Numbers are printed with %.17g so files round-trip and compare byte-wise.
// Gram JSON: {"dim": n, "entries": [[re, im], ...], "budgets": [...]},
// both arrays row-major.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bergman/density_expansion.hpp"
#include "bergman/gram_schur.hpp"

namespace bergman {

std::string format_number(double x);

inline constexpr const char* sweep_csv_header = "m,rho,density,lo,hi,reference,remainder";

void write_sweep_csv_header(std::ostream& os);
void write_report_csv_row(std::ostream& os, const DensityReport<double>& r);
void write_sweep_csv(std::ostream& os, const SweepResult<double>& s);
// Row appended when a sweep aborts; the file keeps the rows already written.
void write_failure_row(std::ostream& os, long m, const std::string& reason);

nlohmann::json to_json(const DensityReport<double>& r);
nlohmann::json to_json(const SweepResult<double>& s);

nlohmann::json gram_to_json(const BorderedGram<double>& G);
BorderedGram<double> gram_from_json(const nlohmann::json& j);

} // namespace bergman
