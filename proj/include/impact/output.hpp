#pragma once

// Machine-readable rows for the CLI. Column order (CSV) and field names
// (JSON) are frozen; see kColumns. Computed reals are rounded to 6
// significant digits in both formats. Input angles are written in shortest
// round-trip form. Undefined quantities are empty cells in CSV and null in
// JSON.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "impact/montecarlo.hpp"

namespace impact {

enum class OutputFormat : std::uint8_t { CSV, JSON };

inline constexpr std::array<std::string_view, 24> kColumns = {
    "label",          "model",          "ordering",        "subensemble",
    "alpha",          "beta",           "gamma",           "seed",
    "events",         "accepted",       "rejected",        "r_pp",
    "r_pm",           "r_mp",           "r_mm",            "acceptance_rate",
    "side1_plus",     "side2_plus",     "side1_plus_mc",   "side2_plus_mc",
    "E",              "E_std_error",    "E_analytic_qm",   "E_analytic_causal"};

struct OutputRow {
  std::string label;
  TheoryModel model;
  Subensemble subensemble = Subensemble::Long;
  PhaseSettings phases;
  std::uint64_t seed = 0;
  std::uint64_t events = 0;
  std::optional<CoincidenceTally> tally;
  std::optional<double> side1_plus;  // analytic
  std::optional<double> side2_plus;  // analytic
  std::optional<EstimateE> estimate;
};

/// Fills the analytic singles from predict() and, when a tally is given,
/// the Monte Carlo columns.
OutputRow make_row(std::string label, const TheoryModel& model, Subensemble sub,
                   const PhaseSettings& phases, std::uint64_t seed, std::uint64_t events,
                   const std::optional<CoincidenceTally>& tally);

/// "%.6g" formatting.
std::string format_real(double v);

void write_rows(std::ostream& os, const std::vector<OutputRow>& rows, OutputFormat format);

}  // namespace impact
