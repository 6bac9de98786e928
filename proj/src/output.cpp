#include "impact/output.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <variant>

#include "json.hpp"

namespace impact {

namespace {

// Input angle, printed in shortest round-trip form.
struct ExactReal {
  double v;
};

// One cell: text, integer, rounded real, exact real, or undefined.
using Cell = std::variant<std::monostate, std::string, std::uint64_t, double, ExactReal>;

std::vector<Cell> cells(const OutputRow& row) {
  auto real = [](std::optional<double> v) -> Cell {
    if (!v) return std::monostate{};
    return std::strtod(format_real(*v).c_str(), nullptr);
  };
  auto count = [&](auto get) -> Cell {
    if (!row.tally) return std::monostate{};
    return static_cast<std::uint64_t>(get(*row.tally));
  };

  std::optional<double> rate, s1mc, s2mc;
  if (row.tally && row.tally->events() > 0) {
    rate = static_cast<double>(row.tally->accepted) / static_cast<double>(row.tally->events());
  }
  if (row.tally && row.tally->accepted > 0) {
    s1mc = tally_side1(*row.tally).p_plus;
    s2mc = tally_side2(*row.tally).p_plus;
  }
  const auto& e = row.estimate;

  return {row.label,
          to_string(row.model.kind),
          to_string(row.model.ordering),
          to_string(row.subensemble),
          ExactReal{row.phases.alpha},
          ExactReal{row.phases.beta},
          ExactReal{row.phases.gamma},
          row.seed,
          row.events,
          count([](const CoincidenceTally& t) { return t.accepted; }),
          count([](const CoincidenceTally& t) { return t.rejected; }),
          count([](const CoincidenceTally& t) { return t.r[0]; }),
          count([](const CoincidenceTally& t) { return t.r[1]; }),
          count([](const CoincidenceTally& t) { return t.r[2]; }),
          count([](const CoincidenceTally& t) { return t.r[3]; }),
          real(rate),
          real(row.side1_plus),
          real(row.side2_plus),
          real(s1mc),
          real(s2mc),
          real(e ? std::optional(e->value) : std::nullopt),
          real(e ? std::optional(e->std_error) : std::nullopt),
          real(e ? std::optional(e->analytic_qm) : std::nullopt),
          real(e ? std::optional(e->analytic_causal) : std::nullopt)};
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(ExactReal v) const { return fmt::format("{}", v.v); }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(ExactReal v) const { return v.v; }
  } visit;
  return std::visit(visit, c);
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.6g}", v); }

OutputRow make_row(std::string label, const TheoryModel& model, Subensemble sub,
                   const PhaseSettings& phases, std::uint64_t seed, std::uint64_t events,
                   const std::optional<CoincidenceTally>& tally) {
  OutputRow row;
  row.label = std::move(label);
  row.model = model;
  row.subensemble = sub;
  row.phases = phases;
  row.seed = seed;
  row.events = events;
  row.tally = tally;

  const Prediction pred =
      predict(model, phases, model.kind == TheoryKind::QM ? sub : Subensemble::Long);
  if (pred.side1) row.side1_plus = pred.side1->p_plus;
  if (pred.side2) row.side2_plus = pred.side2->p_plus;
  if (tally && tally->accepted > 0) row.estimate = estimate_E(*tally, model, phases);
  return row;
}

void write_rows(std::ostream& os, const std::vector<OutputRow>& rows, OutputFormat format) {
  if (format == OutputFormat::CSV) {
    for (std::size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
    os << "\n";
    for (const auto& row : rows) {
      const auto cs = cells(row);
      for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << csv_cell(cs[i]);
      os << "\n";
    }
    return;
  }

  nlohmann::ordered_json doc;
  doc["columns"] = kColumns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    const auto cs = cells(row);
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < cs.size(); ++i) obj[std::string(kColumns[i])] = json_cell(cs[i]);
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << "\n";
}

}  // namespace impact
