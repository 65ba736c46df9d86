#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radsolve/potentials.hpp"
#include "radsolve/wavefunctions.hpp"

namespace radsolve {

inline constexpr const char* kVersion = "1.0.0";

/// One line of a comparison table. method_secondary holds the second root
/// E^(2) for the well table and the self-consistent solve for hydrogen.
struct ComparisonRow {
  std::string state;
  double oracle = 0.0;
  double method_primary = 0.0;
  std::optional<double> method_secondary;
  double abs_dev = 0.0;
  double rel_dev = 0.0;

  static ComparisonRow make(std::string state, double oracle, double primary,
                            std::optional<double> secondary = std::nullopt);
};

enum class TableId { part2_table1, part2_table2, part2_table3, hydrogen };

TableId parse_table_id(const std::string& name);
std::string table_name(TableId id);

struct Table {
  TableId id;
  std::string title;
  /// Units each table is expressed in.
  UnitSystem units;
  std::string energy_unit;
  /// Conventions the rows are bound to (indexing, phase constant).
  std::vector<std::string> notes;
  std::vector<ComparisonRow> rows;
};

/// Rows are computed concurrently; order is fixed by the table definition.
/// `units` replaces the table's own unit system (raw energies are reported).
Table reproduce_table(TableId id,
                      const std::optional<UnitSystem>& units = std::nullopt);

enum class Format { text, csv, json };

Format parse_format(const std::string& name);

/// Ordered key=value pairs echoed into JSON meta.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(const std::string& s);

std::string render_rows(const std::vector<ComparisonRow>& rows, Format format,
                        const std::string& units_label = "natural",
                        const ConfigEcho& config = {});
std::string render_table(const Table& table, Format format,
                         const ConfigEcho& config = {});
std::vector<ComparisonRow> parse_rows_json(const std::string& text);

std::string render_samples(const std::vector<WaveSample>& samples,
                           Format format,
                           const std::string& units_label = "natural",
                           const ConfigEcho& config = {});
std::vector<WaveSample> parse_samples_csv(const std::string& text);

/// Parses `name:key=value,...`. Names: hydrogen (Z, e), well (L), ho (omega),
/// hoso (omega, j, s, c0, mode), parabolic (a, b, c), free. Unknown names and
/// keys throw DomainError.
PotentialSpec parse_potential(const std::string& text, const UnitSystem& units);

/// Writes `content` to `path`, or stdout for "-" / empty. Throws Error on
/// failure.
void write_output(const std::string& path, const std::string& content);

}  // namespace radsolve
