#include "radsolve/report.hpp"

#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "radsolve/errors.hpp"
#include "radsolve/oracles.hpp"
#include "radsolve/spectrum.hpp"

namespace radsolve {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSpd = "spdfghi";

std::string state_label(int n, int l) {
  return std::to_string(n) + kSpd[l];
}

std::string fraction(double x) {
  const int twice = static_cast<int>(std::lround(2.0 * x));
  return twice % 2 == 0 ? std::to_string(twice / 2)
                        : std::to_string(twice) + "/2";
}

// Runs each job on its own slot; the first exception (by index) is rethrown
// after the parallel region.
std::vector<ComparisonRow> run_rows(
    const std::vector<std::function<ComparisonRow()>>& jobs) {
  std::vector<ComparisonRow> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      rows[i] = jobs[i]();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

Table well_table(const UnitSystem& units) {
  Table t{TableId::part2_table1,
          "Infinite spherical well (L = 1)",
          units,
          units.label == "well" ? "hbar^2/2mL^2" : "raw",
          {"oracle: (hbar^2/2mL^2) beta_nl^2 with beta_nl the n-th zero of j_l",
           "method: E^(1,2) = (hbar^2/2mL^2)(sqrt(l(l+1)) +/- n pi)^2"},
          {}};
  const int states[][2] = {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}};
  std::vector<std::function<ComparisonRow()>> jobs;
  for (const auto& s : states) {
    const int n = s[0];
    const int l = s[1];
    jobs.emplace_back([=] {
      const auto oracle = oracles::well_oracle_energy(1.0, l, n, units);
      const auto [e1, e2] =
          well_energies(1.0, l, EnergyBranch::general(n), units);
      return ComparisonRow::make(state_label(n, l), oracle.value, e1, e2);
    });
  }
  t.rows = run_rows(jobs);
  return t;
}

Table ho_table(const UnitSystem& units) {
  Table t{TableId::part2_table2,
          "Isotropic harmonic oscillator (omega = 1)",
          units,
          units.label == "natural" ? "hbar omega" : "raw",
          {"oracle: (2n + l + 3/2) hbar omega with n = N (counted from 1)",
           "method: (1/2) hbar omega [sqrt(l(l+1)) + sqrt(l(l+1) + N^2 pi^2)]"},
          {}};
  const int states[][2] = {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}};
  std::vector<std::function<ComparisonRow()>> jobs;
  for (const auto& s : states) {
    const int N = s[0];
    const int l = s[1];
    jobs.emplace_back([=] {
      const auto oracle = oracles::ho_oracle_energy(
          N, l, 1.0, units, oracles::Indexing::from_one);
      const double method = ho_energies(
          1.0, l, gn::oscillator(EnergyBranch::general(N)), units);
      return ComparisonRow::make(state_label(N, l), oracle.value, method);
    });
  }
  t.rows = run_rows(jobs);
  return t;
}

Table ho_so_table(const UnitSystem& units) {
  Table t{TableId::part2_table3,
          "Isotropic harmonic oscillator with spin-orbit coupling "
          "(omega = 1, s = 1/2, c0 = 0.015 hbar omega)",
          units,
          units.label == "natural" ? "hbar omega" : "raw",
          {"oracle: (2n + l + 3/2) hbar omega - C_j hbar omega with n = N - 1 "
           "(counted from 0)",
           "method: (1/2) hbar omega [sqrt(l(l+1)) - C_j + "
           "sqrt((sqrt(l(l+1)) - C_j)^2 + pi^2)], phase constant pi, n = 1"},
          {}};
  struct State {
    int N;
    int l;
    double j;
  };
  const State states[] = {
      {1, 2, 2.5}, {1, 3, 2.5}, {1, 3, 3.5}, {1, 4, 3.5}, {1, 4, 4.5}};
  std::vector<std::function<ComparisonRow()>> jobs;
  for (const auto& s : states) {
    jobs.emplace_back([=] {
      const double omega = 1.0;
      const double c0 = 0.015 * units.hbar * omega;
      const auto oracle = oracles::ho_so_oracle_energy(
          s.N - 1, s.l, s.j, 0.5, c0, omega, units,
          oracles::Indexing::from_zero);
      const double method = ho_spin_orbit_energies(
          omega, s.l, s.j, 0.5, c0, gn::spin_orbit(EnergyBranch::general(s.N)),
          units);
      return ComparisonRow::make(state_label(s.N, s.l) + "_" + fraction(s.j),
                                 oracle.value, method);
    });
  }
  t.rows = run_rows(jobs);
  return t;
}

Table hydrogen_table(const UnitSystem& units) {
  const bool ev = units.label == "ev-nm";
  const double e = ev ? std::sqrt(kCoulombEvNm) : 1.0;
  Table t{TableId::hydrogen,
          "Hydrogen ground state (Z = 1, l = 0)",
          units,
          ev ? "eV" : "raw",
          {"oracle: Bohr level -(m e^4 / 2 hbar^2) Z^2 / n^2, n = 1",
           "method: -(m e^4 / 2 hbar^2) Z^2 / (1 + l(l+1)); secondary: signed "
           "self-consistent solve of E = -2 hbar^2 / (m d(E)^2)"},
          {}};
  std::vector<std::function<ComparisonRow()>> jobs;
  jobs.emplace_back([=] {
    const auto oracle = oracles::bohr_energy(1, 1, units, e);
    const double closed = hydrogen_ground_energy(1, 0, units, e);
    const EffectivePotential U(HydrogenLike{1, e}, 0, units);
    SolveOptions opts;
    opts.signed_energy = true;
    const double solved =
        self_consistent_energy(U, EnergyBranch::ground(), opts).value;
    return ComparisonRow::make("1s", oracle.value, closed, solved);
  });
  t.rows = run_rows(jobs);
  return t;
}

void append_csv_field(std::string& out, const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::string sig6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ordered_json meta_json(const std::string& units_label,
                       const ConfigEcho& config) {
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  ordered_json meta;
  meta["version"] = kVersion;
  meta["units"] = units_label;
  meta["config"] = cfg;
  return meta;
}

ordered_json row_json(const ComparisonRow& r) {
  ordered_json j;
  j["state"] = r.state;
  j["oracle"] = r.oracle;
  j["method_primary"] = r.method_primary;
  j["method_secondary"] =
      r.method_secondary ? ordered_json(*r.method_secondary) : ordered_json();
  j["abs_dev"] = r.abs_dev;
  j["rel_dev"] = r.rel_dev;
  return j;
}

std::string rows_text(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %12s %14s %16s %12s %12s\n", "state",
                "oracle", "method_primary", "method_secondary", "abs_dev",
                "rel_dev");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %12s %14s %16s %12s %12s\n",
                  r.state.c_str(), sig6(r.oracle).c_str(),
                  sig6(r.method_primary).c_str(),
                  r.method_secondary ? sig6(*r.method_secondary).c_str() : "-",
                  sig6(r.abs_dev).c_str(), sig6(r.rel_dev).c_str());
    os << line;
  }
  return os.str();
}

std::string rows_csv(const std::vector<ComparisonRow>& rows) {
  std::string out =
      "state,oracle,method_primary,method_secondary,abs_dev,rel_dev\n";
  for (const auto& r : rows) {
    append_csv_field(out, r.state);
    out += ',' + format_double(r.oracle);
    out += ',' + format_double(r.method_primary);
    out += ',';
    if (r.method_secondary) out += format_double(*r.method_secondary);
    out += ',' + format_double(r.abs_dev);
    out += ',' + format_double(r.rel_dev);
    out += '\n';
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ComparisonRow ComparisonRow::make(std::string state, double oracle,
                                  double primary,
                                  std::optional<double> secondary) {
  ComparisonRow r;
  r.state = std::move(state);
  r.oracle = oracle;
  r.method_primary = primary;
  r.method_secondary = secondary;
  r.abs_dev = std::abs(primary - oracle);
  r.rel_dev = r.abs_dev / std::max(std::abs(oracle), 1e-30);
  return r;
}

TableId parse_table_id(const std::string& name) {
  if (name == "part2_table1") return TableId::part2_table1;
  if (name == "part2_table2") return TableId::part2_table2;
  if (name == "part2_table3") return TableId::part2_table3;
  if (name == "hydrogen") return TableId::hydrogen;
  throw DomainError("unknown table '" + name +
                    "' (expected part2_table1, part2_table2, part2_table3, "
                    "hydrogen)");
}

std::string table_name(TableId id) {
  switch (id) {
    case TableId::part2_table1:
      return "part2_table1";
    case TableId::part2_table2:
      return "part2_table2";
    case TableId::part2_table3:
      return "part2_table3";
    case TableId::hydrogen:
      return "hydrogen";
  }
  return "?";
}

Table reproduce_table(TableId id, const std::optional<UnitSystem>& units) {
  switch (id) {
    case TableId::part2_table1:
      return well_table(units.value_or(UnitSystem::reduced_well()));
    case TableId::part2_table2:
      return ho_table(units.value_or(UnitSystem::natural()));
    case TableId::part2_table3:
      return ho_so_table(units.value_or(UnitSystem::natural()));
    case TableId::hydrogen:
      return hydrogen_table(units.value_or(UnitSystem::electron_volt_nm()));
  }
  throw DomainError("unknown table");
}

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw DomainError("unknown format '" + name + "' (expected text, csv, json)");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DomainError("not a number: '" + s + "'");
  }
  return x;
}

std::string render_rows(const std::vector<ComparisonRow>& rows, Format format,
                        const std::string& units_label,
                        const ConfigEcho& config) {
  switch (format) {
    case Format::text:
      return rows_text(rows);
    case Format::csv:
      return rows_csv(rows);
    case Format::json: {
      ordered_json doc;
      doc["meta"] = meta_json(units_label, config);
      doc["rows"] = ordered_json::array();
      for (const auto& r : rows) doc["rows"].push_back(row_json(r));
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_table(const Table& table, Format format,
                         const ConfigEcho& config) {
  if (format == Format::text) {
    std::string out = table.title + "\n";
    out += "units: " + table.units.label + " (energies in " +
           table.energy_unit + ")\n";
    for (const auto& n : table.notes) out += n + "\n";
    out += "\n";
    return out + rows_text(table.rows);
  }
  if (format == Format::json) {
    ConfigEcho echo = config;
    ordered_json doc;
    doc["meta"] = meta_json(table.units.label, echo);
    doc["meta"]["table"] = table_name(table.id);
    doc["meta"]["energy_unit"] = table.energy_unit;
    doc["meta"]["notes"] = table.notes;
    doc["rows"] = ordered_json::array();
    for (const auto& r : table.rows) doc["rows"].push_back(row_json(r));
    return doc.dump(2) + "\n";
  }
  return render_rows(table.rows, format, table.units.label, config);
}

std::vector<ComparisonRow> parse_rows_json(const std::string& text) {
  std::vector<ComparisonRow> rows;
  try {
    const auto doc = ordered_json::parse(text);
    for (const auto& j : doc.at("rows")) {
      ComparisonRow r;
      r.state = j.at("state").get<std::string>();
      r.oracle = j.at("oracle").get<double>();
      r.method_primary = j.at("method_primary").get<double>();
      if (!j.at("method_secondary").is_null()) {
        r.method_secondary = j.at("method_secondary").get<double>();
      }
      r.abs_dev = j.at("abs_dev").get<double>();
      r.rel_dev = j.at("rel_dev").get<double>();
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed rows json: ") + e.what());
  }
  return rows;
}

std::string render_samples(const std::vector<WaveSample>& samples,
                           Format format, const std::string& units_label,
                           const ConfigEcho& config) {
  switch (format) {
    case Format::text: {
      std::ostringstream os;
      char line[160];
      std::snprintf(line, sizeof line, "%14s %14s %14s %s\n", "r", "re", "im",
                    "domain");
      os << line;
      for (const auto& s : samples) {
        std::snprintf(line, sizeof line, "%14s %14s %14s %s\n",
                      sig6(s.r).c_str(), sig6(s.re).c_str(),
                      sig6(s.im).c_str(), s.excluded ? "excluded" : "allowed");
        os << line;
      }
      return os.str();
    }
    case Format::csv: {
      std::string out = "r,re,im,domain\n";
      for (const auto& s : samples) {
        out += format_double(s.r) + ',' + format_double(s.re) + ',' +
               format_double(s.im) + ',' +
               (s.excluded ? "excluded" : "allowed") + '\n';
      }
      return out;
    }
    case Format::json: {
      ordered_json doc;
      doc["meta"] = meta_json(units_label, config);
      doc["samples"] = ordered_json::array();
      for (const auto& s : samples) {
        ordered_json j;
        j["r"] = s.r;
        j["re"] = s.re;
        j["im"] = s.im;
        j["domain"] = s.excluded ? "excluded" : "allowed";
        doc["samples"].push_back(j);
      }
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::vector<WaveSample> parse_samples_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "r,re,im,domain") {
    throw Error("sample csv: missing header 'r,re,im,domain'");
  }
  std::vector<WaveSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw Error("sample csv: expected 4 fields: " + line);
    if (f[3] != "allowed" && f[3] != "excluded") {
      throw Error("sample csv: bad domain '" + f[3] + "'");
    }
    out.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]),
                   f[3] == "excluded"});
  }
  return out;
}

PotentialSpec parse_potential(const std::string& text,
                              const UnitSystem& units) {
  const auto colon = text.find(':');
  const std::string name = trim(text.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos && colon + 1 < text.size()) {
    for (const auto& item : split(text.substr(colon + 1), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw DomainError("potential: expected key=value, got '" + item + "'");
      }
      const std::string key = trim(item.substr(0, eq));
      if (!kv.emplace(key, trim(item.substr(eq + 1))).second) {
        throw DomainError("potential: duplicate key '" + key + "'");
      }
    }
  }
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const char* a : keys) ok = ok || k == a;
      if (!ok) {
        throw DomainError("potential '" + name + "': unknown key '" + k + "'");
      }
    }
  };
  auto num = [&](const char* key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_double(it->second);
  };

  if (name == "hydrogen") {
    allow({"Z", "e"});
    const double z = num("Z", 1.0);
    if (z != std::floor(z) || z < 1) {
      throw DomainError("hydrogen: Z must be a positive integer");
    }
    const double e_default =
        units.label == "ev-nm" ? std::sqrt(kCoulombEvNm) : 1.0;
    return HydrogenLike{static_cast<int>(z), num("e", e_default)};
  }
  if (name == "well") {
    allow({"L"});
    const double L = num("L", 1.0);
    if (!(L > 0.0)) throw DomainError("well: L must be > 0");
    return InfiniteSphericalWell{L};
  }
  if (name == "ho") {
    allow({"omega"});
    const double w = num("omega", 1.0);
    if (!(w > 0.0)) throw DomainError("ho: omega must be > 0");
    return IsotropicHO{w};
  }
  if (name == "hoso") {
    allow({"omega", "j", "s", "c0", "mode"});
    HOSpinOrbit p;
    p.omega = num("omega", 1.0);
    if (!(p.omega > 0.0)) throw DomainError("hoso: omega must be > 0");
    p.j = num("j", 0.5);
    p.s = num("s", 0.5);
    p.c0 = num("c0", 0.0);
    const auto it = kv.find("mode");
    const std::string mode = it == kv.end() ? "fixed" : it->second;
    if (mode == "fixed") {
      p.mode = SpinOrbitMode::fixed_c0;
    } else if (mode == "relativistic") {
      p.mode = SpinOrbitMode::relativistic;
    } else if (mode == "relativistic-m2") {
      p.mode = SpinOrbitMode::relativistic_m_squared;
    } else {
      throw DomainError("hoso: mode must be fixed, relativistic or "
                        "relativistic-m2");
    }
    return p;
  }
  if (name == "parabolic") {
    allow({"a", "b", "c"});
    Parabolic p{num("a", 1.0), num("b", 1.0), num("c", 1.0)};
    if (!(p.a > 0.0)) throw DomainError("parabolic: a must be > 0");
    return p;
  }
  if (name == "free") {
    allow({});
    return FreeParticle{};
  }
  throw DomainError("unknown potential '" + name +
                    "' (expected hydrogen, well, ho, hoso, parabolic, free)");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    if (!std::cout) throw Error("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace radsolve
