// radsolve command-line interface.
#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radsolve/errors.hpp"
#include "radsolve/oracles.hpp"
#include "radsolve/quadrature.hpp"
#include "radsolve/report.hpp"
#include "radsolve/spectrum.hpp"
#include "radsolve/turning_points.hpp"
#include "radsolve/wavefunctions.hpp"

namespace {

using namespace radsolve;
using ordered_json = nlohmann::ordered_json;

// Bad option values caught after CLI11 parsing; reported like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string units = "natural";
  std::string format = "text";
  std::string out = "-";
};

void add_common(CLI::App* sub, Common& c, bool units_env = true) {
  auto* u = sub->add_option("--units", c.units,
                            "unit preset: natural, well, ev-nm")
                ->check(CLI::IsMember({"natural", "well", "ev-nm"}));
  if (units_env) u->envname("RADSOLVE_UNITS");
  sub->add_option("--format", c.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  sub->add_option("--out", c.out, "output path, '-' for stdout");
}

// Every option keeps the value given last, so command-line flags placed
// after the config-file expansion win.
void take_last(CLI::App* app) {
  for (auto* opt : app->get_options()) {
    opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  for (auto* sub : app->get_subcommands({})) take_last(sub);
}

ConfigEcho echo(const CLI::App* sub) {
  ConfigEcho cfg;
  for (const auto* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto& res = opt->results();
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(0, 1);
    cfg.emplace_back(name, res.empty() ? "" : res.back());
  }
  return cfg;
}

PotentialSpec potential_arg(const std::string& text, const UnitSystem& units) {
  try {
    return parse_potential(text, units);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--potential: ") + e.what());
  }
}

std::pair<int, int> range_arg(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("--n: expected N or A..B, got '" + text + "'");
  }
}

std::string fmt(double x) { return format_double(x); }

enum class Col { text, real, integer };
constexpr Col T = Col::text;
constexpr Col R = Col::real;
constexpr Col I = Col::integer;

std::string render_records(const std::vector<std::string>& columns,
                           const std::vector<std::vector<std::string>>& rows,
                           const std::vector<Col>& kinds, Format format,
                           const std::string& units, const ConfigEcho& cfg) {
  if (format == Format::csv) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out += (i ? "," : "") + columns[i];
    }
    out += '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
      out += '\n';
    }
    return out;
  }
  if (format == Format::json) {
    ordered_json doc;
    ordered_json c = ordered_json::object();
    for (const auto& [k, v] : cfg) c[k] = v;
    doc["meta"] = {{"version", kVersion}, {"units", units}, {"config", c}};
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].empty()) {
          j[columns[i]] = nullptr;
        } else if (kinds[i] == Col::real) {
          j[columns[i]] = parse_double(r[i]);
        } else if (kinds[i] == Col::integer) {
          j[columns[i]] = std::stoll(r[i]);
        } else {
          j[columns[i]] = r[i];
        }
      }
      doc["rows"].push_back(j);
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  auto cell = [&](const std::string& s, Col kind) {
    if (s.empty()) return std::string("-");
    if (kind != Col::real) return s;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", parse_double(s));
    return std::string(buf);
  };
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i ? " " : "") << std::setw(14) << columns[i];
  }
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? " " : "") << std::setw(14) << cell(r[i], kinds[i]);
    }
    os << '\n';
  }
  return os.str();
}

// Closed-form level matching what the self-consistent solver computes, where
// one exists.
std::optional<double> closed_form_level(const EffectivePotential& U,
                                        EnergyBranch b, bool signed_energy) {
  const UnitSystem& u = U.units();
  if (U.is<InfiniteSphericalWell>()) {
    return well_energies(U.as<InfiniteSphericalWell>().L, U.l(), b, u).first;
  }
  if (U.is<IsotropicHO>()) {
    return ho_energies(U.as<IsotropicHO>().omega, U.l(), gn::oscillator(b), u);
  }
  if (U.is<HOSpinOrbit>()) {
    const auto& p = U.as<HOSpinOrbit>();
    if (p.mode != SpinOrbitMode::fixed_c0) return std::nullopt;
    return ho_spin_orbit_energies(p.omega, U.l(), p.j, p.s, p.c0,
                                  gn::spin_orbit(b), u);
  }
  if (U.is<HydrogenLike>() && signed_energy &&
      b.kind == EnergyBranch::Kind::ground) {
    const auto& p = U.as<HydrogenLike>();
    return hydrogen_ground_energy(p.Z, U.l(), u, p.e_charge);
  }
  return std::nullopt;
}

// Inserts key=value lines of --config files right after the subcommand
// tokens, so anything on the real command line comes later and wins.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> file_args;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto b = line.find_first_not_of(" \t");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw UsageError("config: expected key=value, got '" + line + "'");
      }
      auto strip = [](std::string s) {
        const auto x = s.find_first_not_of(" \t");
        const auto y = s.find_last_not_of(" \t");
        return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
      };
      const std::string key = strip(line.substr(0, eq));
      const std::string value = strip(line.substr(eq + 1));
      if (value == "true") {
        file_args.push_back("--" + key);
      } else if (value != "false") {
        file_args.push_back("--" + key);
        file_args.push_back(value);
      }
    }
  }
  if (file_args.empty()) return rest;
  static const std::vector<std::string> top = {
      "tables", "spectrum", "turning-points", "wavefunction", "oracle"};
  static const std::vector<std::string> nested = {"bessel-zeros", "numerov",
                                                  "ho", "well"};
  std::size_t at = 0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (std::find(top.begin(), top.end(), rest[i]) != top.end()) {
      at = i + 1;
      if (rest[i] == "oracle" && at < rest.size() &&
          std::find(nested.begin(), nested.end(), rest[at]) != nested.end()) {
        ++at;
      }
      break;
    }
  }
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), file_args.begin(),
              file_args.end());
  return rest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial Schrodinger equation: turning-point spectra, "
               "wavefunctions and reference oracles"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--config", "key=value file; command-line flags override it");

  // tables
  Common tc;
  std::string which = "part2_table1";
  bool table_units_given = false;
  auto* tables = app.add_subcommand("tables", "reproduce a comparison table");
  tables->add_option("--which", which, "part2_table1, part2_table2, "
                                       "part2_table3 or hydrogen")
      ->check(CLI::IsMember(
          {"part2_table1", "part2_table2", "part2_table3", "hydrogen"}));
  add_common(tables, tc);

  // spectrum
  Common sc;
  std::string spec_pot;
  int spec_l = 0;
  std::string branch = "general";
  std::string n_range = "1";
  bool spec_signed = false;
  bool spec_numeric = false;
  auto* spectrum = app.add_subcommand("spectrum", "self-consistent levels");
  spectrum->add_option("--potential", spec_pot, "name:key=value,...")
      ->required();
  spectrum->add_option("--l", spec_l, "orbital quantum number")
      ->check(CLI::NonNegativeNumber);
  spectrum->add_option("--branch", branch)
      ->check(CLI::IsMember({"ground", "symmetric", "antisymmetric", "general"}));
  spectrum->add_option("--n", n_range, "N or A..B");
  spectrum->add_flag("--signed", spec_signed,
                     "negative-energy ground formula (default for hydrogen)");
  spectrum->add_flag("--numeric-turning-points", spec_numeric);
  add_common(spectrum, sc);

  // turning-points
  Common tpc;
  std::string tp_pot;
  int tp_l = 0;
  double tp_energy = 0.0;
  auto* tpoints = app.add_subcommand("turning-points", "r1, r2 at an energy");
  tpoints->add_option("--potential", tp_pot)->required();
  tpoints->add_option("--l", tp_l)->check(CLI::NonNegativeNumber);
  tpoints->add_option("--energy", tp_energy)->required();
  add_common(tpoints, tpc);

  // wavefunction
  Common wc;
  wc.format = "csv";
  std::string wf_pot;
  int wf_l = 0;
  int wf_n = 1;
  std::string parity = "symmetric";
  int samples = 512;
  bool uncentered = false;
  double fp_K = 1.0;
  double fp_rmax = 10.0;
  std::string carrier = "cos";
  auto* wave = app.add_subcommand("wavefunction", "sample R(r) on a grid");
  wave->add_option("--potential", wf_pot)->required();
  wave->add_option("--l", wf_l)->check(CLI::NonNegativeNumber);
  wave->add_option("--n", wf_n)->check(CLI::PositiveNumber);
  wave->add_option("--parity", parity)
      ->check(CLI::IsMember({"symmetric", "antisymmetric"}));
  wave->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  wave->add_flag("--uncentered", uncentered, "k r carrier instead of k (r - r0)");
  wave->add_option("--K", fp_K, "free particle wavenumber")
      ->check(CLI::PositiveNumber);
  wave->add_option("--rmax", fp_rmax, "free particle grid end")
      ->check(CLI::PositiveNumber);
  wave->add_option("--carrier", carrier, "free particle carrier")
      ->check(CLI::IsMember({"exp_plus", "exp_minus", "cos", "sin"}));
  add_common(wave, wc);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "independent reference values");
  oracle->require_subcommand(1);
  Common bc;
  int bz_l = 0;
  int bz_n = 3;
  auto* bessel = oracle->add_subcommand("bessel-zeros", "zeros of j_l");
  bessel->add_option("--l", bz_l)->check(CLI::Range(0, 6));
  bessel->add_option("--n", bz_n, "number of zeros")->check(CLI::PositiveNumber);
  add_common(bessel, bc);

  Common nc;
  std::string nm_pot;
  int nm_l = 0;
  int nodes = 0;
  double e_lo = 0.0;
  double e_hi = 0.0;
  double step = 1e-3;
  auto* numerov = oracle->add_subcommand("numerov", "shooting eigenvalue");
  numerov->add_option("--potential", nm_pot)->required();
  numerov->add_option("--l", nm_l)->check(CLI::NonNegativeNumber);
  numerov->add_option("--nodes", nodes)->check(CLI::NonNegativeNumber);
  numerov->add_option("--e-lo", e_lo)->required();
  numerov->add_option("--e-hi", e_hi)->required();
  numerov->add_option("--step", step, "grid step in natural lengths")
      ->check(CLI::PositiveNumber);
  add_common(numerov, nc);

  Common hc;
  int ho_n = 0;
  int ho_l = 0;
  double ho_omega = 1.0;
  std::string indexing = "from_zero";
  auto* ho = oracle->add_subcommand("ho", "(2n + l + 3/2) hbar omega");
  ho->add_option("--n", ho_n)->check(CLI::NonNegativeNumber);
  ho->add_option("--l", ho_l)->check(CLI::NonNegativeNumber);
  ho->add_option("--omega", ho_omega)->check(CLI::PositiveNumber);
  ho->add_option("--indexing", indexing)
      ->check(CLI::IsMember({"from_zero", "from_one"}));
  add_common(ho, hc);

  Common wlc;
  double wl_L = 1.0;
  int wl_l = 0;
  int wl_n = 1;
  auto* well = oracle->add_subcommand("well", "(hbar^2/2mL^2) beta_nl^2");
  well->add_option("--L", wl_L)->check(CLI::PositiveNumber);
  well->add_option("--l", wl_l)->check(CLI::Range(0, 6));
  well->add_option("--n", wl_n)->check(CLI::PositiveNumber);
  add_common(well, wlc);

  take_last(&app);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    table_units_given = tables->get_option("--units")->count() > 0 ||
                        std::getenv("RADSOLVE_UNITS") != nullptr;

    if (*tables) {
      const auto units = table_units_given
                             ? std::optional(UnitSystem::preset(tc.units))
                             : std::nullopt;
      const Table t = reproduce_table(parse_table_id(which), units);
      write_output(tc.out, render_table(t, parse_format(tc.format), echo(tables)));
    } else if (*spectrum) {
      const UnitSystem units = UnitSystem::preset(sc.units);
      const auto spec = potential_arg(spec_pot, units);
      const auto [n_lo, n_hi] = range_arg(n_range);
      if (n_lo < 1 || n_hi < n_lo) throw UsageError("--n: need 1 <= A <= B");
      const EffectivePotential U(spec, spec_l, units);
      SolveOptions opts;
      opts.signed_energy = spec_signed || U.is<HydrogenLike>();
      opts.numeric_turning_points = spec_numeric;
      std::vector<std::vector<std::string>> rows;
      const int last = branch == "ground" ? n_lo : n_hi;
      for (int n = n_lo; n <= last; ++n) {
        const EnergyBranch b = EnergyBranch::parse(branch, n);
        const EnergyLevel lv = self_consistent_energy(U, b, opts);
        const auto cf = closed_form_level(U, b, opts.signed_energy);
        rows.push_back({std::to_string(n), std::to_string(spec_l), b.name(),
                        fmt(lv.value), cf ? fmt(*cf) : "", fmt(lv.d_at_solution),
                        std::to_string(lv.iterations)});
      }
      write_output(sc.out,
                   render_records({"n", "l", "branch", "energy", "closed_form",
                                   "d", "iterations"},
                                  rows, {I, I, T, R, R, R, I},
                                  parse_format(sc.format), units.label,
                                  echo(spectrum)));
    } else if (*tpoints) {
      const UnitSystem units = UnitSystem::preset(tpc.units);
      const EffectivePotential U(potential_arg(tp_pot, units), tp_l, units);
      const TurningPoints tp = turning_points(U, tp_energy);
      const PhaseResult S = area_S(U, tp);
      write_output(
          tpc.out,
          render_records({"energy", "r1", "r2", "r0", "d", "S", "method"},
                         {{fmt(tp.energy), fmt(tp.r1), fmt(tp.r2), fmt(tp.r0),
                           fmt(tp.d), fmt(S.value),
                           tp.method == Method::closed_form ? "closed_form"
                                                            : "numeric"}},
                         {R, R, R, R, R, R, T},
                         parse_format(tpc.format), units.label, echo(tpoints)));
    } else if (*wave) {
      const UnitSystem units = UnitSystem::preset(wc.units);
      const auto spec = potential_arg(wf_pot, units);
      std::vector<WaveSample> out;
      if (std::holds_alternative<FreeParticle>(spec)) {
        Carrier c = Carrier::cos;
        if (carrier == "exp_plus") c = Carrier::exp_plus;
        if (carrier == "exp_minus") c = Carrier::exp_minus;
        if (carrier == "sin") c = Carrier::sin;
        const FreeParticleWave fp{wf_l, fp_K, c, 1.0};
        std::vector<double> grid(static_cast<std::size_t>(samples));
        for (int i = 0; i < samples; ++i) grid[i] = fp_rmax * (i + 1) / samples;
        out = sample_wavefunction(fp, grid);
      } else {
        const EffectivePotential U(spec, wf_l, units);
        RadialWaveFunction wf = normalize(RadialWaveFunction::bound_state(
            U, parity == "symmetric" ? Parity::symmetric : Parity::antisymmetric,
            wf_n));
        if (uncentered) wf = normalize(wf.with_uncentered_carrier());
        const TurningPoints& tp = wf.turning_points();
        // r = 0 is not a valid sample point; start one step in when r1 = 0.
        std::vector<double> grid =
            tp.r1 > 0.0 ? uniform_grid(tp.r1, tp.r2, samples)
                        : std::vector<double>(static_cast<std::size_t>(samples));
        if (tp.r1 <= 0.0) {
          for (int i = 0; i < samples; ++i) grid[i] = tp.r2 * (i + 1) / samples;
        }
        out = sample_wavefunction(wf, grid);
      }
      write_output(wc.out, render_samples(out, parse_format(wc.format),
                                          units.label, echo(wave)));
    } else if (*bessel) {
      const UnitSystem units = UnitSystem::preset(bc.units);
      std::vector<std::vector<std::string>> rows;
      for (int n = 1; n <= bz_n; ++n) {
        rows.push_back({std::to_string(n), std::to_string(bz_l),
                        fmt(oracles::bessel_zero(bz_l, n))});
      }
      write_output(bc.out, render_records({"n", "l", "beta"}, rows,
                                          {I, I, R},
                                          parse_format(bc.format), units.label,
                                          echo(bessel)));
    } else if (*numerov) {
      const UnitSystem units = UnitSystem::preset(nc.units);
      const EffectivePotential U(potential_arg(nm_pot, units), nm_l, units);
      oracles::NumerovOptions opts;
      opts.step = step;
      const auto e = oracles::numerov_bound_state(U, nodes, e_lo, e_hi, opts);
      write_output(nc.out, render_records({"nodes", "l", "energy"},
                                          {{std::to_string(nodes),
                                            std::to_string(nm_l), fmt(e.value)}},
                                          {I, I, R},
                                          parse_format(nc.format), units.label,
                                          echo(numerov)));
    } else if (*ho) {
      const UnitSystem units = UnitSystem::preset(hc.units);
      const auto e = oracles::ho_oracle_energy(
          ho_n, ho_l, ho_omega, units,
          indexing == "from_one" ? oracles::Indexing::from_one
                                 : oracles::Indexing::from_zero);
      write_output(hc.out, render_records({"n", "l", "energy"},
                                          {{std::to_string(ho_n),
                                            std::to_string(ho_l), fmt(e.value)}},
                                          {I, I, R},
                                          parse_format(hc.format), units.label,
                                          echo(ho)));
    } else if (*well) {
      const UnitSystem units = UnitSystem::preset(wlc.units);
      const auto e = oracles::well_oracle_energy(wl_L, wl_l, wl_n, units);
      write_output(wlc.out,
                   render_records({"n", "l", "beta", "energy"},
                                  {{std::to_string(wl_n), std::to_string(wl_l),
                                    fmt(oracles::bessel_zero(wl_l, wl_n)),
                                    fmt(e.value)}},
                                  {I, I, R, R},
                                  parse_format(wlc.format), units.label,
                                  echo(well)));
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const radsolve::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
