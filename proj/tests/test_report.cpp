#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "radsolve/errors.hpp"
#include "radsolve/report.hpp"

using namespace radsolve;
using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(RADSOLVE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ComparisonRow* find(const Table& t, const std::string& state) {
  for (const auto& r : t.rows) {
    if (r.state == state) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("comparison row invariants") {
  const auto r = ComparisonRow::make("1s", 2.0, 2.5, 1.0);
  CHECK(r.abs_dev == 0.5);
  CHECK(r.rel_dev == 0.25);
  const auto z = ComparisonRow::make("x", 0.0, 1e-40);
  CHECK(z.rel_dev == Approx(1e-40 / 1e-30));
}

TEST_CASE("reproduce_table examples") {
  const Table t1 = reproduce_table(TableId::part2_table1);
  REQUIRE(t1.rows.size() == 6);
  const auto* s2 = find(t1, "2s");
  REQUIRE(s2);
  CHECK(s2->oracle == Approx(39.476).epsilon(0.01 / 39.476));
  CHECK(s2->method_primary == Approx(39.478).epsilon(0.001 / 39.478));
  CHECK(*s2->method_secondary == Approx(39.478).epsilon(0.001 / 39.478));

  const Table t2 = reproduce_table(TableId::part2_table2);
  const auto* p2 = find(t2, "2p");
  REQUIRE(p2);
  CHECK(p2->oracle == 6.5);
  CHECK(p2->method_primary == Approx(3.927).epsilon(0.001 / 3.927));
  CHECK_FALSE(p2->method_secondary.has_value());

  const Table t3 = reproduce_table(TableId::part2_table3);
  REQUIRE(t3.rows.size() == 5);
  const auto* f52 = find(t3, "1f_5/2");
  REQUIRE(f52);
  CHECK(f52->oracle == Approx(4.530));
  CHECK(f52->method_primary == Approx(4.096).epsilon(0.001 / 4.096));

  const Table h = reproduce_table(TableId::hydrogen);
  REQUIRE(h.rows.size() == 1);
  CHECK(h.rows[0].method_primary == Approx(-13.6).epsilon(0.1 / 13.6));
  CHECK(parse_table_id("hydrogen") == TableId::hydrogen);
  CHECK_THROWS_AS(parse_table_id("table9"), DomainError);
}

TEST_CASE("every method value depends on hbar") {
  for (auto id : {TableId::part2_table1, TableId::part2_table2, TableId::part2_table3,
                  TableId::hydrogen}) {
    const Table base = reproduce_table(id);
    UnitSystem u = base.units;
    u.hbar *= 1.01;
    const Table moved = reproduce_table(id, u);
    REQUIRE(moved.rows.size() == base.rows.size());
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
      CHECK(moved.rows[i].method_primary != base.rows[i].method_primary);
      if (base.rows[i].method_secondary) {
        CHECK(*moved.rows[i].method_secondary != *base.rows[i].method_secondary);
      }
    }
  }
}

TEST_CASE("rendering") {
  CHECK(render_rows({}, Format::csv) ==
        "state,oracle,method_primary,method_secondary,abs_dev,rel_dev\n");
  const std::vector<ComparisonRow> one = {ComparisonRow::make("1d_5/2", 3.485, 3.2044756524538855)};
  const std::string json = render_rows(one, Format::json);
  const auto back = parse_rows_json(json);
  REQUIRE(back.size() == 1);
  CHECK(back[0].method_primary == one[0].method_primary);
  CHECK(render_rows(back, Format::json) == json);
  const auto rows = reproduce_table(TableId::part2_table1).rows;
  const std::string j1 = render_rows(rows, Format::json);
  CHECK(render_rows(parse_rows_json(j1), Format::json) == j1);
  CHECK(render_rows(rows, Format::csv).find("\r") == std::string::npos);
  CHECK(render_rows(rows, Format::text) == render_rows(rows, Format::text));
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -13.605693122994, 1e-300, 6.02214076e23, 0.0}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK_THROWS_AS(parse_double("1.0x"), DomainError);
}

TEST_CASE("text render of part2_table1 matches the golden file") {
  const std::string golden = read_file(std::string(RADSOLVE_GOLDEN_DIR) + "/part2_table1.txt");
  REQUIRE_FALSE(golden.empty());
  CHECK(render_table(reproduce_table(TableId::part2_table1), Format::text) == golden);
}

TEST_CASE("potential spec parser") {
  const UnitSystem nat = UnitSystem::natural();
  CHECK(std::get<IsotropicHO>(parse_potential("ho:omega=2", nat)).omega == 2.0);
  CHECK(std::get<InfiniteSphericalWell>(parse_potential("well:L=1.5", nat)).L == 1.5);
  const auto so = std::get<HOSpinOrbit>(parse_potential("hoso:omega=1,j=2.5,s=0.5,c0=0.015", nat));
  CHECK(so.j == 2.5);
  CHECK(so.c0 == 0.015);
  CHECK(std::get<HOSpinOrbit>(parse_potential("hoso:mode=relativistic", nat)).mode ==
        SpinOrbitMode::relativistic);
  CHECK(std::get<HydrogenLike>(parse_potential("hydrogen", nat)).e_charge == 1.0);
  CHECK(std::get<HydrogenLike>(parse_potential("hydrogen:Z=2", UnitSystem::electron_volt_nm()))
            .e_charge == Approx(std::sqrt(kCoulombEvNm)));
  CHECK(std::holds_alternative<FreeParticle>(parse_potential("free", nat)));
  CHECK(std::get<Parabolic>(parse_potential("parabolic:a=1,b=2,c=3", nat)).b == 2.0);
  CHECK_THROWS_AS(parse_potential("ho:omega=1,L=2", nat), DomainError);
  CHECK_THROWS_AS(parse_potential("square", nat), DomainError);
  CHECK_THROWS_AS(parse_potential("well:L=-1", nat), DomainError);
  CHECK_THROWS_AS(parse_potential("ho:omega", nat), DomainError);
  CHECK_THROWS_AS(parse_potential("ho:omega=1,omega=2", nat), DomainError);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli("tables --which part2_table2").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("tables --which table9").code == 2);
  CHECK(run_cli("spectrum --potential ho:omega=1,zeta=2").code == 2);
  CHECK(run_cli("spectrum --potential ho:omega=1 --bogus").code == 2);
  CHECK(run_cli("turning-points --potential ho:omega=1 --l 1 --energy 0.5").code == 1);
  CHECK(run_cli("oracle numerov --potential ho:omega=1 --e-lo 2 --e-hi 3").code == 1);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("cli: output is deterministic") {
  for (const char* args :
       {"tables --which part2_table3 --format json", "tables --which hydrogen --format csv",
        "spectrum --potential parabolic:a=1,b=1,c=1 --l 1 --n 1..3 --format csv",
        "wavefunction --potential ho:omega=1 --l 2 --n 2 --parity antisymmetric --samples 257",
        "oracle bessel-zeros --l 2 --n 4 --format json"}) {
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    CHECK(a.code == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli: tables match the library") {
  const Run r = run_cli("tables --which part2_table1 --format json");
  REQUIRE(r.code == 0);
  const auto rows = parse_rows_json(r.out);
  const auto lib = reproduce_table(TableId::part2_table1).rows;
  REQUIRE(rows.size() == lib.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].method_primary == lib[i].method_primary);
    CHECK(rows[i].oracle == lib[i].oracle);
  }
}

TEST_CASE("cli: config file, overrides and environment") {
  const std::string path = "radsolve_test.cfg";
  {
    std::ofstream cfg(path);
    cfg << "# comment\nwhich = part2_table2\nformat = csv\n";
  }
  const Run a = run_cli("tables --config " + path);
  CHECK(a.code == 0);
  CHECK(a.out.rfind("state,oracle", 0) == 0);
  CHECK(a.out.find("2d,7.5,") != std::string::npos);
  const Run b = run_cli("tables --config " + path + " --format text");
  CHECK(b.out.rfind("Isotropic harmonic oscillator", 0) == 0);
  {
    std::ofstream cfg(path);
    cfg << "potential_typo = ho\n";
  }
  CHECK(run_cli("tables --config " + path).code == 2);
  CHECK(run_cli("tables --config missing_file.cfg").code == 2);
  std::remove(path.c_str());

  const Run env = run_cli("tables --which part2_table2 --format json");
  CHECK(env.out.find("\"units\": \"natural\"") != std::string::npos);
  const Run moved = run_cli("tables --which part2_table1 --units natural --format csv");
  const Run via_env = [&] {
    const std::string cmd = std::string("RADSOLVE_UNITS=natural ") + RADSOLVE_CLI +
                            " tables --which part2_table1 --format csv";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    return Run{WEXITSTATUS(pclose(pipe)), out};
  }();
  CHECK(moved.out == via_env.out);
  CHECK(moved.out != run_cli("tables --which part2_table1 --format csv").out);
}

TEST_CASE("cli: wavefunction samples round-trip") {
  const Run r = run_cli("wavefunction --potential ho:omega=1 --l 1 --n 1 --samples 512");
  REQUIRE(r.code == 0);
  const auto samples = parse_samples_csv(r.out);
  CHECK(samples.size() == 512);
  CHECK(render_samples(samples, Format::csv) == r.out);
  const Run f = run_cli("wavefunction --potential free --l 2 --K 1 --samples 20 --rmax 5");
  const auto fs = parse_samples_csv(f.out);
  REQUIRE(fs.size() == 20);
  CHECK(fs.front().excluded);
  CHECK_FALSE(fs.back().excluded);
}
