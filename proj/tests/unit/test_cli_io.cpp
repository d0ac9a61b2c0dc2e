#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "sgreen/config.hpp"
#include "sgreen/errors.hpp"
#include "sgreen/scenario.hpp"
#include "sgreen/table.hpp"

using namespace sgreen;

namespace {

const cplx I(0.0, 1.0);

std::string message_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

// Data rows only; metadata carries a timestamp.
bool same_data(const ResultTable& a, const ResultTable& b) {
  return a.columns == b.columns && a.rows == b.rows;
}

}  // namespace

TEST_CASE("config defaults") {
  ScenarioConfig c = parse_config("scenario: g0\n");
  CHECK(c.scenario == Scenario::G0);
  CHECK(c.frequency.re == 0.5);
  CHECK(c.frequency.im == 1e-6);
  CHECK_FALSE(c.singular.P.has_value());
  CHECK(c.mass.type == "constant");
  CHECK(c.grid.n == 21);
}

TEST_CASE("singular block forms") {
  ScenarioConfig a = parse_config("scenario: scatter\nsingular: {alpha: 2, beta: 0}\n");
  CHECK(a.singular.alpha == 2.0);
  CHECK_FALSE(a.singular.P.has_value());
  ScenarioConfig b = parse_config("scenario: dress\nsingular: {beta: 1, P: 100}\n");
  CHECK(*b.singular.P == cplx(100.0));
  ScenarioConfig c = parse_config("scenario: dress\nsingular: {beta: 1, P: [3, -4]}\n");
  CHECK(*c.singular.P == cplx(3.0, -4.0));
  ScenarioConfig d = parse_config("scenario: dress\nsingular: {beta: 1, P: limit}\n");
  CHECK_FALSE(d.singular.P.has_value());
}

TEST_CASE("invalid configurations name the violated invariant") {
  CHECK_THROWS_AS(parse_config("scenario: g0\ngrid: {xmin: 1, xmax: -1}\n"), ValidationError);
  CHECK(message_of("scenario: g0\ngrid: {xmin: 1, xmax: -1}\n").find("xmin < xmax") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_config("scenario: g0\ngrid: {n: 1}\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("scenario: g0\nfrequency: {im: 0}\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("scenario: g0\nmass: {type: constant, value: -1}\n"),
                  ValidationError);
}

TEST_CASE("parse errors carry line and field") {
  std::string msg = message_of("scenario: g0\ngrid:\n  xmin: -5\n  xmas: 5\n");
  CHECK(msg.find("line 4") != std::string::npos);
  CHECK(msg.find("grid.xmas") != std::string::npos);
  CHECK_THROWS_AS(parse_config("scenario: g0\ngrid: {xmin: abc}\n"), ParseError);
  CHECK_THROWS_AS(parse_config("scenario: g0\ngrid: [1, 2\n"), ParseError);
  CHECK_THROWS_AS(parse_config("scenario: teleport\n"), ParseError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), IoError);
}

TEST_CASE("dumped configuration parses back to the same configuration") {
  ScenarioConfig c = load_config(std::string(SGREEN_CONFIG_DIR) + "/delta_prime_wavepacket.yaml");
  ScenarioConfig back = parse_config(dump_config(c), c.base_dir);
  CHECK(dump_config(back) == dump_config(c));
  CHECK(back.packet.times == c.packet.times);
  CHECK(back.singular.beta == c.singular.beta);
}

TEST_CASE("CSV round trip is bit exact") {
  ResultTable t;
  t.columns = {"a", "b", "c"};
  t.metadata = {"note one", "note: two"};
  t.add_row({0.1, -1e-300, std::numeric_limits<double>::max()});
  t.add_row({std::numeric_limits<double>::denorm_min(), 1.0 / 3.0, -0.0});
  t.add_row({6.02214076e23, std::nextafter(1.0, 2.0), 123456789.0});
  ResultTable back = parse_csv(format_csv(t));
  CHECK(back == t);
  CHECK(std::signbit(back.rows[1][2]));

  ResultTable empty;
  empty.columns = {"x"};
  CHECK(format_csv(empty) == "x\n");
  CHECK(parse_csv("x\n").rows.empty());

  CHECK_THROWS_AS(t.add_row({1.0}), ValidationError);
  ResultTable bad = t;
  bad.rows[0][0] = std::nan("");
  CHECK_THROWS_AS(format_csv(bad), ValidationError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,zz\n"), ParseError);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ParseError);
}

TEST_CASE("CSV file errors") {
  ResultTable t;
  t.columns = {"x"};
  t.add_row({1.0});
  CHECK_THROWS_AS(write_csv(t, "/nonexistent-dir/out.csv"), IoError);
  CHECK_THROWS_AS(read_csv("/nonexistent-dir/out.csv"), IoError);
  auto path = std::filesystem::temp_directory_path() / "sgreen_roundtrip.csv";
  write_csv(t, path);
  CHECK(read_csv(path) == t);
  std::filesystem::remove(path);
}

TEST_CASE("g0 scenario on a small grid") {
  ScenarioConfig c = parse_config("scenario: g0\ngrid: {xmin: -2, xmax: 2, n: 5}\n");
  ResultTable t = run_scenario(c);
  CHECK(t.columns == std::vector<std::string>{"x", "x_prime", "re_g", "im_g"});
  REQUIRE(t.rows.size() == 25);
  cplx k = std::sqrt(2.0 * cplx(0.5, 1e-6));
  for (const auto& r : t.rows) {
    cplx exact = std::exp(I * k * std::abs(r[0] - r[1])) / (2.0 * I * k);
    CHECK(std::abs(cplx(r[2], r[3]) - exact) < 1e-8 * std::abs(exact));
  }
}

TEST_CASE("dress scenario vanishes across the origin") {
  ScenarioConfig c = load_config(std::string(SGREEN_CONFIG_DIR) + "/delta_prime_dress.yaml");
  ResultTable t = run_scenario(c);
  std::size_t across = 0;
  for (const auto& r : t.rows)
    if (r[0] * r[1] < 0.0) {
      ++across;
      CHECK(std::hypot(r[2], r[3]) < 1e-12);
    }
  CHECK(across > 0);
}

TEST_CASE("scatter scenario reports the delta barrier") {
  ScenarioConfig c = load_config(std::string(SGREEN_CONFIG_DIR) + "/delta_barrier_scatter.yaml");
  ResultTable t = run_scenario(c);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::abs(t.rows[0][t.column("T")] - 0.5) < 1e-10);
}

TEST_CASE("module errors are rethrown with the scenario name") {
  ScenarioConfig c = parse_config(
      "scenario: scatter\npotential: {type: linear, field: 0.05, half_width: 5}\n"
      "singular: {alpha: 1}\nscatter: {x: 2, x_prime: -6}\n");
  try {
    run_scenario(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == "WindowViolation");
    CHECK(e.category() == ErrorCategory::Computation);
    CHECK(std::string(e.what()).rfind("scatter:", 0) == 0);
  }
}

TEST_CASE("repeated runs give identical data") {
  for (const char* name : {"free_g0.yaml", "delta_prime_dress.yaml", "gaussian_scan.yaml"}) {
    ScenarioConfig c = load_config(std::string(SGREEN_CONFIG_DIR) + "/" + name);
    CHECK(same_data(run_scenario(c), run_scenario(c)));
  }
}

TEST_CASE("eta override reaches the frequency and the packet") {
  ScenarioConfig c = parse_config("scenario: g0\n");
  RunOptions o;
  o.eta = 1e-9;
  ScenarioConfig r = resolved(c, o);
  CHECK(r.frequency.im == 1e-9);
  CHECK(r.packet.eta == 1e-9);
}

TEST_CASE("validate scenario passes on every background") {
  ScenarioConfig c = parse_config("scenario: validate\n");
  ResultTable t = run_scenario(c);
  const std::size_t pass = t.column("pass");
  CHECK(t.rows.size() >= 4 * 5);
  for (const auto& r : t.rows) CHECK(r[pass] == 1.0);
}
