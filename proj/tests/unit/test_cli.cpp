#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "omx/cli/commands.hpp"
#include "omx/cli/io.hpp"
#include "omx/cli/svg.hpp"
#include "omx/cli/table.hpp"

using namespace omx::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result omx_run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("omx_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { write_file_atomic(path, text); }

}  // namespace

TEST_CASE("csv: quoting round-trip") {
  Table t;
  t.header = {"a", "b,c", "q\"uote"};
  t.rows = {{"1", "", "x\ny"}, {"2.5", "-3", "plain"}};
  const auto back = parse_csv(to_csv(t));
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK_THROWS_AS((void)parse_csv("a,b\n1\n"), MalformedData);
  CHECK_THROWS_AS((void)parse_csv("a\n\"open\n"), MalformedData);
}

TEST_CASE("csv: doubles survive with full precision") {
  for (double v : {0.1, 1.0 / 3.0, -2.2250738585072014e-308, 6.02214076e23, 14.042961461349021}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("config: misspelled keys are rejected by name") {
  TempDir dir;
  write(dir.file("bad.json"), R"({"params": {"delta_c": 0.5, "etaa": 0.4}})");
  auto r = omx_run({"steady", "-c", dir.file("bad.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("params.etaa") != std::string::npos);

  write(dir.file("bad2.json"), R"({"sweeep": {}})");
  r = omx_run({"sweep", "-c", dir.file("bad2.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("sweeep") != std::string::npos);

  write(dir.file("bad3.json"), R"({"params": {"eta": "fast"}})");
  CHECK(omx_run({"steady", "-c", dir.file("bad3.json")}).code == 2);

  write(dir.file("bad4.json"), "{ not json");
  CHECK(omx_run({"steady", "-c", dir.file("bad4.json")}).code == 2);
}

TEST_CASE("config: invalid physics and unknown parameters exit 2") {
  CHECK(omx_run({"steady", "--eta", "0"}).code == 2);
  CHECK(omx_run({"sweep", "--param", "omega"}).code == 2);
  CHECK(omx_run({"steady", "--no-such-flag"}).code == 2);
}

TEST_CASE("config: flag beats file beats default") {
  TempDir dir;
  write(dir.file("c.json"), R"({"params": {"e_l": 1.7, "delta_c": 1.2, "delta_d": 1.2, "kappa": 0.1}})");
  auto j = nlohmann::json::parse(omx_run({"steady", "-c", dir.file("c.json")}).out);
  CHECK(j["params"]["e_l"] == 1.7);
  CHECK(j["params"]["eta"] == 0.4);
  CHECK(j["branches"].size() == 3);
  j = nlohmann::json::parse(omx_run({"steady", "-c", dir.file("c.json"), "--e-l", "2"}).out);
  CHECK(j["params"]["e_l"] == 2.0);
  CHECK(j["branches"].size() == 1);
  j = nlohmann::json::parse(omx_run({"steady", "-c", dir.file("c.json"), "--set", "params.e_l=0"}).out);
  CHECK(j["branches"].size() == 1);
  CHECK(j["branches"][0]["n"] == 0.0);
}

TEST_CASE("steady: reference point and bistable point") {
  auto j = nlohmann::json::parse(omx_run({"steady"}).out);
  REQUIRE(j["branches"].size() == 1);
  CHECK(j["branches"][0]["stability"] == "stable");
  CHECK(j["predicate"] == false);

  j = nlohmann::json::parse(
      omx_run({"steady", "--delta-c", "1.2", "--delta-d", "1.2", "--kappa", "0.1", "--e-l", "1.7"}).out);
  REQUIRE(j["branches"].size() == 3);
  CHECK(j["branches"][1]["stability"] == "unstable");
  CHECK(j["predicate"] == true);
  CHECK(j["turning_points"].size() == 2);
  for (const char* key : {"n", "re_a_s", "im_a_s", "q_s", "re_sigma_s", "im_sigma_s", "stability"}) {
    CHECK(j["branches"][0].contains(key));
  }
}

TEST_CASE("sweep: detuning sweep CSV") {
  const auto r = omx_run({"sweep", "--set", "sweep.tie=\"equal\""});
  REQUIRE(r.code == 0);
  const auto t = parse_csv(r.out);
  CHECK(t.rows.size() == 801);
  CHECK(t.header[0] == "delta_c");
  const auto n2 = *t.column("n2");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.number(i, 1).has_value());
    CHECK(t.rows[i][n2].empty());
  }
}

TEST_CASE("hysteresis: up and down differ between the knees") {
  const auto r = omx_run({"hysteresis", "--delta-c", "1.2", "--delta-d", "1.2", "--kappa", "0.1", "--param", "e_l",
                          "--start", "0", "--stop", "3", "--points", "301"});
  REQUIRE(r.code == 0);
  const auto t = parse_csv(r.out);
  const auto up = *t.column("up_path");
  const auto down = *t.column("down_path");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double e = *t.number(i, 0);
    if (e > 1.5 && e < 1.92) CHECK(*t.number(i, up) < *t.number(i, down));
    if (e < 1.49 || e > 1.94) CHECK(*t.number(i, up) == *t.number(i, down));
  }
}

TEST_CASE("map: grid of root counts") {
  const auto r = omx_run({"map", "--set", "map.x.points=5", "--set", "map.y.points=7"});
  REQUIRE(r.code == 0);
  const auto t = parse_csv(r.out);
  CHECK(t.rows.size() == 35);
  CHECK(t.column("root_count").has_value());
  CHECK(omx_run({"map", "--set", "map.y.param=\"kappa\""}).code == 2);
}

TEST_CASE("spectrum: all-pass CSV and features file") {
  TempDir dir;
  const auto out = dir.file("flat.csv");
  auto r = omx_run({"spectrum", "--kappa", "0", "--chi", "0", "--n", "0.64", "-o", out});
  REQUIRE(r.code == 0);
  const auto t = parse_csv(read_file(out));
  const auto tcol = *t.column("T");
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(std::abs(*t.number(i, tcol) - 1.0) <= 1e-12);
  const auto f = nlohmann::json::parse(read_file(out + ".features.json"));
  CHECK(f["peaks"].empty());
}

TEST_CASE("spectrum: OMIT features and the two-mode column") {
  TempDir dir;
  const auto out = dir.file("omit.csv");
  const auto r = omx_run({"spectrum", "--eta", "0.113", "--delta-c", "-0.9", "--gamma-m", "0.0017", "--kappa",
                          "0.078", "--chi", "0.03", "--n", "0.64", "--eit", "true", "-o", out, "--features",
                          dir.file("f.json")});
  REQUIRE(r.code == 0);
  const auto t = parse_csv(read_file(out));
  CHECK(t.header == std::vector<std::string>{"delta_p", "T", "re_A1", "im_A1", "abs_A2", "abs_Q1", "T_eit"});
  const auto f = nlohmann::json::parse(read_file(dir.file("f.json")));
  CHECK(std::abs(f["principal_peak"].get<double>() + 1.0) < 0.02);
}

TEST_CASE("spectrum: Fano set reports a nonzero asymmetry") {
  omx::cli::RunConfig cfg;
  cfg.params.eta = 0.4;
  cfg.params.delta_c = 1.2;
  cfg.params.gamma_m = 0.001;
  cfg.params.kappa = 0.01;
  cfg.params.chi = 0.1;
  cfg.spectrum.n = 1.0;
  cfg.spectrum.window_center = 1.0;
  std::string features;
  (void)spectrum_table(cfg, features);
  const auto f = nlohmann::json::parse(features);
  CHECK(std::abs(f["asymmetry"].get<double>()) > 0.0);
}

TEST_CASE("outputs are byte-identical across runs, plots included") {
  TempDir dir;
  const std::vector<std::string> base{"hysteresis", "--delta-c", "1.2", "--delta-d", "1.2", "--kappa", "0.1",
                                      "--param", "e_l", "--start", "0", "--stop", "3", "--points", "200"};
  auto a = base;
  a.insert(a.end(), {"-o", dir.file("a.csv"), "--plot", dir.file("a.svg")});
  auto b = base;
  b.insert(b.end(), {"-o", dir.file("b.csv"), "--plot", dir.file("b.svg")});
  REQUIRE(omx_run(a).code == 0);
  REQUIRE(omx_run(b).code == 0);
  CHECK(read_file(dir.file("a.csv")) == read_file(dir.file("b.csv")));
  CHECK(read_file(dir.file("a.svg")) == read_file(dir.file("b.svg")));
  REQUIRE(omx_run({"plot", dir.file("a.csv"), "-o", dir.file("c.svg")}).code == 0);
  CHECK(read_file(dir.file("a.svg")) == read_file(dir.file("c.svg")));
  const auto svg = read_file(dir.file("c.svg"));
  CHECK(svg.find("up sweep") != std::string::npos);
  CHECK(svg.find("down sweep") != std::string::npos);
}

TEST_CASE("plot: unstable branches are dashed") {
  TempDir dir;
  REQUIRE(omx_run({"sweep", "--delta-c", "1.2", "--delta-d", "1.2", "--kappa", "0.1", "--param", "e_l", "--start",
                   "1", "--stop", "2.2", "--points", "121", "-o", dir.file("s.csv"), "--plot", dir.file("s.svg")})
              .code == 0);
  const auto svg = read_file(dir.file("s.svg"));
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
}

TEST_CASE("plot: empty data gives axes only") {
  TempDir dir;
  write(dir.file("empty.csv"), "delta_c,n1,n2,n3,stable1,stable2,stable3\n");
  REQUIRE(omx_run({"plot", dir.file("empty.csv"), "-o", dir.file("e.svg")}).code == 0);
  const auto svg = read_file(dir.file("e.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") == std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("plot: malformed CSV and missing files") {
  TempDir dir;
  write(dir.file("ragged.csv"), "a,b\n1,2,3\n");
  CHECK(omx_run({"plot", dir.file("ragged.csv"), "-o", dir.file("r.svg")}).code == 2);
  CHECK(omx_run({"plot", dir.file("missing.csv"), "-o", dir.file("m.svg")}).code == 4);
  CHECK(omx_run({"steady", "-c", dir.file("missing.json")}).code == 4);
  CHECK(omx_run({"steady", "-o", dir.file("no/such/dir/out.json")}).code == 4);
}

TEST_CASE("json output format") {
  const auto r = omx_run({"sweep", "--points", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 5);
  CHECK(j[0]["n2"].is_null());
  CHECK(j[0]["n1"].is_number());
}
