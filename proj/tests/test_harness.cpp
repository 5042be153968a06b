#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "obsint/config.hpp"
#include "obsint/error.hpp"
#include "obsint/plot.hpp"
#include "obsint/record.hpp"
#include "obsint/scenarios.hpp"

using namespace obsint;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("obsint_test_" + name);
  fs::remove_all(p);
  return p;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

std::string fmt_hash(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

TEST_CASE("config") {
  Config c({{"a.x", "1"}, {"a.list", "1, 2,3"}, {"b", "text"}});
  c.merge_text("# comment\n\na.x = 2.5\n  b =  other words  \n");
  CHECK(c.num("a.x") == 2.5);
  CHECK(c.str("b") == "other words");
  CHECK(c.list("a.list") == std::vector<double>{1, 2, 3});
  CHECK_THROWS_WITH_AS(c.merge_text("a.y = 3"), doctest::Contains("unknown config key"), Error);
  CHECK_THROWS_WITH_AS(c.merge_text("just words"), doctest::Contains("expected 'key = value'"), Error);
  CHECK_THROWS_AS(c.set("zzz", "1"), Error);
  CHECK_THROWS_AS(c.num("b"), Error);
  CHECK_THROWS_AS(c.integer("a.x"), Error);
  c.set("a.x", "4");
  CHECK(c.integer("a.x") == 4);

  Config d = c;
  CHECK(d.hash() == c.hash());
  d.set("b", "changed");
  CHECK(d.hash() != c.hash());
  CHECK(c.dump().find("a.list = 1, 2,3\na.x = 4\nb = other words\n") != std::string::npos);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("every scenario has defaults") {
  const auto all = list_scenarios();
  CHECK(all.size() == 8);
  for (const auto& s : all) {
    const auto c = default_config(s.name);
    if (s.name.rfind("bode", 0) != 0) CHECK(c.has("scenario.duration"));
    CHECK(c.has("scenario.seed") == (s.name.rfind("bode", 0) != 0));
  }
  CHECK_THROWS_WITH_AS(default_config("nope"), doctest::Contains("unknown scenario"), Error);
  CHECK_THROWS_AS(run_scenario("nope", Config{}, {}), Error);
}

TEST_CASE("record and CSV") {
  RunRecord r({"t", "a", "b"});
  r.add_row(std::vector<double>{0, 0.1, -1e-300});
  r.add_row(std::vector<double>{0.5, 1.0 / 3.0, 12345678.9});
  r.add_row(std::vector<double>{1, -2, 6.02e23});
  CHECK_THROWS_AS(r.add_row(std::vector<double>{0.9, 0, 0}), Error);
  CHECK_THROWS_AS(r.add_row(std::vector<double>{2, 0}), Error);
  CHECK(r.column("a")[1] == 1.0 / 3.0);
  CHECK_THROWS_AS(r.column("zzz"), Error);

  const auto back = parse_csv(to_csv(r));
  CHECK(back == r);
  const auto dir = scratch("csv");
  fs::create_directories(dir);
  export_csv(r, dir / "r.csv");
  CHECK(read_csv(dir / "r.csv") == r);

  const RunRecord empty({"t", "x"});
  CHECK(empty.rows() == 0);
  CHECK(parse_csv(to_csv(empty)) == empty);
  CHECK_THROWS_AS(parse_csv(""), Error);
  CHECK_THROWS_AS(parse_csv("t,x\n1\n"), Error);
  CHECK_THROWS_AS(parse_csv("t,x\n1,abc\n"), Error);
  fs::remove_all(dir);
}

TEST_CASE("trend and rms helpers") {
  std::vector<double> t, y;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(i);
    y.push_back(3 + 0.5 * i);
  }
  CHECK(trend_slope(t, y, 0) == Approx(0.5));
  CHECK(trend_slope(t, y, 50) == Approx(0.5));
  std::vector<double> ones(t.size(), -2.0);
  CHECK(rms(t, ones, 10) == Approx(2.0));
  CHECK_THROWS_AS(trend_slope(t, y, 100), Error);
}

TEST_CASE("svg output") {
  Panel p{"demo", "t", "y", false, {}};
  p.series.push_back({"solid", {0, 1, 2}, {0, 1, 0}, false, 0});
  p.series.push_back({"dashed", {0, 1, 2}, {1, 0, 1}, true, 0});
  const auto svg = render_svg({p});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "stroke-dasharray") >= 1);
  CHECK(svg.find("demo") != std::string::npos);
  CHECK(svg.find("dashed") != std::string::npos);

  const auto bode = bode_panels(ObserverGainSet{3, 2, {0.1, 3, 2}, 0.1}, {0.1, 1, 10, 100});
  CHECK(bode.size() == 2);
  for (const auto& panel : bode) {
    CHECK(panel.log_x);
    CHECK(panel.series.size() == 6);
    int dashed = 0;
    for (const auto& s : panel.series) dashed += s.dashed;
    CHECK(dashed == 3);
  }
  const auto bsvg = render_svg(bode);
  CHECK(count(bsvg, "stroke-dasharray") >= 6);

  // Long series are decimated, not dropped.
  Series big{"big", {}, {}, false, -1};
  for (int i = 0; i < 200000; ++i) {
    big.x.push_back(i);
    big.y.push_back(i % 1000 == 0 ? 5.0 : 0.0);
  }
  const auto bigsvg = render_svg({Panel{"", "", "", false, {big}}});
  CHECK(bigsvg.size() < 200000);
}

TEST_CASE("scenario runs are deterministic and stamped") {
  auto cfg = default_config("integ1-100s");
  cfg.set("scenario.duration", "5");
  cfg.set("scenario.settle", "1");
  cfg.set("scenario.trailing_window", "2");
  const auto a = scratch("det_a"), b = scratch("det_b");
  const auto ra = run_scenario("integ1-100s", cfg, a);
  const auto rb = run_scenario("integ1-100s", cfg, b);
  for (const char* f : {"data.csv", "plot.svg", "metrics.txt", "config.txt"}) {
    INFO(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(ra.record == rb.record);
  const auto stamped = slurp(a / "config.txt");
  CHECK(stamped.find("scenario.duration = 5") != std::string::npos);
  CHECK(stamped.find("observer.k = 2, 2.7783") != std::string::npos);
  CHECK(stamped.find(fmt_hash(cfg.hash())) != std::string::npos);
  const auto m = read_metrics(a / "metrics.txt");
  CHECK(m.count("rms_err_x1") == 1);
  CHECK(m.at("rms_err_x1") == Approx(ra.metrics.at("rms_err_x1")));

  cfg.set("scenario.seed", "2");
  const auto rc = run_scenario("integ1-100s", cfg, {});
  CHECK_FALSE(rc.record == ra.record);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("bad scenario settings are rejected with a message") {
  auto cfg = default_config("integ2-100s");
  cfg.set("observer.k", "3, 0.01, 0.1");
  CHECK_THROWS_WITH_AS(run_scenario("integ2-100s", cfg, {}), doctest::Contains("gain validity"), Error);
  cfg = default_config("integ1-100s");
  cfg.set("observer.k", "2, -1");
  CHECK_THROWS_AS(run_scenario("integ1-100s", cfg, {}), Error);
  cfg = default_config("integ1-100s");
  cfg.set("noise.pulse.width_units", "furlongs");
  CHECK_THROWS_AS(run_scenario("integ1-100s", cfg, {}), Error);
}
