#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qutele/figures.hpp"
#include "qutele/verify.hpp"

using namespace qutele;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QUTELE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("qutele_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("CSV schemas are exact") {
  const auto& s = csv_schemas();
  CHECK(s.at("fig2.csv") == std::vector<std::string>{"gamma_t", "d", "zeta1"});
  CHECK(s.at("fig3a.csv") == std::vector<std::string>{"gamma_t", "p", "zeta2_opt", "strength_opt_numeric",
                                                      "strength_opt_published", "published_in_range"});
  CHECK(s.at("fig3b.csv") == std::vector<std::string>{"gamma_t", "p", "P_wm_opt"});
  CHECK(s.at("fig4a.csv") == std::vector<std::string>{"gamma_t", "qr_mode", "zeta3_corrected", "zeta3_as_printed"});
  CHECK(s.at("fig4b.csv") == std::vector<std::string>{"gamma_t", "qr_mode", "P_eam"});
  CHECK(s.at("fig5.csv") == std::vector<std::string>{"gamma_t", "p", "delta"});
  CHECK(s.at("sweep.csv").size() == 13);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(4.64) == "4.64");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-0.0) == "0");
}

TEST_CASE("fig2 rows") {
  FigureOptions opt;
  opt.gamma_t_max = std::log(2.0);
  opt.steps = 2;
  const auto t = fig2_table(opt);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][2] == "1");
  CHECK(std::stod(t.rows[1][1]) == doctest::Approx(0.5));
  CHECK(std::stod(t.rows[1][2]) == doctest::Approx(4.64).epsilon(1e-11));
  const auto full = fig2_table(FigureOptions{});
  CHECK(full.rows.size() == 61);
  for (std::size_t i = 1; i < full.rows.size(); ++i) CHECK(std::stod(full.rows[i][2]) > std::stod(full.rows[i - 1][2]));
}

TEST_CASE("fig3 near p = 1 reaches the noiseless precision") {
  FigureOptions opt;
  // the reversal search stops at strength 1 - 1e-9, so p must keep the
  // optimum (1 - p_r ~ (1 - d)(1 - p)) above that floor
  opt.p_values = {1.0 - 1e-7};
  const auto t = fig3a_table(opt);
  for (const auto& r : t.rows) CHECK(std::abs(std::stod(r[2]) - 1.0) < 1e-6);
}

TEST_CASE("fig4 series") {
  const auto t = fig4a_table(FigureOptions{});
  REQUIRE(t.rows.size() == 61 * 4);
  double last_q0 = 0.0;
  for (const auto& r : t.rows) {
    if (r[1] == "optimal") CHECK(std::stod(r[2]) == doctest::Approx(1.0).epsilon(1e-10));
    if (r[1] == "0") last_q0 = std::stod(r[2]);
  }
  CHECK(last_q0 > 10.0);
  const auto b = fig4b_table(FigureOptions{});
  CHECK(std::stod(b.rows[0][2]) == doctest::Approx(1.0));
}

TEST_CASE("fig5 vanishes at the origin") {
  FigureOptions opt;
  opt.p_min = 0.0;
  opt.gamma_t_max = 1e-9;
  opt.steps = 2;
  opt.p_steps = 1;
  const auto t = fig5_table(opt);
  CHECK(std::abs(std::stod(t.rows[0][2])) < 1e-12);
}

TEST_CASE("invalid options are usage errors") {
  FigureOptions opt;
  opt.steps = 1;
  CHECK_THROWS_AS(opt.validate(), Error);
  opt = {};
  opt.p_values = {1.5};
  CHECK_THROWS_AS(opt.validate(), Error);
  CHECK(run_cli("fig2 --steps 1 --out " + scratch("bad").string()) == 2);
  CHECK(run_cli("fig2 --qr banana") == 2);
  CHECK(run_cli("nope") == 2);
  CHECK(run_cli("fig2 --alpha 2 --out " + scratch("bad2").string()) == 2);
}

TEST_CASE("CLI writes byte-identical files on repeat runs") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(run_cli("fig2 --out " + dir.string()) == 0);
    REQUIRE(run_cli("fig3 --out " + dir.string()) == 0);
    REQUIRE(run_cli("fig4 --out " + dir.string()) == 0);
    REQUIRE(run_cli("fig5 --out " + dir.string()) == 0);
    REQUIRE(run_cli("sweep --steps 5 --out " + dir.string()) == 0);
  }
  for (const auto& [name, cols] : csv_schemas()) {
    const auto text = slurp(a / name);
    CHECK(text == slurp(b / name));
    CHECK(text.find('\r') == std::string::npos);
    CHECK(split(text.substr(0, text.find('\n'))) == cols);
  }
}

TEST_CASE("sweep rows") {
  FigureOptions opt;
  opt.steps = 3;
  opt.p_values = {0.5};
  const auto t = sweep_table(opt);
  REQUIRE(t.rows.size() == 9);
  CHECK(t.rows[0][2] == "plain");
  CHECK(t.rows[1][2] == "wm");
  CHECK(t.rows[2][2] == "eam");
  // at gamma_t = 0 every scheme is noiseless: first-principles ratio 3/2
  for (int i = 0; i < 3; ++i) CHECK(std::stod(t.rows[i][11]) == doctest::Approx(1.5).epsilon(1e-6));
  // EAM with optimal reversal keeps zeta = 1
  CHECK(std::stod(t.rows[8][5]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("verify report layout") {
  const auto report = run_verification();
  const auto j = nlohmann::json::parse(report.to_json());
  REQUIRE(j.contains("checks"));
  REQUIRE(j.contains("all_normative_pass"));
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("check_name"));
    CHECK(c.contains("status"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("paper_ref"));
  }
  const auto* printed = report.find("audit.zeta3_as_printed[d=0.5,q_r=0.5]");
  REQUIRE(printed != nullptr);
  CHECK(printed->status == CheckStatus::Informational);
  CHECK(printed->measured == doctest::Approx(2.0));
}
