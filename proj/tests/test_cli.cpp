#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, std::string* out = nullptr) {
  std::string cmd = std::string(DISCLAB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  int status = pclose(pipe);
  if (out) *out = text;
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "disclab-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream is(line);
  std::string f;
  while (std::getline(is, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen is deterministic and writes the requested rows") {
  auto dir = temp_dir();
  auto a = dir / "gen_a.txt";
  auto b = dir / "gen_b.txt";
  CHECK(run_cli("gen --family random --n 16 --dim 2 --seed 5 -o " + a.string()) == 0);
  CHECK(run_cli("gen --family random --n 16 --dim 2 --seed 5 -o " + b.string()) == 0);
  auto text_a = slurp(a);
  CHECK(text_a == slurp(b));
  CHECK(lines_of(text_a).size() == 16);

  auto c = dir / "gen_c.txt";
  CHECK(run_cli("gen --family random --n 16 --dim 2 --seed 6 -o " + c.string()) == 0);
  CHECK(text_a != slurp(c));

  std::string corner;
  CHECK(run_cli("gen --family corner --n 3 --dim 2", &corner) == 0);
  for (const auto& line : lines_of(corner)) CHECK(line == "0 0");
}

TEST_CASE("gen rejects a negative count") {
  CHECK(run_cli("gen --family random --n=-1 --dim 2") == 2);
}

TEST_CASE("measures of the empty set need only a dimension") {
  std::string out;
  CHECK(run_cli("disc --measure extreme-l2 --dim 1 --format json", &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["measure"] == "extreme-l2");
  CHECK(j["method"] == "closed-form");
  CHECK(j["value"].get<double>() == doctest::Approx(0.28867513459481287).epsilon(1e-13));
  CHECK(j["squared"].get<double>() == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("closed form of a file-backed set") {
  auto dir = temp_dir();
  auto f = dir / "mid.txt";
  std::ofstream(f) << "0.5\n";
  std::string out;
  CHECK(run_cli("disc --measure star-l2 --input " + f.string() + " --format json",
                &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["measure"] == "star-l2");
  CHECK(j["squared"].get<double>() == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("localized estimate of the empty plane") {
  std::string out;
  CHECK(run_cli("disc --measure bmo --dim 2 --haar-order 12 --search-level 2 "
                "--format json",
                &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["schema"] == "disclab/bmo-estimate/v1");
  CHECK(j["value"].get<double>() == doctest::Approx(1.0 / 12.0).epsilon(1e-6));
  CHECK(j["tail_bound"].get<double>() > 0.0);
  CHECK(j.contains("candidate_u"));
  CHECK(j["truncation_order"] == 12);
}

TEST_CASE("verification passes and the tamper hook trips it") {
  auto dir = temp_dir();
  auto f = dir / "verify_set.txt";
  REQUIRE(run_cli("gen --family random --n 14 --dim 2 --seed 9 -o " + f.string()) == 0);

  std::string out;
  CHECK(run_cli("verify --input " + f.string(), &out) == 0);
  CHECK(out.find("verification: PASS") != std::string::npos);

  std::string bad;
  CHECK(run_cli("verify --input " + f.string() + " --self-test-tamper", &bad) == 1);
  CHECK(bad.find("localized-bound") != std::string::npos);
  CHECK(bad.find("verification: FAIL") != std::string::npos);
}

TEST_CASE("inverse lower-bound table as csv") {
  std::string out;
  CHECK(run_cli("report curse --eps 0.5 --dmax 10 --format csv", &out) == 0);
  auto lines = lines_of(out);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "dim,bmo_lower,extreme_lower");
  auto last = fields_of(lines[10]);
  REQUIRE(last.size() == 3);
  CHECK(last[0] == "10");
  CHECK(std::stod(last[1]) == doctest::Approx(13.3182).epsilon(1e-4));
  auto prev = fields_of(lines[9]);
  CHECK(std::stod(last[1]) / std::stod(prev[1]) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(std::stod(last[2]) / std::stod(prev[2]) ==
        doctest::Approx(9.0 / 4.0).epsilon(1e-9));
}

TEST_CASE("decay table shape column in one dimension") {
  std::string out;
  CHECK(run_cli("report roth --dim 1 --nlist 8,16 --haar-order 8 --format csv",
                &out) == 0);
  auto lines = lines_of(out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n,extreme,bmo_lower,shape,ratio_extreme,ratio_bmo");
  auto row8 = fields_of(lines[1]);
  auto row16 = fields_of(lines[2]);
  REQUIRE(row8.size() == 6);
  CHECK(row8[0] == "8");
  CHECK(std::stod(row8[3]) == 0.125);
  CHECK(std::stod(row16[3]) == 0.0625);
  CHECK(std::stod(row8[1]) > std::stod(row16[1]));
}

TEST_CASE("coefficient dump layout") {
  std::string out;
  CHECK(run_cli("haar-dump --dim 1 --haar-order 2", &out) == 0);
  auto lines = lines_of(out);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "levels,positions,counting_part,volume_part,value");
  CHECK(lines[1] == "-1,0,0,0.5,-0.5");
  CHECK(lines[2] == "0,0,0,-0.25,0.25");
  CHECK(lines.back().rfind("tail_bound,,,,", 0) == 0);
}

TEST_CASE("failures use the usage exit code") {
  CHECK(run_cli("disc --measure star-l2 --input /no/such/file.txt") == 2);
  CHECK(run_cli("disc --measure chi-squared --dim 1") == 2);
  CHECK(run_cli("disc --measure star-l2") == 2);
  CHECK(run_cli("haar-dump --dim 1 --haar-order 30") == 2);
  CHECK(run_cli("nonsense") == 2);
}

TEST_SUITE_END();
