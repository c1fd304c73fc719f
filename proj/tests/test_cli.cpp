// Drives the cascade-sim binary; its path comes from the CASCADE_SIM define.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result sim(const std::string& args) {
  const std::string cmd = std::string(CASCADE_SIM) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double distortion(const std::string& args) {
  const Result r = sim("eval-one " + args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out).at("sum_distortion").get<double>();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string kSmall = "--users 3 --rrus 2 --antennas 2";

}  // namespace

TEST_CASE("bad arguments exit with 2") {
  CHECK(sim("run --trials 0 --quiet").code == 2);
  CHECK(sim("run --no-such-flag").code == 2);
  CHECK(sim("run --bits 3..1 --quiet").code == 2);
  CHECK(sim("run --bits 0..x --quiet").code == 2);
  CHECK(sim("run --schemes SR,MMSE --quiet").code == 2);
  CHECK(sim("run --profile flat").code == 2);
  CHECK(sim("eval-one --scheme IR --rate-vector 1,2").code == 2);
  CHECK(sim("eval-one --scheme IR --rate-vector 1,,2,3").code == 2);
  CHECK(sim("eval-one --scheme IR --rate-vector 1,-2,2,3").code == 2);
  CHECK(sim("eval-one --scheme XX --rate-vector 1,2,2,3").code == 2);
  CHECK(sim("validate-config --config /nonexistent.json").code == 2);
  CHECK(sim("").code == 2);
}

TEST_CASE("help lists units") {
  const Result run = sim("run --help");
  CHECK(run.code == 0);
  CHECK(run.out.find("dB") != std::string::npos);
  CHECK(run.out.find("bits") != std::string::npos);
  const Result eval = sim("eval-one --help");
  CHECK(eval.out.find("bits per sample") != std::string::npos);
  CHECK(eval.out.find("dB") != std::string::npos);
  CHECK(sim("dump-instance --help").out.find("dB") != std::string::npos);
}

TEST_CASE("run writes identical files for identical flags") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "cascade_cli_a.csv";
  const auto b = dir / "cascade_cli_b.csv";
  const std::string flags =
      kSmall + " --bits 0..3,5 --trials 4 --seed 9 --grid-steps 4 --quiet --out ";
  REQUIRE(sim("run " + flags + a.string() + " --workers 1").code == 0);
  REQUIRE(sim("run " + flags + b.string() + " --workers 3").code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("scheme,bits_per_user,mean_distortion,std_distortion,n_trials\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 1 + 4 * 5);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("config file with inline overrides") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto cfg = dir / "cascade_cli_cfg.json";
  std::ofstream(cfg) << R"({"n_users": 3, "n_rrus": 2, "antennas_per_rru": 2,
                            "n_trials": 2, "grid_steps": 3, "schemes": ["IP"]})";
  const Result r = sim("run --config " + cfg.string() + " --bits 1 --trials 3 --format json --quiet");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("metadata").at("config").at("n_trials") == 3);
  CHECK(j.at("rows").size() == 1);
  CHECK(j.at("rows")[0].at("scheme") == "IP");
  CHECK(sim("validate-config --config " + cfg.string()).code == 0);
  std::filesystem::remove(cfg);
}

TEST_CASE("eval-one identities") {
  const Result lb = sim("eval-one " + kSmall + " --seed 5 --scheme LOWER_BOUND --rate-vector 0,0");
  REQUIRE(lb.code == 0);
  const auto j = nlohmann::json::parse(lb.out);
  CHECK(j.at("sum_distortion").get<double>() ==
        doctest::Approx(j.at("zero_rate_distortion").get<double>()).epsilon(1e-12));

  const std::string one = "--users 2 --rrus 1 --antennas 3 --seed 4 --rate-vector 5 --scheme ";
  CHECK(distortion(one + "IR") == doctest::Approx(distortion(one + "SR")).epsilon(1e-12));
  CHECK(distortion(one + "IP") == doctest::Approx(distortion(one + "LOWER_BOUND")).epsilon(1e-9));
  CHECK(distortion(one + "WZR") == distortion(one + "IR"));
}

TEST_CASE("dumped instances evaluate like the seeded ones") {
  const auto path = std::filesystem::temp_directory_path() / "cascade_cli_inst.json";
  REQUIRE(sim("dump-instance " + kSmall + " --seed 12 --out " + path.string()).code == 0);
  const std::string rates = " --rate-vector 3,5 --scheme IP";
  CHECK(distortion("--instance " + path.string() + rates) ==
        distortion(kSmall + " --seed 12" + rates));
  std::filesystem::remove(path);
}
