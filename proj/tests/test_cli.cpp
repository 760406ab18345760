#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lab.hpp"
#include "lozenge/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result lab_run(std::vector<std::string> args) {
  args.insert(args.begin(), "lozenge-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = lab::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// removed at exit
struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("lozenge_cli_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path scratch() {
  static const Scratch s;
  return s.dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

void write(const std::string& name, const std::string& text) { lozenge::write_text_file(path(name), text); }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

// lattice site at slice t and level k of the small domain below
std::string site(int t, int k) {
  const lozenge::BackWall w = lozenge::BoxDomain{lozenge::Partition({1}), 3, 3}.wall();
  const int parity = ((w.eval(t) + 1) % 2 + 2) % 2;
  return std::to_string(t) + "," + std::to_string(2 * k + parity) + "\n";
}

const char* kSmall = R"({"schedule": {"regime": "periodic", "r": 0.4, "alpha": 1.2},
                         "domain": {"lambda": [1], "c": 3, "d": 3}, "seed": 4})";

}  // namespace

TEST_CASE("same seed gives identical CSV bytes whatever the thread count") {
  write("small.json", kSmall);
  const Result a = lab_run({"sample", "--config", path("small.json"), "--n", "20", "--csv", path("a.csv")});
  const Result b = lab_run({"sample", "--config", path("small.json"), "--n", "20", "--csv", path("b.csv"),
                            "--threads", "3"});
  const Result c = lab_run({"sample", "--config", path("small.json"), "--n", "20", "--csv", path("c.csv"),
                            "--seed", "5"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  REQUIRE(c.code == 0);
  const std::string ta = lozenge::read_text_file(path("a.csv"));
  CHECK(ta == lozenge::read_text_file(path("b.csv")));
  CHECK(ta != lozenge::read_text_file(path("c.csv")));
  CHECK(first_line(ta).rfind("# lozenge-lab", 0) == 0);
  CHECK(ta.find("sample_id,t,two_h") != std::string::npos);
}

TEST_CASE("transfer method and svg output") {
  write("small.json", kSmall);
  const Result r = lab_run({"sample", "--config", path("small.json"), "--n", "5", "--method", "transfer",
                            "--svg", path("s.svg"), "--render", "2"});
  REQUIRE(r.code == 0);
  const std::string svg = lozenge::read_text_file(path("s.svg"));
  CHECK(svg.rfind("<!-- lozenge-lab", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("configuration errors exit 2 and name the key") {
  write("bad.json", R"({"schedule": {"regime": "periodic", "r": 0.4, "alpha": "big"}})");
  Result r = lab_run({"sample", "--config", path("bad.json")});
  CHECK(r.code == 2);
  auto j = nlohmann::json::parse(first_line(r.out));
  CHECK(j["exit_code"] == 2);
  CHECK(j["key"] == "/schedule/alpha");

  write("typo.json", R"({"schedul": {}})");
  r = lab_run({"sample", "--config", path("typo.json")});
  CHECK(r.code == 2);

  r = lab_run({"sample", "--n", "many"});
  CHECK(r.code == 2);
  r = lab_run({"frobnicate"});
  CHECK(r.code == 2);
  r = lab_run({"sample", "--config", path("missing.json")});
  CHECK(r.code == 2);
}

TEST_CASE("oversized transfer runs exit 4") {
  write("big.json", R"({"schedule": {"r": 0.05}, "geometry": {"u": 1, "v": 2, "r": 0.05}})");
  const Result r = lab_run({"sample", "--config", path("big.json"), "--n", "1", "--method", "transfer"});
  CHECK(r.code == 4);
  CHECK(nlohmann::json::parse(first_line(r.out))["exit_code"] == 4);
}

TEST_CASE("kernel CSV columns and all ordered pairs") {
  write("small.json", kSmall);
  write("pts.csv", "t,two_h\n" + site(0, 0) + site(1, -1) + site(-1, 1));
  const Result r = lab_run({"kernel", "--config", path("small.json"), "--points", path("pts.csv"), "--out",
                            path("k.csv")});
  REQUIRE(r.code == 0);
  std::istringstream in(lozenge::read_text_file(path("k.csv")));
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# lozenge-lab", 0) == 0);
  std::getline(in, line);
  CHECK(line == "t1,two_h1,t2,two_h2,re,im,err_est");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("correlations accept lattice sites and reject others") {
  write("small.json", kSmall);
  write("one.csv", site(0, 0));
  write("off.csv", "0," + std::to_string(std::stoi(site(0, 0).substr(2)) + 1) + "\n");
  const Result r = lab_run({"correlations", "--config", path("small.json"), "--points", path("one.csv"), "--out",
                            path("c1.csv")});
  CHECK(r.code == 0);
  CHECK(fs::exists(path("c1.csv")));
  const Result off = lab_run({"correlations", "--config", path("small.json"), "--points", path("off.csv")});
  CHECK(off.code == 2);
}

TEST_CASE("boundary for the unbounded floor") {
  write("u.json", R"({"schedule": {"regime": "periodic", "r": 0.1, "alpha": 1.5}, "geometry": {"u": 1}})");
  const Result r = lab_run({"boundary", "--config", path("u.json"), "--regime", "unbounded", "--samples", "100",
                            "--csv", path("b.csv"), "--svg", path("b.svg")});
  REQUIRE(r.code == 0);
  const std::string csv = lozenge::read_text_file(path("b.csv"));
  CHECK(csv.rfind("# lozenge-lab", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 50);
  CHECK(lozenge::read_text_file(path("b.svg")).find("<polyline") != std::string::npos);
  const Result bad = lab_run({"boundary", "--config", path("u.json"), "--regime", "round"});
  CHECK(bad.code == 2);
}

TEST_CASE("turning grid") {
  write("t.json", R"({"schedule": {"regime": "periodic", "r": 0.1, "alpha": 1.5}})");
  const Result r = lab_run({"turning", "--config", path("t.json"), "--edge", "bottom", "--t-max", "2", "--h-steps",
                            "3", "--csv", path("t.csv")});
  REQUIRE(r.code == 0);
  CHECK(fs::file_size(path("t.csv")) > 0);
}

TEST_CASE("verify runs the oracle suite") {
  const Result r = lab_run({"verify", "--suite", "oracle"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("corner_2x2") != std::string::npos);
  CHECK(r.err.find("FAIL") == std::string::npos);
}
