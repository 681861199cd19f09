#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "covert/cli.hpp"
#include "covert/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = covert::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> data_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("covertsim_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("fig3 analytic-only writes three panels of five curves over L = 1..100") {
  const fs::path dir = scratch("fig3");
  const Result r = run({"fig3", "--seed", "7", "--trials", "0", "--rate-trials", "100000", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* panel : {"fig3_pa.csv", "fig3_m.csv", "fig3_u.csv"}) {
    const std::string csv = slurp(dir / panel);
    CHECK(csv.rfind("parameter,value,L,p_ca,ci,source\n", 0) == 0);
    const auto rows = data_rows(csv);
    CHECK(rows.size() == 500);
    std::set<std::string> curves;
    for (const auto& row : rows) {
      curves.insert(row[1]);
      CHECK(row[5] == "analytic");
    }
    CHECK(curves.size() == 5);
    CHECK(rows.front()[2] == "1");
    CHECK(rows.back()[2] == "100");
    CHECK(csv.find("# seed=7\n") != std::string::npos);
    CHECK(csv.find("# config_hash=") != std::string::npos);
    CHECK(csv.find("# schema_version=1\n") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("sweep-window is byte-identical across reruns and worker counts") {
  const std::vector<std::string> base = {"sweep-window", "--set", "m_bits=300", "--seed", "3",
                                         "--trials", "500", "--rate-trials", "20000", "--l-max", "12"};
  auto with_threads = [&](const char* t) {
    auto a = base;
    a.push_back("--threads");
    a.push_back(t);
    return run(a);
  };
  const Result a = with_threads("1");
  const Result b = with_threads("1");
  const Result c = with_threads("4");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out.find(",mc\n") != std::string::npos);
  CHECK(run({"sweep-window", "--set", "m_bits=300", "--seed", "4", "--trials", "500", "--rate-trials", "20000",
             "--l-max", "12"}).out != a.out);
}

TEST_CASE("config and usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"rate", "--bogus"}).code == 2);
  CHECK(run({"rate", "--mode", "median"}).code == 2);
  const Result bad = run({"rate", "--set", "delta=0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("delta must lie in (0,1)") != std::string::npos);
  CHECK(run({"rate", "--set", "unknown=1"}).code == 2);
  CHECK(run({"rate", "--config", "/nonexistent/config.yaml"}).code == 2);
  CHECK(run({"rate", "--help"}).code == 0);
}

TEST_CASE("model errors exit with 1") {
  CHECK(run({"case1", "--trials", "0", "--rate", "14.36"}).code == 1);
  CHECK(run({"verify", "--trials", "10", "--rate", "14.36"}).code == 1);
}

TEST_CASE("config file is honoured") {
  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  const fs::path file = dir / "scenario.yaml";
  std::ofstream(file) << "defaults: table1\nm_bits: 300\n";
  const Result from_file = run({"optimize-window", "--config", file.string(), "--rate", "14.36"});
  const Result from_set = run({"optimize-window", "--set", "m_bits=300", "--rate", "14.36"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == from_set.out);
  fs::remove_all(dir);
}

TEST_CASE("tables carry the documented columns") {
  const Result rate = run({"rate", "--trials", "1000"});
  CHECK(rate.out.rfind("mean_rate,std_error,trials,seed,degenerate\n", 0) == 0);
  const Result dist = run({"distlaw", "--points", "11"});
  CHECK(data_rows(dist.out).size() == 11);
  const Result chunks = run({"optimize-chunks", "--rate", "14.36"});
  CHECK(chunks.out.rfind("n_star,p_ov_star,n_max,stability_paper_literal,stability_utilization\n", 0) == 0);
  const Result sweep = run({"sweep-chunks", "--rate", "14.36", "--n-max", "7"});
  CHECK(sweep.out.find("# max_chunk_rounding_symbols=") != std::string::npos);
  const Result mode = run({"optimize-window", "--rate", "14.36", "--mode", "conditional-mean"});
  CHECK(mode.out.find("# mode=conditional-mean") != std::string::npos);
  const Result verbose = run({"sweep-window", "--rate", "14.36", "--l-max", "3", "--verbose"});
  CHECK(verbose.out.find("L,s,d1,d2,p_dis,d_bar,d_slant,p_md,p_catch_given_s") != std::string::npos);
}

TEST_CASE("csv table contract") {
  covert::CsvTable t("x", {"a", "b"});
  t.add_row({"1", "2"});
  CHECK_THROWS(t.add_row({"1"}));
  t.add_meta("seed", "7");
  CHECK(t.render() == "a,b\n1,2\n# seed=7\n# schema_version=1\n");
  CHECK(covert::fmt_num(0.1) == "0.1");
  CHECK(covert::fmt_num(12LL) == "12");
}
