#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "spherule/arrangement_file.hpp"

using namespace spherule;
using fixtures::q;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SPHERULE_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "spherule_test_" + name;
  std::ofstream(path) << text;
  return path;
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_arrangement(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parsed");
  return ErrorKind::InvalidArgument;
}

const char* kStandard = "n: 1\nm: 2\nsphere: center=0 radius_sq=4\nsphere: center=3 radius_sq=4\n";

}  // namespace

TEST_CASE("center style converts to coefficients") {
  const Arrangement arr = parse_arrangement("n: 1\nm: 1\nsphere: center=0 radius_sq=4\n");
  CHECK(arr.alpha_rows() == std::vector<std::vector<Scalar>>{{Scalar(0), Scalar(-4)}});
}

TEST_CASE("fractions stay exact") {
  const Arrangement arr = parse_arrangement("n: 1\nm: 1\nsphere: center=1/3 radius_sq=1\n");
  CHECK(arr.alpha(1, 1) == q("-1/3"));
  CHECK(arr.r2(1) == 1);
}

TEST_CASE("styles may be mixed and comments are ignored") {
  const Arrangement arr = parse_arrangement(
      "# two circles\nn: 1\nm: 2\nsphere: center=0 radius_sq=4   # first\n\nsphere: alpha=-3,5\n");
  CHECK(arr.alpha_rows() == fixtures::standard_m2().alpha_rows());
}

TEST_CASE("serialization round trips") {
  Rng rng(71);
  for (int n = 1; n <= 3; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, n + 2);
    CHECK(parse_arrangement(serialize_arrangement(arr)).alpha_rows() == arr.alpha_rows());
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_arrangement("n: 1\nm: 1\nsphere: center=0 radius_sq=x\n");
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  CHECK(kind_of("n: 1\nm: 1\nsphere: centre=0 radius_sq=1\n") == ErrorKind::ParseError);
  CHECK(kind_of("n: zero\n") == ErrorKind::ParseError);
}

TEST_CASE("dimension mismatches are reported") {
  CHECK(kind_of("n: 1\nm: 1\nsphere: center=0,1 radius_sq=1\n") == ErrorKind::InconsistentDimension);
  CHECK(kind_of("n: 1\nm: 3\nsphere: center=0 radius_sq=1\n") == ErrorKind::InconsistentDimension);
  CHECK(kind_of("n: 2\nm: 1\nsphere: alpha=1,2\n") == ErrorKind::InconsistentDimension);
}

TEST_CASE("minor subcommand") {
  const std::string file = temp_file("standard.txt", kStandard);
  const RunResult r = run("-f " + file + " minor --rows 0,*,1,2 --cols 0,*,1,2");
  CHECK(r.status == 0);
  CHECK(r.out.find("-63") != std::string::npos);
}

TEST_CASE("CSV output has the fixed header") {
  const std::string file = temp_file("csv.txt", kStandard);
  const std::string csv = "spherule_test_out.csv";
  const RunResult r = run("-f " + file + " --csv " + csv + " standard-form --lambda 1/2,1/2");
  CHECK(r.status == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "key,entry,value");
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(rest.find("1/4") != std::string::npos);
}

TEST_CASE("verification report is deterministic") {
  const RunResult a = run("verify --suite exact --seed 7 --arrangements 6");
  const RunResult b = run("verify --suite exact --seed 7 --arrangements 6");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("seed 7") != std::string::npos);
  CHECK(a.out.find("FAIL") == std::string::npos);
}

TEST_CASE("bad input exits with status 2") {
  const std::string file = temp_file("bad.txt", "n: 1\nm: 1\nsphere: center=0 radius_sq=x\n");
  const RunResult r = run("-f " + file + " check");
  CHECK(r.status == 2);
  CHECK(r.out.find("ParseError") != std::string::npos);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("-f " + temp_file("std2.txt", kStandard) + " minor --rows 0,9 --cols 0,1").status == 2);
}

TEST_CASE("connection matrix subcommand") {
  const std::string file = temp_file("gm.txt", kStandard);
  const RunResult recursive = run("-f " + file + " gm --lambda 3/2,5/4");
  const RunResult closed = run("-f " + file + " gm --lambda 3/2,5/4 --closed");
  CHECK(recursive.status == 0);
  CHECK(recursive.out == closed.out);
}
