#include <array>
#include <cstdio>
#include <memory>
#include <string>

#include "check.hpp"

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& data_dir = "") {
  std::string env = data_dir.empty() ? "env -u RSM_DATA_DIR " : "env RSM_DATA_DIR='" + data_dir + "' ";
  std::string cmd = env + RSM_CLI + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), p.get())) out.append(buf.data(), n);
  int st = pclose(p.release());
  return {WEXITSTATUS(st), out};
}

}  // namespace

TEST_CASE("cusps") {
  auto r = run("cusps --N 12");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("N,a,c,width\n", 0) == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 7);  // header and six cusps
  CHECK(run("cusps --N 12 --format json").out.find("\"count\": 6") != std::string::npos);
}

TEST_CASE("h0 ratio column") {
  auto r = run("h0 --T 300 --alpha 0.5 --k 12 --x 0");
  REQUIRE(r.status == 0);
  auto row = r.out.substr(r.out.find('\n') + 1);
  double ratio = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
}

TEST_CASE("deterministic output") {
  const char* a = "tau --N 6 --s-re 1.3 --s-im 0.2 --n 1 2 3 -7";
  CHECK(run(a).out == run(a).out);
  const char* b = "z-series --kind m3 --s-re 2.5 --s-im 0.3 --v-re 2.2 --v-im -0.4 --N 2 --outer 300 --inner 300";
  CHECK(run(b).out == run(b).out);
}

TEST_CASE("errors are machine readable") {
  auto r = run("h0 --T 3");
  CHECK(r.status != 0);
  CHECK(r.out.find("{\"error\":{\"kind\":\"domain\"") != std::string::npos);
  r = run("z-series --s-re 1");
  CHECK(r.status != 0);
  CHECK(r.out.find("\"kind\":\"region\"") != std::string::npos);
  r = run("cusps");
  CHECK(r.status == 2);
  CHECK(r.out.find("\"kind\":\"parse\"") != std::string::npos);
  r = run("main-term --newform does-not-exist.txt");
  CHECK(r.status != 0);
  CHECK(r.out.find("\"error\"") != std::string::npos);
}

TEST_CASE("data directory") {
  std::string dir = std::string(RSM_TEST_TMP);
  FILE* f = std::fopen((dir + "/tiny.txt").c_str(), "w");
  REQUIRE(f);
  std::fputs("1 12 2\n1 1\n2 -24\n", f);
  std::fclose(f);
  auto r = run("z-series --kind m3 --s-re 2.5 --v-re 2.2 --outer 1 --inner 1 --newform tiny.txt");
  CHECK(r.status != 0);  // not found outside the data directory
  r = run("z-series --kind m3 --s-re 2.5 --v-re 2.2 --outer 1 --inner 1 --newform tiny.txt", dir);
  CHECK(r.status == 0);
}
