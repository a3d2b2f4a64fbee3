#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "", bool with_stderr = false) {
  const std::string cmd = env + " " PGX_CLI_PATH " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, Enumerate) {
  Outcome r = run("enumerate --p 2 --max-order-exp 3 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 3u);
  r = run("enumerate --p 3 --max-order-exp 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u);
  r = run("enumerate --p 4 --max-order-exp 3");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run("enumerate --p 4 --max-order-exp 3", "", true).out, "error: p must be prime\n");
  EXPECT_EQ(run("enumerate --p 2").code, 2);
  EXPECT_EQ(run("enumerate --p 2 --max-order-exp 3 --format xml").code, 2);
}

TEST(Cli, EnumerateJsonLinesRoundTrip) {
  const Outcome r = run("enumerate --p 2 --max-order-exp 6 --format jsonl");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const Outcome again = run("validate --tuple '" + line + "'");
    EXPECT_EQ(again.code, 0) << line;
    // print -> parse -> print through construct's parser is byte-identical
    EXPECT_EQ(nlohmann::ordered_json::parse(line).dump(), line);
  }
  EXPECT_EQ(n, 2u + 6 + 14 + 31);
}

TEST(Cli, Validate) {
  Outcome r = run("validate --tuple 3,3,3,2,1,1,2,0,1,2,1,7");
  EXPECT_EQ(r.code, 0);
  r = run("validate --tuple 2,2,1,1,1,1,1,0,0,0,1,1");
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["valid"].get<bool>());
  const auto v = j["violations"].get<std::vector<std::string>>();
  EXPECT_NE(std::find(v.begin(), v.end(), "2"), v.end());
  EXPECT_NE(std::find(v.begin(), v.end(), "3"), v.end());
  EXPECT_EQ(run("validate --tuple 2,2,1,x").code, 2);
  EXPECT_EQ(run("validate --tuple ''").code, 2);
  EXPECT_EQ(run("validate --tuple '{\"p\":2'").code, 2);
  EXPECT_EQ(run("validate --tuple 4,1,1,1,1,1,0,0,0,0,1,1").code, 2);
}

TEST(Cli, Construct) {
  Outcome r = run("construct --tuple 2,1,1,1,1,1,0,0,1,0,1,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"p\":2,\"M\":2,\"N1\":2,\"N2\":2,\"r1\":1,\"r2\":1,\"t1\":1,\"t2\":2}\n");
  const std::string path = ::testing::TempDir() + "pgx_table.csv";
  r = run("construct --tuple 2,1,1,1,1,1,0,0,1,0,1,1 --table " + path);
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "0,1,2,3,4,5,6,7");
  EXPECT_EQ(run("construct --tuple 2,2,1,1,1,1,1,0,0,0,1,1").code, 2);
}

TEST(Cli, Inv) {
  Outcome r = run("inv --spec 2,2,2,2,1,1,1,1");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["tuple"].dump(),
            R"({"p":2,"m":1,"n1":1,"n2":1,"sigma1":1,"sigma2":1,"o1":0,"o2":0,"op1":1,"op2":1,"u1":1,"u2":1})");
  EXPECT_TRUE(j["witness"].contains("b1"));
  r = run("inv --spec '{\"p\":3,\"M\":27,\"N1\":27,\"N2\":9,\"r1\":4,\"r2\":1,\"t1\":9,\"t2\":12}'");
  ASSERT_EQ(r.code, 0);
  j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["tuple"]["u2"], 4);
  EXPECT_EQ(run("inv --spec 3,27,27,9,4,28,9,6").code, 2);
  EXPECT_EQ(run("inv --spec 2,2,2,1,1,1,1,2").code, 2);
  EXPECT_EQ(run("inv --spec 2,2,2,2,1,1,1,1", "PGX_MAX_ELEMS=4").code, 2);
  EXPECT_EQ(run("inv --spec 2,2,2,2,1,1,1,1", "PGX_MAX_ELEMS=junk").code, 2);
}

TEST(Cli, Iso) {
  Outcome r = run("iso --a 2,2,2,1,1,1,2 --b 2,2,2,1,1,1,1");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "{\"isomorphic\":false,\"witness\":null}\n");
  r = run("--threads 2 iso --a 2,2,2,1,1,1,2 --b 2,2,2,2,1,1,1,2");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["isomorphic"].get<bool>());
  EXPECT_EQ(run("iso --a 2,2,2,1,1,1,2").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--threads x enumerate --p 2 --max-order-exp 3").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, SelftestSmall) {
  const Outcome r = run("selftest --p 2 --max-order-exp 5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(lines(r.out), 7u);
  EXPECT_EQ(run("selftest --p 2").code, 2);
}
