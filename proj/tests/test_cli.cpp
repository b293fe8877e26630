#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HELPKIT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(HELPKIT_TEST_DATA) + "/" + name; }

std::string tmp(const std::string& name) { return ::testing::TempDir() + name; }

nlohmann::json load(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Cli, BuildReportsStructure) {
  const auto r = run("build --input " + data("s3.txt"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["order"], 6);
  EXPECT_EQ(j["class_count"], 3);
  EXPECT_EQ(j["schema_version"], 1);
  for (const char* key : {"center", "derived", "socle", "exponent", "is_abelian", "is_nilpotent", "is_hamiltonian",
                          "sylow_orders", "classes"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, BuildWritesGroupFileThatRebuilds) {
  const auto out = tmp("s3_table.txt");
  ASSERT_EQ(run("build --input " + data("s3.txt") + " --out " + out).code, 0);
  EXPECT_EQ(load(out + ".json")["order"], 6);
  const auto again = run("build --input " + out);
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(nlohmann::json::parse(again.out)["class_count"], 3);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("build --input " + data("empty.txt")).code, 2);
  EXPECT_EQ(run("build --input " + data("too_big.txt")).code, 2);
  EXPECT_EQ(run("build --input /nonexistent/group.txt").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("audit --input " + data("s3.txt") + " --bound 0").code, 2);
  EXPECT_EQ(run("audit --input " + data("s3.txt") + " --characters some").code, 2);
  EXPECT_EQ(run("lemmas --input " + data("s3.txt")).code, 2);
}

TEST(Cli, AuditCertifiesOrderSix) {
  const auto out = tmp("s3_audit.json");
  ASSERT_EQ(run("audit --input " + data("s3.txt") + " --orders 2,3,6 --out " + out).code, 0);
  const auto j = load(out);
  ASSERT_EQ(j["levels"].size(), 3u);
  for (const auto& l : j["levels"]) EXPECT_EQ(l["status"], "certified");
  EXPECT_EQ(j["levels"][0]["survivors"].size(), 1u);
}

TEST(Cli, AuditOrderOneIsTrivial) {
  const auto r = run("audit --input " + data("q8.txt") + " --orders 1 --characters linear");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["levels"][0]["status"], "certified");
  EXPECT_EQ(j["characters"], "linear");
}

TEST(Cli, AuditBudgetExit) {
  const auto r = run("audit --input " + data("c7xc7.txt") + " --orders 7 --node-budget 1000");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(nlohmann::json::parse(r.out)["levels"][0]["status"], "budget");
}

TEST(Cli, CorpusAndLemmas) {
  const auto manifest = tmp("manifest.json");
  ASSERT_EQ(run("corpus --max-order 12 --out " + manifest).code, 0);
  const auto m = load(manifest);
  EXPECT_GT(m["entries"].size(), 5u);
  const auto a = tmp("ledger_a.json"), b = tmp("ledger_b.json");
  ASSERT_EQ(run("lemmas --input " + manifest + " --out " + a).code, 0);
  ASSERT_EQ(run("lemmas --input " + manifest + " --workers 2 --out " + b).code, 0);
  const auto la = load(a), lb = load(b);
  EXPECT_EQ(la["summary"], lb["summary"]);
  EXPECT_EQ(la["summary"]["violations"], 0);
  bool control_gated = false;
  for (const auto& e : la["entries"])
    if (e["family"] == "control")
      for (const auto& v : e["verdicts"])
        if (v["lemma"] == "centralizer" && v["hypotheses_hold"] == false) control_gated = true;
  EXPECT_TRUE(control_gated);
}

TEST(Cli, EmptyManifest) {
  const auto path = tmp("empty_manifest.json");
  std::ofstream(path) << R"({"schema_version": 1, "max_order": 0, "entries": []})";
  const auto r = run("lemmas --input " + path);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["entries"].size(), 0u);
}
