#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "distress/cli.hpp"
#include "distress/model_io.hpp"
#include "test_support.hpp"

using namespace distress;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("distress-cli-" + std::to_string(std::rand()) + "-" +
                                       std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& body) const {
    const auto p = (dir / name).string();
    write_file(p, body);
    return p;
  }
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

const std::string kModel = fixtures::path("paper_model.json");
const std::string kPanelA = fixtures::path("appendix_a.csv");
const std::string kPanelB = fixtures::path("appendix_b.csv");

}  // namespace

TEST_CASE("fit prints the summary and writes a loadable model") {
  TempDir tmp;
  const auto model = (tmp.dir / "m.json").string();
  const auto r = run({"fit", "--train", fixtures::path("table3_zscores.csv"), "--window", "2012:2015", "--model", model});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "Eigenvalue 3.136"));
  CHECK(contains(r.out, "Bankrupt -4.016"));
  CHECK(contains(r.out, "Non bankrupt 0.669"));
  const auto loaded = model_from_json(read_file(model));
  CHECK(loaded.model.eigenvalue == doctest::Approx(3.136).epsilon(1e-3));
}

TEST_CASE("fit json output") {
  const auto r = run({"fit", "--train", fixtures::path("table2.csv"), "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["eigenvalue"].get<double>() == doctest::Approx(3.1014).epsilon(1e-3));
  CHECK(j["coefficients"]["bdtla"].get<double>() == doctest::Approx(4.688).epsilon(1e-3));
}

TEST_CASE("an inverted window is a config error before any file is read") {
  const auto r = run({"fit", "--train", "/does/not/exist.csv", "--window", "2016:2015"});
  CHECK(r.code == static_cast<int>(ExitCode::Config));
  CHECK(contains(r.err, "inverted window"));
}

TEST_CASE("a training file without labels is a schema error") {
  TempDir tmp;
  const auto f = tmp.write("t.csv", "bank,year,eaa,roae,roaa,nii,laaa,bdtla\nA,2015,1,1,1,1,1,1\n");
  const auto r = run({"fit", "--train", f});
  CHECK(r.code == static_cast<int>(ExitCode::Data));
  CHECK(contains(r.err, "schema error"));
}

TEST_CASE("parse errors carry the file name and row") {
  TempDir tmp;
  const auto f = tmp.write("t.csv", "bank,year,eaa,roae,roaa,nii,laaa,bdtla,label\nA,2015,x,1,1,1,1,1,bankrupt\n");
  const auto r = run({"fit", "--train", f});
  CHECK(r.code == static_cast<int>(ExitCode::Data));
  CHECK(contains(r.err, f));
  CHECK(contains(r.err, "row 1"));
}

TEST_CASE("a singular fit has its own exit code") {
  TempDir tmp;
  // roae is an exact multiple of eaa.
  std::string body = "bank,year,eaa,roae,roaa,nii,laaa,bdtla,label\n";
  for (int i = 0; i < 10; ++i) {
    const double x = 0.1 * i + 0.01 * (i % 3);
    body += "B" + std::to_string(i) + ",2013," + std::to_string(x) + "," + std::to_string(2 * x) + "," +
            std::to_string(0.02 * (i % 4)) + "," + std::to_string(0.3 + (i * i % 7) * 0.01) + "," +
            std::to_string(0.5 - 0.02 * (i % 5)) + "," + std::to_string(0.05 * ((i * 3) % 7)) + "," +
            (i < 4 ? "bankrupt" : "nonbankrupt") + "\n";
  }
  const auto r = run({"fit", "--train", tmp.write("c.csv", body)});
  CHECK(r.code == static_cast<int>(ExitCode::Fit));
  CHECK(contains(r.err, "singular"));
}

TEST_CASE("diagnose reproduces the published significance blocks") {
  const auto r = run({"diagnose", "--model", kModel});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "Wilks' lambda 0.242  chi-square 12.778  df 6  sig. 0.047"));
  CHECK(contains(r.out, "discriminant function is significant"));
  CHECK(contains(r.out, "F approx. 3.722  df1 1  df2 26.596  sig. 0.064"));
  CHECK(contains(r.out, "variance of each group is homogenous"));
}

TEST_CASE("a zero eigenvalue model is not significant") {
  TempDir tmp;
  auto doc = nlohmann::ordered_json::parse(read_file(kModel));
  doc["eigenvalue"] = 0.0;
  doc["canonical_correlation"] = 0.0;
  doc["wilks_lambda"] = 1.0;
  const auto f = tmp.write("zero.json", doc.dump());
  const auto r = run({"diagnose", "--model", f, "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["wilks"]["verdict"] == "discriminant function is not significant");
}

TEST_CASE("a corrupt model file is a load error") {
  TempDir tmp;
  const auto f = tmp.write("bad.json", "{\"format\": \"distress-lda-model\"");
  CHECK(run({"diagnose", "--model", f}).code == static_cast<int>(ExitCode::Load));
}

TEST_CASE("evaluate over the appendix panels") {
  const auto r = run({"evaluate", "--model", kModel, "--panel", kPanelA, "--panel", kPanelB, "--zones", "paper",
                      "--mode", "raw", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "raw");
  CHECK(j["zones"]["source"] == "explicit-override");
  bool seen2019 = false;
  for (const auto& y : j["years"]) {
    if (y["year"] == 2019) {
      seen2019 = true;
      CHECK(y["accuracy"].get<double>() == doctest::Approx(1.0));
      CHECK(y["counts"]["nonbankrupt"] == 17);
    }
  }
  CHECK(seen2019);

  const auto text = run({"evaluate", "--model", kModel, "--panel", kPanelA, "--panel", kPanelB, "--zones", "paper"});
  REQUIRE(text.code == 0);
  CHECK(contains(text.out, "▼ -8.96%"));
}

TEST_CASE("json reports are byte-identical across runs") {
  const std::vector<std::string> args{"evaluate", "--model", kModel, "--panel", kPanelA, "--panel", kPanelB,
                                      "--zones", fixtures::path("paper_zones.json"), "--format", "json"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("unlabelled banks stop the evaluation") {
  TempDir tmp;
  const auto f = tmp.write("p.csv", "bank,year,eaa,roae,roaa,nii,laaa,bdtla\nNew Bank,2020,0.1,0.1,0.01,0.05,0.4,0.05\n");
  const auto r = run({"evaluate", "--model", kModel, "--panel", f});
  CHECK(r.code == static_cast<int>(ExitCode::Evaluation));
  CHECK(contains(r.err, "New Bank"));
  const auto ok = run({"evaluate", "--model", kModel, "--panel", f, "--label", "New Bank=nonbankrupt"});
  CHECK(ok.code == 0);
}

TEST_CASE("a panel of unavailable rows reports a notice and succeeds") {
  TempDir tmp;
  const auto f = tmp.write("p.csv", "bank,year,eaa,roae,roaa,nii,laaa,bdtla\nA,2015,0,0,0,0,0,0\n");
  const auto r = run({"evaluate", "--model", kModel, "--panel", f});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "no available records"));
}

TEST_CASE("classify lists scores and zones") {
  const auto r = run({"classify", "--model", kModel, "--panel", kPanelA, "--zones", "paper", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["scores"].size() == 12);
}

TEST_CASE("config files and flag precedence") {
  TempDir tmp;
  const auto kv = tmp.write("c.conf",
                            "# evaluation defaults\nmodel = " + kModel + "\npanel = " + kPanelA + "\npanel = " + kPanelB +
                                "\nzones = paper\nformat = json\n");
  const auto r = run({"evaluate", "--config", kv});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["years"].size() == 9);
  const auto text = run({"evaluate", "--config", kv, "--format", "text"});
  CHECK(contains(text.out, "Three-zone classification"));

  const auto js = tmp.write("c.json", nlohmann::json{{"model", kModel},
                                                     {"panel", {kPanelA, kPanelB}},
                                                     {"zones", "paper"},
                                                     {"alpha", 0.01}}
                                          .dump());
  CHECK(run({"evaluate", "--config", js}).code == 0);
  const auto diag = run({"diagnose", "--config", js});
  CHECK(contains(diag.out, "not significant"));

  setenv("DISTRESS_LDA_CONFIG", js.c_str(), 1);
  CHECK(run({"evaluate"}).code == 0);
  unsetenv("DISTRESS_LDA_CONFIG");

  const auto bad = tmp.write("bad.conf", "colour = blue\n");
  CHECK(run({"evaluate", "--config", bad}).code == static_cast<int>(ExitCode::Config));
}

TEST_CASE("flag validation") {
  CHECK(run({"diagnose", "--model", kModel, "--alpha", "1.5"}).code == static_cast<int>(ExitCode::Config));
  CHECK(run({"evaluate", "--model", kModel, "--panel", kPanelA, "--mode", "fancy"}).code ==
        static_cast<int>(ExitCode::Config));
  CHECK(run({"evaluate", "--model", kModel, "--panel", kPanelA, "--label", "nobank"}).code ==
        static_cast<int>(ExitCode::Config));
  CHECK(run({"frobnicate"}).code == static_cast<int>(ExitCode::Config));
  CHECK(run({}).code == static_cast<int>(ExitCode::Config));
  CHECK(run({"evaluate", "--panel", kPanelA}).code == static_cast<int>(ExitCode::Config));
}
