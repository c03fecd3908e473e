#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "madtradeoff/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int rc = madt::cli::run(args, out, err);
    if (out_text) *out_text = out.str() + err.str();
    return rc;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("madt_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}

TEST_CASE("usage errors return 1") {
    CHECK(run_cli({}) == 1);                      // missing subcommand
    CHECK(run_cli({"no-such-command"}) == 1);
    CHECK(run_cli({"check-inequalities", "--bogus"}) == 1);
    CHECK(run_cli({"--format", "xml", "check-inequalities"}) == 1);
    CHECK(run_cli({"kernel-constants", "--beta", "7"}) == 1);  // out of range
}

TEST_CASE("kernel constants output") {
    const auto dir = scratch_dir("kc");
    CHECK(run_cli({"--out-dir", dir.string(), "kernel-constants"}) == 0);
    const json j = json::parse(slurp(dir / "kernel_constants.json"));
    CHECK(j["beta"].get<double>() == 1.0);
    CHECK(j["l2_norm_sq"].get<double>() ==
          doctest::Approx(0.9833808129127263).epsilon(1e-10));
    CHECK(j["holder_norm"].get<double>() ==
          doctest::Approx(3.170357085710338).epsilon(1e-8));
    CHECK(j["K_at_zero"].get<double>() == 1.0);
    CHECK(j["meta"]["tool_version"].get<std::string>() == madt::cli::kVersion);
}

TEST_CASE("inequality suites pass and report no violations") {
    const auto dir = scratch_dir("chk");
    std::string text;
    CHECK(run_cli({"--out-dir", dir.string(), "check-inequalities",
                   "--trials", "300"}, &text) == 0);
    const json j = json::parse(slurp(dir / "inequalities.json"));
    CHECK(j["violations"].empty());
    CHECK(j["random_trials"].get<int>() == 300);
    CHECK(j["min_slack_lemma2"].get<double>() >= 0.0);
    CHECK(j["witness_literal_failures_on_grid"].get<int>() > 0);
}

TEST_CASE("literal witness bound fails with exit code 2") {
    const auto dir = scratch_dir("chk_lit");
    CHECK(run_cli({"--out-dir", dir.string(), "check-inequalities",
                   "--trials", "50", "--include-lemma3-literal"}) == 2);
    const json j = json::parse(slurp(dir / "inequalities.json"));
    CHECK_FALSE(j["violations"].empty());
    CHECK_FALSE(j["pinned_counterexample"]["literal_bound_holds"].get<bool>());
}

TEST_CASE("tightness search output is byte reproducible") {
    const auto dir = scratch_dir("ts");
    const std::vector<std::string> args = {
        "--out-dir", dir.string(), "--seed", "99",
        "tightness-search", "--iterations", "3000"};
    CHECK(run_cli(args) == 0);
    const std::string first = slurp(dir / "tightness_search.json");
    CHECK(run_cli(args) == 0);
    CHECK(slurp(dir / "tightness_search.json") == first);
    const json j = json::parse(first);
    CHECK(j["best_ratio"].get<double>() <= 1.0 + 1e-12);
    CHECK(j["meta"]["seed"].get<int>() == 99);
}

TEST_CASE("rao blackwell trials") {
    const auto dir = scratch_dir("rb");
    CHECK(run_cli({"--out-dir", dir.string(), "rao-blackwell",
                   "--trials", "200"}) == 0);
    const json j = json::parse(slurp(dir / "rao_blackwell.json"));
    CHECK(j["violations"].empty());
    CHECK(j["pinned"]["mad_p_after"].get<double>() <
          j["pinned"]["mad_p_before"].get<double>());
}

TEST_CASE("frontier run produces a clean summary") {
    const auto dir = scratch_dir("fr");
    CHECK(run_cli({"--out-dir", dir.string(), "frontier", "--m", "512",
                   "--n-list", "4096", "--n-list", "16384",
                   "--bandwidths", "1", "--bandwidths", "3"}) == 0);
    const json j = json::parse(slurp(dir / "frontier_summary.json"));
    CHECK(j["violations"].empty());
    CHECK(j["c"].get<double>() ==
          doctest::Approx(0.0003917939207533113).epsilon(1e-10));
    CHECK(j["compliant_count"].get<int>() > 0);
    const std::string csv = slurp(dir / "frontier.csv");
    CHECK(csv.find("n,gamma,bandwidth") != std::string::npos);
}

TEST_CASE("config file supplies global options") {
    const auto dir = scratch_dir("cfg");
    const fs::path ini = dir / "opts.ini";
    {
        std::ofstream f(ini);
        f << "seed=123\n";
        f << "out-dir=" << dir.string() << "\n";
    }
    CHECK(run_cli({"--config", ini.string(), "kernel-constants"}) == 0);
    const json j = json::parse(slurp(dir / "kernel_constants.json"));
    CHECK(j["meta"]["seed"].get<int>() == 123);
    // explicit flags win over the config file
    CHECK(run_cli({"--config", ini.string(), "--seed", "5",
                   "kernel-constants"}) == 0);
    const json j2 = json::parse(slurp(dir / "kernel_constants.json"));
    CHECK(j2["meta"]["seed"].get<int>() == 5);
}
