#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>

#include <json.hpp>

#include "oracles.hpp"
#include "tcprof/error.hpp"
#include "tcprof/io.hpp"
#include "tcprof/pipeline.hpp"
#include "tcprof/report.hpp"

using namespace tcprof;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("tcprof_pipeline_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

PipelineConfig fixture_config(const fs::path& out) {
    const fs::path data(TCPROF_FIXTURE_DIR);
    PipelineConfig c;
    c.network_path = (data / "network.tsv").string();
    c.oncogene_path = (data / "oncogenes.txt").string();
    c.drug_target_path = (data / "drug_targets.tsv").string();
    c.out_dir = out.string();
    c.path_length_threshold = 4;
    return c;
}

int run_cli(const std::string& args, const fs::path& err_file) {
    const std::string cmd = std::string("\"") + TCPROF_CLI_PATH + "\" " + args + " > /dev/null 2> \"" +
                            err_file.string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("warm cache rerun skips PPR and reproduces every output") {
    const auto out = scratch("warm");
    const auto config = fixture_config(out);
    const auto first = run_pipeline(config);
    CHECK(first.ppr_computed);
    CHECK_FALSE(first.pen_cache_hit);
    std::map<std::string, std::string> before;
    for (const auto& f : fs::directory_iterator(out))
        if (f.is_regular_file()) before[f.path().filename().string()] = read_text_file(f.path());
    const auto second = run_pipeline(config);
    CHECK(second.pen_cache_hit);
    CHECK_FALSE(second.ppr_computed);
    for (const auto& [name, text] : before) {
        if (name == "manifest.json") continue;
        CHECK_MESSAGE(read_text_file(out / name) == text, name);
    }
    const auto manifest = json::parse(read_text_file(out / "manifest.json"));
    CHECK(manifest["cache"]["pen"] == "hit");
    CHECK(manifest["cache"]["ppr"] == "skipped");
    CHECK(json::parse(before["manifest.json"])["cache"]["ppr"] == "miss");
    fs::remove_all(out);
}

TEST_CASE("cache directory falls back to the environment variable") {
    PipelineConfig c;
    c.out_dir = "o";
    ::setenv("TCPROF_CACHE_DIR", "/tmp/somewhere", 1);
    CHECK(c.resolved_cache_dir() == fs::path("/tmp/somewhere"));
    ::unsetenv("TCPROF_CACHE_DIR");
    CHECK(c.resolved_cache_dir() == fs::path("o") / "cache");
    c.cache_dir = "explicit";
    CHECK(c.resolved_cache_dir() == fs::path("explicit"));
}

TEST_CASE("invalid alpha names the field") {
    auto config = fixture_config(scratch("alpha"));
    config.alpha = 1.5;
    try {
        run_pipeline(config);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "alpha");
        const auto j = error_json(e);
        CHECK(j["error"]["field"] == "alpha");
        CHECK(j["error"]["exit_code"] == 1);
    }
}

TEST_CASE("config validation ranges") {
    auto c = fixture_config("out");
    CHECK_NOTHROW(c.validate());
    for (auto mutate : std::vector<std::function<void(PipelineConfig&)>>{
             [](PipelineConfig& x) { x.alpha = 0.0; }, [](PipelineConfig& x) { x.epsilon = 0.0; },
             [](PipelineConfig& x) { x.path_length_threshold = 1; }, [](PipelineConfig& x) { x.k = 1; },
             [](PipelineConfig& x) { x.n_bucket = 1; }, [](PipelineConfig& x) { x.tolerance = -1.0; }}) {
        auto bad = c;
        mutate(bad);
        CHECK_THROWS_AS(bad.validate(), ValidationError);
    }
}

TEST_CASE("config json round trip") {
    auto c = fixture_config("out");
    c.m_levels = {10, 20, 40, 50};
    c.measure = MeasureTag::DistanceDiff;
    c.seed = 12345;
    const auto back = PipelineConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK_THROWS_AS(PipelineConfig::from_json(json{{"alpha", "high"}}), ValidationError);
}

TEST_CASE("exit codes by error kind") {
    CHECK(exit_code(ErrorKind::Validation) == 1);
    CHECK(exit_code(ErrorKind::Parse) == 1);
    CHECK(exit_code(ErrorKind::Compute) == 2);
    CHECK(exit_code(ErrorKind::Io) == 3);
}

TEST_CASE("svg has one group per bucket and one bar per m level") {
    const auto out = scratch("svg");
    const auto result = run_pipeline(fixture_config(out));
    const auto svg = histogram_svg(result.histogram);
    CHECK(count(svg, "<g class=\"bucket\"") == 5);
    CHECK(count(svg, "class=\"bar\"") == 5 * 4);
    CHECK(svg.find("% of known combinations") != std::string::npos);

    DeltaHistogram degenerate = result.histogram;
    degenerate.buckets.resize(1);
    degenerate.degenerate = true;
    CHECK(count(histogram_svg(degenerate), "<g class=\"bucket\"") == 1);

    DeltaHistogram empty = result.histogram;
    empty.total_known = 0;
    for (auto& b : empty.buckets) {
        std::fill(b.known_in_top.begin(), b.known_in_top.end(), 0);
        std::fill(b.percent.begin(), b.percent.end(), 0.0);
        b.coverage = 0;
    }
    const auto zero_svg = histogram_svg(empty);
    CHECK(count(zero_svg, "class=\"bar\"") == 5 * 4);
    CHECK(zero_svg.find("height=\"0") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("histogram json carries thresholds and per-m percentages") {
    const auto out = scratch("json");
    run_pipeline(fixture_config(out));
    const auto h = json::parse(read_text_file(out / "histogram.json"));
    CHECK(h["buckets"].size() == 5);
    std::uint64_t total = 0;
    for (const auto& b : h["buckets"]) total += b["combo_count"].get<std::uint64_t>();
    CHECK(total == h["total_combos"].get<std::uint64_t>());
    CHECK(h["thresholds"]["bucket"].is_number_integer());
    CHECK(h["buckets"][0]["percent"].contains("50"));
    fs::remove_all(out);
}

TEST_CASE("CLI reports validation errors as JSON with exit code 1") {
    const auto dir = scratch("cli");
    const fs::path data(TCPROF_FIXTURE_DIR);
    const auto err = dir / "err.json";
    const std::string inputs = "--network \"" + (data / "network.tsv").string() + "\" --oncogenes \"" +
                               (data / "oncogenes.txt").string() + "\" --drug-targets \"" +
                               (data / "drug_targets.tsv").string() + "\"";
    CHECK(run_cli("run " + inputs + " --alpha 1.5 --out-dir \"" + (dir / "o").string() + "\"", err) == 1);
    const auto j = json::parse(read_text_file(err));
    CHECK(j["error"]["kind"] == "validation");
    CHECK(j["error"]["field"] == "alpha");

    CHECK(run_cli("ppr --network \"" + (dir / "missing.tsv").string() + "\"", err) == 3);
    CHECK(json::parse(read_text_file(err))["error"]["kind"] == "io");

    write_text_file(dir / "bad.tsv", "A\tB\n");
    CHECK(run_cli("ppr --network \"" + (dir / "bad.tsv").string() + "\"", err) == 1);
    const auto parse = json::parse(read_text_file(err));
    CHECK(parse["error"]["kind"] == "parse");
    CHECK(parse["error"]["line"] == 1);

    write_text_file(dir / "cycle.tsv", "A\tB\t1\nB\tA\t1\n");
    CHECK(run_cli("ppr --network \"" + (dir / "cycle.tsv").string() + "\" --alpha 0.000001 --tol 1e-12", err) == 2);
    CHECK(json::parse(read_text_file(err))["error"]["kind"] == "compute");

    CHECK(run_cli("nonsense", err) == 1);
    CHECK(run_cli("esr --worst pen=226049,ppr=539293", err) == 0);
    fs::remove_all(dir);
}
