/**
 * @file test_harness.cpp
 * @brief Plan round-trips, deterministic execution, exact output formats,
 *        and recomputable aggregates.
 */

#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "moducom/core/errors.hpp"
#include "moducom/core/rng.hpp"
#include "moducom/harness/hash.hpp"
#include "moducom/harness/plan.hpp"
#include "moducom/harness/record.hpp"
#include "moducom/harness/run.hpp"
#include "moducom/harness/serialize.hpp"
#include "moducom/harness/sweep.hpp"
#include "moducom/scheme/session.hpp"

using moducom::ValidationError;
using moducom::core::Alphabet;
using moducom::core::NoiseSpec;
using moducom::core::prf64;
namespace core = moducom::core;
namespace harness = moducom::harness;
namespace scheme = moducom::scheme;

namespace {

const Alphabet q2{2};

scheme::SchemeConfig small_config(std::size_t n, unsigned block_bits) {
    scheme::SchemeConfig config;
    config.n = n;
    config.alphabet = q2;
    config.block_bits = block_bits;
    config.epsilon = 0.05;
    return config;
}

harness::PlanEntry entry_of(std::size_t n, unsigned block_bits, const std::string& noise,
                            std::uint64_t trials) {
    harness::PlanEntry entry;
    entry.config = small_config(n, block_bits);
    entry.noise = NoiseSpec::parse(noise, q2);
    entry.trials = trials;
    return entry;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("median and aggregates are pure functions of the rows") {
    CHECK(harness::median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(harness::median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK(harness::median({7.0}) == 7.0);
    CHECK_THROWS_AS(harness::median({}), ValidationError);
    CHECK_THROWS_AS(harness::aggregate_rows({}), ValidationError);

    std::vector<harness::TrialRow> rows(4);
    rows[0].actual_rate = 0.4;
    rows[0].rate_floor = 0.1;
    rows[1].actual_rate = 0.2;
    rows[1].rate_floor = 0.1;
    rows[2].actual_rate = 0.05; // error-free below floor: the one violation
    rows[2].rate_floor = 0.1;
    rows[3].actual_rate = 0.0; // below floor but errored: not a violation
    rows[3].rate_floor = 0.1;
    rows[3].error = true;
    const harness::Aggregates agg = harness::aggregate_rows(rows);
    CHECK(agg.mean_actual_rate == doctest::Approx(0.1625).epsilon(1e-15));
    CHECK(agg.median_actual_rate == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(agg.error_rate == 0.25);
    CHECK(agg.floor_violations == 1);
}

TEST_CASE("plan JSON round-trip and canonical hashing") {
    harness::ExperimentPlan plan;
    plan.seed = 42;
    plan.out_path = "runs.csv";
    plan.format = harness::OutputFormat::csv;
    plan.entries.push_back(entry_of(512, 6, "bern:p=0.02", 10));
    plan.entries.push_back(entry_of(256, 4, "periodic:0,1", 5));
    plan.entries[1].config.metric = scheme::MetricKind::kt;
    plan.entries[1].config.kt_k_max = 3;

    const harness::ExperimentPlan back = harness::plan_from_json(harness::plan_to_json(plan));
    CHECK(back.seed == plan.seed);
    CHECK(back.out_path == plan.out_path);
    CHECK(back.format == plan.format);
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries[0].config.n == 512);
    CHECK(back.entries[0].config.block_bits == 6);
    CHECK(back.entries[0].noise.canonical() == plan.entries[0].noise.canonical());
    CHECK(back.entries[1].config.metric == scheme::MetricKind::kt);
    CHECK(back.entries[1].config.kt_k_max == 3);
    CHECK(back.entries[1].trials == 5);
    CHECK(back.hash() == plan.hash());

    // The hash identifies the experiment content, not the file destination.
    harness::ExperimentPlan moved = plan;
    moved.out_path = "elsewhere.csv";
    moved.format = harness::OutputFormat::json;
    CHECK(moved.hash() == plan.hash());

    harness::ExperimentPlan changed = plan;
    changed.seed = 43;
    CHECK(changed.hash() != plan.hash());
    changed = plan;
    changed.entries[0].trials = 11;
    CHECK(changed.hash() != plan.hash());
    changed = plan;
    changed.entries[0].noise = NoiseSpec::parse("bern:p=0.03", q2);
    CHECK(changed.hash() != plan.hash());

    CHECK_THROWS_AS(harness::plan_from_json("not json"), ValidationError);
    CHECK_THROWS_AS(harness::plan_from_json("{\"entries\": []}"), ValidationError);
    CHECK_THROWS_AS(harness::plan_from_json("{\"entries\": [{}]}"), ValidationError);
    CHECK_THROWS_AS(harness::plan_from_json(
                        R"({"entries": [], "surprise": 1})"),
                    ValidationError);
    CHECK_THROWS_AS(
        harness::plan_from_json(
            R"({"entries": [{"n":64,"q":2,"K":4,"eps":0.05,"noise":"zero","trials":1,"metric":"xz"}]})"),
        ValidationError);
    CHECK_THROWS_AS(
        harness::plan_from_json(
            R"({"format":"xml","entries": [{"n":64,"q":2,"K":4,"eps":0.05,"noise":"zero","trials":1}]})"),
        ValidationError);
    CHECK_THROWS_AS(
        harness::plan_from_json(
            R"({"entries": [{"n":64,"q":2,"K":4,"eps":0.05,"noise":"zero","trials":0}]})"),
        ValidationError);
}

TEST_CASE("single deterministic trial: the row is the session, verbatim") {
    harness::ExperimentPlan plan;
    plan.seed = 7;
    plan.entries.push_back(entry_of(1024, 8, "zero", 1));

    const harness::RunRecord record = harness::run_plan(plan);
    REQUIRE(record.rows.size() == 1);
    const harness::TrialRow& row = record.rows[0];
    CHECK(record.aggregates.error_rate == 0.0);
    CHECK(record.aggregates.floor_violations == 0);
    CHECK(record.plan_hash == plan.hash());

    // Recompute the session independently from the derived seed.
    const std::uint64_t seed = prf64(plan.seed ^ moducom::core::domain::trial, 0, 0);
    CHECK(row.seed == seed);
    scheme::SchemeConfig config = plan.entries[0].config;
    config.seed = seed;
    const auto z = core::noise_generate(plan.entries[0].noise, q2, config.n, seed);
    auto messages = scheme::MessageSource::random(seed);
    const scheme::SessionLog log = scheme::run_session(config, z, messages);
    CHECK(row.decoded_blocks == log.decoded_blocks);
    CHECK(row.decoded_bits == log.decoded_bits);
    CHECK(row.actual_rate == log.actual_rate);
    CHECK(row.empirical_rate == log.empirical_rate_value);
    CHECK(row.rate_floor == log.rate_floor_value);
    CHECK(row.error == log.error);
}

TEST_CASE("three specs times 100 trials: 300 ordered rows, recomputable aggregates") {
    harness::ExperimentPlan plan;
    plan.seed = 99;
    plan.entries.push_back(entry_of(512, 6, "zero", 100));
    plan.entries.push_back(entry_of(512, 6, "bern:p=0.02", 100));
    plan.entries.push_back(entry_of(512, 6, "periodic:0,1", 100));

    const harness::RunRecord record = harness::run_plan(plan, 4);
    REQUIRE(record.rows.size() == 300);
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
        CHECK(record.rows[i].entry == i / 100);
        CHECK(record.rows[i].trial == i % 100);
    }

    const harness::Aggregates again = harness::aggregate_rows(record.rows);
    CHECK(again.mean_actual_rate == record.aggregates.mean_actual_rate);
    CHECK(again.median_actual_rate == record.aggregates.median_actual_rate);
    CHECK(again.error_rate == record.aggregates.error_rate);
    CHECK(again.floor_violations == 0);
    CHECK(record.aggregates.error_rate <= 0.05);
}

TEST_CASE("replay gives byte-identical CSV, whatever the job count") {
    const auto out = std::filesystem::temp_directory_path() / "moducom_replay_test.csv";
    harness::ExperimentPlan plan;
    plan.seed = 5;
    plan.out_path = out.string();
    plan.entries.push_back(entry_of(512, 6, "bern:p=0.05", 8));
    plan.entries.push_back(entry_of(256, 4, "zero", 4));

    harness::run_plan(plan, 1);
    const std::string first = read_file(out);
    harness::run_plan(plan, 1);
    const std::string second = read_file(out);
    harness::run_plan(plan, 4);
    const std::string third = read_file(out);
    CHECK(first == second);
    CHECK(first == third);
    CHECK(!std::filesystem::exists(out.string() + ".tmp"));
    std::filesystem::remove(out);

    // Multi-entry output carries the entry column.
    CHECK(first.find("entry,trial,seed,") != std::string::npos);
    CHECK(first.rfind("# plan=", 0) == 0);
}

TEST_CASE("CSV and JSON renderings are exact and mirror each other") {
    CHECK(harness::format_double(0.5) == "0.5");
    CHECK(harness::format_double(0.05) == "0.05");
    CHECK(harness::format_double(0.140625) == "0.140625");
    CHECK(harness::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(harness::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(harness::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");

    harness::RunRecord record;
    record.plan_hash = 0xabcdef0123456789ULL;
    harness::TrialRow row;
    row.entry = 0;
    row.trial = 2;
    row.seed = 5;
    row.decoded_blocks = 3;
    row.decoded_bits = 18;
    row.actual_rate = 0.5;
    row.empirical_rate = 0.25;
    row.rate_floor = 0.125;
    row.error = true;
    record.rows.push_back(row);
    record.aggregates = harness::aggregate_rows(record.rows);

    CHECK(harness::record_to_csv(record, false) ==
          "# plan=abcdef0123456789\n"
          "trial,seed,B,bits,R_act,r_emp,rate_floor,error\n"
          "2,5,3,18,0.5,0.25,0.125,1\n");
    CHECK(harness::record_to_csv(record, true) ==
          "# plan=abcdef0123456789\n"
          "entry,trial,seed,B,bits,R_act,r_emp,rate_floor,error\n"
          "0,2,5,3,18,0.5,0.25,0.125,1\n");

    const auto parsed = nlohmann::json::parse(harness::record_to_json(record, true));
    CHECK(parsed["plan"] == "abcdef0123456789");
    REQUIRE(parsed["rows"].size() == 1);
    CHECK(parsed["rows"][0]["entry"] == 0);
    CHECK(parsed["rows"][0]["R_act"] == 0.5);
    CHECK(parsed["rows"][0]["error"] == true);
    CHECK(parsed["aggregates"]["floor_violations"] == 0);
    CHECK(parsed["aggregates"]["error_rate"] == 1.0);
}

TEST_CASE("unwritable output path fails loudly") {
    harness::ExperimentPlan plan;
    plan.out_path = "/nonexistent_dir_for_sure/out.csv";
    plan.entries.push_back(entry_of(64, 3, "zero", 1));
    CHECK_THROWS_AS(harness::run_plan(plan), ValidationError);
}

TEST_CASE("sweep over horizons: medians, trends, exact formats") {
    harness::SweepSpec spec;
    spec.alphabet = q2;
    spec.noise = NoiseSpec::parse("zero", q2);
    spec.n_grid = {256, 1024, 4096};
    spec.block_bits = 6;
    spec.epsilon = 0.05;
    spec.trials = 3;
    spec.seed = 1;

    const std::vector<harness::SweepRow> rows = harness::sweep_rates(spec);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n == spec.n_grid[i]);
        CHECK(rows[i].iid_capacity == 1.0); // all-zero noise: no entropy
        CHECK(rows[i].actual_rate > 0.0);
        if (i > 0) CHECK(rows[i].empirical_rate > rows[i - 1].empirical_rate);
    }
    CHECK(rows.back().empirical_rate > 0.84); // 1 - 625/4096

    const std::string csv = harness::sweep_to_csv(rows, spec.hash());
    CHECK(csv.rfind("# plan=" + harness::hash_hex(spec.hash()) + "\n", 0) == 0);
    CHECK(csv.find("n,R_act,r_emp,rate_floor,iid_capacity\n") != std::string::npos);
    const auto parsed = nlohmann::json::parse(harness::sweep_to_json(rows, spec.hash()));
    CHECK(parsed["rows"].size() == 3);
    CHECK(parsed["rows"][2]["n"] == 4096);

    harness::SweepSpec bad = spec;
    bad.n_grid = {};
    CHECK_THROWS_AS(harness::sweep_rates(bad), ValidationError);
    bad = spec;
    bad.n_grid = {1024, 1024};
    CHECK_THROWS_AS(harness::sweep_rates(bad), ValidationError);
    bad = spec;
    bad.trials = 0;
    CHECK_THROWS_AS(harness::sweep_rates(bad), ValidationError);
}

} // TEST_SUITE
