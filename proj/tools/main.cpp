/**
 * @file main.cpp
 * @brief Command-line front end for the modulo-additive feedback-communication
 *        toolkit.
 *
 * Subcommands:
 *   simulate     run rateless feedback sessions against a noise model
 *   compress     code-length report for a noise sequence (parsing + mixture)
 *   bounds       tabulate redundancy envelopes and critical-horizon estimates
 *   ifb-eval     evaluate a fixed block code iterated over a noise sequence
 *   testchannel  generate shared-suffix noise and write it as a MODZ file
 *   sweep        median session rates across a horizon grid
 *
 * Global flags --seed, --jobs, --out, --format apply to every subcommand
 * (an empty --out prints to stdout). Exit codes: 0 success; 2 validation
 * error (bad flags, malformed input files, infeasible parameters); 3
 * invariant violation detected while running, e.g. an error-free session
 * whose achieved rate falls below its proven floor.
 */

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moducom/bounds/bounds.hpp"
#include "moducom/core/errors.hpp"
#include "moducom/core/modz_io.hpp"
#include "moducom/core/noise.hpp"
#include "moducom/harness/hash.hpp"
#include "moducom/harness/plan.hpp"
#include "moducom/harness/run.hpp"
#include "moducom/harness/serialize.hpp"
#include "moducom/harness/sweep.hpp"
#include "moducom/refsys/block_code.hpp"
#include "moducom/refsys/collapsed.hpp"
#include "moducom/refsys/iterated.hpp"
#include "moducom/srccode/kt_mixture.hpp"
#include "moducom/srccode/lz78.hpp"

namespace {

namespace core = moducom::core;
namespace srccode = moducom::srccode;
namespace bounds = moducom::bounds;
namespace refsys = moducom::refsys;
namespace harness = moducom::harness;
using moducom::require;
using moducom::ValidationError;

/// Flags shared by every subcommand.
struct Globals {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string out;             ///< empty = stdout
    std::string format = "csv";  ///< csv | json (table-producing subcommands)
};

/// Print to stdout or write atomically to the chosen path.
void emit(const Globals& globals, const std::string& text) {
    if (globals.out.empty())
        std::cout << text;
    else
        harness::write_text_atomic(globals.out, text);
}

/// True when q^k <= n, without overflowing the product.
bool power_at_most(unsigned q, unsigned k, std::uint64_t n) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (acc > n / q) return false;
        acc *= q;
    }
    return acc <= n;
}

std::uint64_t parse_u64_field(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const std::uint64_t value = std::stoull(text, &used);
        require(used == text.size(), what + " has trailing characters: " + text);
        return value;
    } catch (const std::logic_error&) {
        throw ValidationError(what + " is not an unsigned integer: " + text);
    }
}

/// Parse "start:stop:points" into a geometric (log-spaced) grid; collapses
/// rounding duplicates, so the result can be shorter than `points`.
std::vector<std::uint64_t> parse_geometric_grid(const std::string& text) {
    const std::size_t a = text.find(':');
    const std::size_t b = text.find(':', a == std::string::npos ? a : a + 1);
    require(a != std::string::npos && b != std::string::npos,
            "--n-grid must look like start:stop:points");
    const std::uint64_t start = parse_u64_field(text.substr(0, a), "--n-grid start");
    const std::uint64_t stop = parse_u64_field(text.substr(a + 1, b - a - 1), "--n-grid stop");
    const std::uint64_t points = parse_u64_field(text.substr(b + 1), "--n-grid points");
    require(start >= 1, "--n-grid start must be at least 1");
    require(stop >= start, "--n-grid stop must be at least start");
    require(points >= 1 && points <= 100000, "--n-grid points must be in 1..100000");
    std::vector<std::uint64_t> grid;
    if (points == 1 || start == stop) {
        grid.push_back(start);
        return grid;
    }
    const double lo = std::log(static_cast<double>(start));
    const double hi = std::log(static_cast<double>(stop));
    for (std::uint64_t j = 0; j < points; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(points - 1);
        auto n = static_cast<std::uint64_t>(std::llround(std::exp(lo + (hi - lo) * t)));
        n = std::clamp(n, start, stop);
        if (grid.empty() || n != grid.back()) grid.push_back(n);
    }
    return grid;
}

std::vector<std::size_t> parse_comma_grid(const std::string& text) {
    // A colon means the geometric start:stop:points form; otherwise an
    // explicit comma-separated list of horizons.
    if (text.find(':') != std::string::npos) {
        const std::vector<std::uint64_t> geometric = parse_geometric_grid(text);
        return {geometric.begin(), geometric.end()};
    }
    std::vector<std::size_t> grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(',', pos);
        const std::string field =
            text.substr(pos, next == std::string::npos ? next : next - pos);
        require(!field.empty(), "--n-grid has an empty field");
        grid.push_back(static_cast<std::size_t>(parse_u64_field(field, "--n-grid entry")));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    require(!grid.empty(), "--n-grid must not be empty");
    return grid;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::uint64_t n = 0;
    unsigned q = 2;
    unsigned block_bits = 1;
    double epsilon = 0.05;
    std::string metric = "lz78";
    std::string noise;
    std::uint64_t trials = 1;
};

void run_simulate(const SimulateArgs& args, const Globals& globals) {
    harness::ExperimentPlan plan;
    plan.seed = globals.seed;
    plan.out_path = globals.out;
    plan.format = harness::format_from_string(globals.format);
    harness::PlanEntry entry;
    entry.config.n = static_cast<std::size_t>(args.n);
    entry.config.alphabet = core::Alphabet(args.q);
    entry.config.block_bits = args.block_bits;
    entry.config.epsilon = args.epsilon;
    entry.config.metric = harness::metric_from_string(args.metric);
    entry.noise = core::NoiseSpec::parse(args.noise, entry.config.alphabet);
    entry.trials = args.trials;
    plan.entries.push_back(entry);
    const harness::RunRecord record = harness::run_plan(plan, globals.jobs);
    if (globals.out.empty()) {
        std::cout << (plan.format == harness::OutputFormat::csv
                          ? harness::record_to_csv(record, false)
                          : harness::record_to_json(record, false));
    }
}

// ---------------------------------------------------------------- compress

struct CompressArgs {
    std::string noise;
    std::uint64_t n = 0;  ///< required for spec strings; ignored for files
    unsigned q = 2;       ///< ditto
};

void run_compress(const CompressArgs& args, const Globals& globals) {
    const core::Alphabet requested(args.q);
    const core::NoiseSpec spec = core::NoiseSpec::parse(args.noise, requested);
    core::SymbolSeq z = [&] {
        if (const auto* file = std::get_if<core::FixedFile>(&spec.variant))
            return core::read_modz(file->path);  // q and n come from the header
        require(args.n >= 1, "--n is required when --noise is a generator spec");
        return core::noise_generate(spec, requested, static_cast<std::size_t>(args.n),
                                    globals.seed);
    }();
    const srccode::Lz78Summary lz = srccode::lz78_compress(z);
    srccode::KtMixtureCoder kt(
        z.alphabet(), srccode::KtMixtureCoder::default_k_max(z.alphabet(), z.size()));
    for (std::size_t i = 0; i < z.size(); ++i) kt.feed(z[i]);
    nlohmann::ordered_json doc;
    doc["n"] = z.size();
    doc["q"] = z.alphabet().q();
    doc["L_S"] = lz.ls_bits;
    doc["L_T"] = lz.lt_bits;
    doc["rho78"] = lz.compression_ratio;
    doc["neg_log2_P_Z"] = kt.neglog2_prob();
    emit(globals, doc.dump(2) + "\n");
}

// ------------------------------------------------------------------ bounds

struct BoundsArgs {
    unsigned k = 1;
    unsigned q = 2;
    double delta = 0.0;
    std::string n_grid;
};

void run_bounds(const BoundsArgs& args, const Globals& globals) {
    const core::Alphabet alphabet(args.q);
    const std::vector<std::uint64_t> grid = parse_geometric_grid(args.n_grid);
    const bounds::CriticalLengthBounds critical =
        bounds::critical_length_bounds(args.k, args.delta, alphabet);
    const std::string canonical = "bounds;k=" + std::to_string(args.k) +
                                  ";q=" + std::to_string(args.q) +
                                  ";delta=" + harness::format_double(args.delta) +
                                  ";grid=" + args.n_grid;
    const std::uint64_t hash = harness::fnv1a64(canonical);
    const double inf = std::numeric_limits<double>::infinity();
    struct Row {
        std::uint64_t n;
        double lower, upper;
    };
    std::vector<Row> rows;
    rows.reserve(grid.size());
    for (const std::uint64_t n : grid) {
        const double lower = bounds::redundancy_lower(n, args.k, alphabet);
        const double upper = power_at_most(args.q, args.k, n)
                                 ? bounds::redundancy_upper(n, args.k, alphabet)
                                 : inf;  // upper envelope needs q^k <= n
        rows.push_back({n, lower, upper});
    }
    if (globals.format == "csv") {
        std::string text = "# plan=" + harness::hash_hex(hash) + "\n";
        text += "n,delta_minus,delta_plus,n_star_lower,n_star_upper\n";
        for (const Row& row : rows) {
            text += std::to_string(row.n) + "," + harness::format_double(row.lower) + "," +
                    harness::format_double(row.upper) + "," +
                    harness::format_double(critical.lower) + "," +
                    harness::format_double(critical.upper) + "\n";
        }
        emit(globals, text);
    } else {
        nlohmann::ordered_json doc;
        doc["plan"] = harness::hash_hex(hash);
        doc["k"] = args.k;
        doc["q"] = args.q;
        doc["delta"] = args.delta;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const Row& row : rows) {
            nlohmann::ordered_json r;
            r["n"] = row.n;
            r["delta_minus"] = row.lower;
            r["delta_plus"] = row.upper;  // infinities serialize as null
            r["n_star_lower"] = critical.lower;
            r["n_star_upper"] = critical.upper;
            doc["rows"].push_back(r);
        }
        emit(globals, doc.dump(2) + "\n");
    }
}

// ---------------------------------------------------------------- ifb-eval

struct IfbArgs {
    std::string code_path;
    std::string noise;
    unsigned k = 0;
    std::uint64_t b = 0;
};

/// Load {"q": .., "table": [[codeword], ..]} and attach a nearest-codeword
/// decoder (minimum Hamming distance, smallest message index on ties).
refsys::BlockCode load_block_code(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open code file: " + path);
    refsys::BlockCode code;
    std::vector<core::Symbol> table;
    try {
        nlohmann::json doc;
        in >> doc;
        require(doc.is_object() && doc.contains("q") && doc.contains("table"),
                "code file must be an object with \"q\" and \"table\" keys");
        code.alphabet = core::Alphabet(doc["q"].get<unsigned>());
        const auto& rows = doc["table"];
        require(rows.is_array() && !rows.empty(), "code table must be a nonempty array");
        code.k = static_cast<unsigned>(rows.front().size());
        code.message_count = rows.size();
        table.reserve(rows.size() * code.k);
        for (const auto& row : rows) {
            require(row.is_array() && row.size() == code.k,
                    "every code table row must list the same number of symbols");
            for (const auto& symbol : row)
                table.push_back(static_cast<core::Symbol>(symbol.get<unsigned>()));
        }
    } catch (const nlohmann::json::exception& error) {
        throw ValidationError("malformed code file " + path + ": " + error.what());
    }
    code.table = table;
    code.decode = [table, k = code.k, q = code.alphabet.q(),
                   m_count = code.message_count](const core::Symbol* y) {
        std::uint64_t best = 0;
        unsigned best_distance = k + 1;
        for (std::uint64_t m = 0; m < m_count; ++m) {
            unsigned distance = 0;
            for (unsigned i = 0; i < k; ++i) distance += table[m * k + i] != y[i];
            if (distance < best_distance) {
                best_distance = distance;
                best = m;
            }
        }
        return best;
    };
    code.validate();
    return code;
}

void run_ifb_eval(const IfbArgs& args, const Globals& globals) {
    const refsys::BlockCode code = load_block_code(args.code_path);
    require(args.k == code.k, "--k=" + std::to_string(args.k) +
                                  " does not match the code table row length " +
                                  std::to_string(code.k));
    require(args.b >= 1, "--b must be at least 1");
    require(args.b <= std::numeric_limits<std::size_t>::max() / code.k,
            "--b is too large");
    const core::NoiseSpec spec = core::NoiseSpec::parse(args.noise, code.alphabet);
    const auto blocks = static_cast<std::size_t>(args.b);
    const core::SymbolSeq z =
        core::noise_generate(spec, code.alphabet, blocks * code.k, globals.seed);
    const double error = refsys::iterated_mapping_error_exact(code, z, blocks);
    const double entropy = refsys::collapsed_entropy(z, code.k, blocks);
    const double log2_messages = std::log2(static_cast<double>(code.message_count));
    nlohmann::ordered_json doc;
    doc["k"] = code.k;
    doc["b"] = blocks;
    doc["messages"] = code.message_count;
    doc["rate"] = code.rate();
    doc["error"] = error;
    doc["effective_rate"] = bounds::effective_rate(code.rate(), error, code.k);
    doc["collapsed_entropy"] = entropy;
    if (error < 1.0)  // the converse rate is defined only below total error
        doc["fano_rate_bound"] =
            bounds::fano_rate_bound(code.alphabet, code.k, error, log2_messages, entropy);
    emit(globals, doc.dump(2) + "\n");
}

// ------------------------------------------------------------- testchannel

struct TestChannelArgs {
    unsigned k = 2;
    unsigned d = 1;
    unsigned q = 2;
    std::uint64_t blocks = 0;
};

void run_testchannel(const TestChannelArgs& args, const Globals& globals) {
    const core::Alphabet alphabet(args.q);
    core::NoiseSpec spec{core::TestChannel{args.k, args.d, 0}};
    spec.validate(alphabet);
    require(args.blocks >= 1, "--blocks must be at least 1");
    require(args.blocks <= std::numeric_limits<std::size_t>::max() / args.k,
            "--blocks is too large");
    require(!globals.out.empty(), "testchannel writes a binary file; --out is required");
    const auto n = static_cast<std::size_t>(args.blocks) * args.k;
    core::write_modz(globals.out, core::noise_generate(spec, alphabet, n, globals.seed));
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
    unsigned q = 2;
    std::string noise;
    std::string n_grid;
    unsigned block_bits = 1;
    double epsilon = 0.05;
    std::uint64_t trials = 1;
};

void run_sweep(const SweepArgs& args, const Globals& globals) {
    harness::SweepSpec spec;
    spec.alphabet = core::Alphabet(args.q);
    spec.noise = core::NoiseSpec::parse(args.noise, spec.alphabet);
    spec.n_grid = parse_comma_grid(args.n_grid);
    spec.block_bits = args.block_bits;
    spec.epsilon = args.epsilon;
    spec.trials = args.trials;
    spec.seed = globals.seed;
    const std::vector<harness::SweepRow> rows = harness::sweep_rates(spec);
    emit(globals, globals.format == "csv" ? harness::sweep_to_csv(rows, spec.hash())
                                          : harness::sweep_to_json(rows, spec.hash()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal feedback communication over modulo-additive channels:"
                 " session simulation, code-length reports, redundancy bounds,"
                 " reference-code evaluation, and rate sweeps."};
    app.require_subcommand(1);

    Globals globals;
    app.add_option("--seed", globals.seed, "base seed for every pseudo-random choice")
        ->capture_default_str();
    app.add_option("--jobs", globals.jobs, "worker threads for independent trials")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    app.add_option("--out", globals.out, "output path (empty prints to stdout)");
    app.add_option("--format", globals.format, "table output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    SimulateArgs simulate_args;
    CLI::App* simulate =
        app.add_subcommand("simulate", "run rateless feedback sessions against a noise model");
    simulate->fallthrough();
    simulate->add_option("--n", simulate_args.n, "horizon: channel uses per session")->required();
    simulate->add_option("--q", simulate_args.q, "alphabet size")->capture_default_str();
    simulate->add_option("--K", simulate_args.block_bits, "message bits per block")->required();
    simulate->add_option("--eps", simulate_args.epsilon, "target session error probability")
        ->capture_default_str();
    simulate->add_option("--metric", simulate_args.metric, "decoder metric")
        ->check(CLI::IsMember({"lz78", "kt"}))
        ->capture_default_str();
    simulate
        ->add_option("--noise", simulate_args.noise,
                     "noise spec (zero | const:s=.. | bern:p=.. | dist:.. | periodic:.. |"
                     " markov:.. | testchannel:k=..,d=..) or a MODZ file path")
        ->required();
    simulate->add_option("--trials", simulate_args.trials, "independent sessions to run")
        ->capture_default_str();
    simulate->callback([&] { run_simulate(simulate_args, globals); });

    CompressArgs compress_args;
    CLI::App* compress = app.add_subcommand(
        "compress", "report parsing and mixture code lengths of a noise sequence (JSON)");
    compress->fallthrough();
    compress->add_option("--noise", compress_args.noise, "MODZ file path or noise spec string")
        ->required();
    compress->add_option("--n", compress_args.n, "length to generate (spec strings only)");
    compress->add_option("--q", compress_args.q, "alphabet size (spec strings only)")
        ->capture_default_str();
    compress->callback([&] { run_compress(compress_args, globals); });

    BoundsArgs bounds_args;
    CLI::App* bounds_cmd = app.add_subcommand(
        "bounds", "tabulate redundancy envelopes and critical-horizon estimates");
    bounds_cmd->fallthrough();
    bounds_cmd->add_option("--k", bounds_args.k, "reference block length")->required();
    bounds_cmd->add_option("--q", bounds_args.q, "alphabet size")->capture_default_str();
    bounds_cmd->add_option("--delta", bounds_args.delta, "target redundancy level")->required();
    bounds_cmd
        ->add_option("--n-grid", bounds_args.n_grid,
                     "start:stop:points, log-spaced horizons (duplicates collapsed)")
        ->required();
    bounds_cmd->callback([&] { run_bounds(bounds_args, globals); });

    IfbArgs ifb_args;
    CLI::App* ifb = app.add_subcommand(
        "ifb-eval", "evaluate a fixed block code iterated over consecutive noise blocks");
    ifb->fallthrough();
    ifb->add_option("--code", ifb_args.code_path,
                    "JSON file {\"q\": .., \"table\": [[codeword symbols], ..]};"
                    " decoding picks the nearest codeword")
        ->required();
    ifb->add_option("--noise", ifb_args.noise, "MODZ file path or noise spec string")->required();
    ifb->add_option("--k", ifb_args.k, "block length (must match the table rows)")->required();
    ifb->add_option("--b", ifb_args.b, "number of consecutive blocks to evaluate")->required();
    ifb->callback([&] { run_ifb_eval(ifb_args, globals); });

    TestChannelArgs testchannel_args;
    CLI::App* testchannel = app.add_subcommand(
        "testchannel", "generate shared-suffix noise and write it as a MODZ file");
    testchannel->fallthrough();
    testchannel->add_option("--k", testchannel_args.k, "block length")->capture_default_str();
    testchannel->add_option("--d", testchannel_args.d, "suffix length (1 <= d < k)")
        ->capture_default_str();
    testchannel->add_option("--q", testchannel_args.q, "alphabet size")->capture_default_str();
    testchannel->add_option("--blocks", testchannel_args.blocks, "number of k-blocks to emit")
        ->required();
    testchannel->callback([&] { run_testchannel(testchannel_args, globals); });

    SweepArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "median session rates across a horizon grid");
    sweep->fallthrough();
    sweep->add_option("--q", sweep_args.q, "alphabet size")->capture_default_str();
    sweep->add_option("--noise", sweep_args.noise, "MODZ file path or noise spec string")
        ->required();
    sweep->add_option("--n-grid", sweep_args.n_grid,
                      "horizons: comma-separated list or start:stop:points (log-spaced)")
        ->required();
    sweep->add_option("--K", sweep_args.block_bits, "message bits per block")->required();
    sweep->add_option("--eps", sweep_args.epsilon, "target session error probability")
        ->capture_default_str();
    sweep->add_option("--trials", sweep_args.trials, "sessions per horizon (medians reported)")
        ->capture_default_str();
    sweep->callback([&] { run_sweep(sweep_args, globals); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;
    } catch (const moducom::InvariantError& error) {
        std::cerr << "invariant violation: " << error.what() << "\n";
        return 3;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
    return 0;
}
