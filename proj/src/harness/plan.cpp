#include "moducom/harness/plan.hpp"

#include <json.hpp>

#include "moducom/core/errors.hpp"
#include "moducom/harness/hash.hpp"
#include "moducom/harness/serialize.hpp"

namespace moducom::harness {

using json = nlohmann::ordered_json;

std::string format_to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat format_from_string(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ValidationError("unknown output format '" + text + "' (expected csv or json)");
}

std::string metric_to_string(scheme::MetricKind metric) {
    return metric == scheme::MetricKind::lz78 ? "lz78" : "kt";
}

scheme::MetricKind metric_from_string(const std::string& text) {
    if (text == "lz78") return scheme::MetricKind::lz78;
    if (text == "kt") return scheme::MetricKind::kt;
    throw ValidationError("unknown metric '" + text + "' (expected lz78 or kt)");
}

void ExperimentPlan::validate() const {
    require(!entries.empty(), "plan must contain at least one entry");
    for (const PlanEntry& entry : entries) {
        entry.config.validate();
        entry.noise.validate(entry.config.alphabet);
        require(entry.trials >= 1, "entry trial count must be at least 1");
    }
}

std::string ExperimentPlan::canonical() const {
    std::string text = "plan;seed=" + std::to_string(seed);
    for (const PlanEntry& entry : entries) {
        const scheme::SchemeConfig& c = entry.config;
        text += ";entry:n=" + std::to_string(c.n);
        text += ",q=" + std::to_string(c.alphabet.q());
        text += ",K=" + std::to_string(c.block_bits);
        text += ",eps=" + format_double(c.epsilon);
        text += ",metric=" + metric_to_string(c.metric);
        text += ",kt_k_max=" + std::to_string(c.kt_k_max);
        text += ",work_budget=" + std::to_string(c.work_budget);
        text += ",noise=" + entry.noise.canonical();
        text += ",trials=" + std::to_string(entry.trials);
    }
    return text;
}

std::uint64_t ExperimentPlan::hash() const { return fnv1a64(canonical()); }

std::string plan_to_json(const ExperimentPlan& plan) {
    json root;
    root["seed"] = plan.seed;
    root["out"] = plan.out_path;
    root["format"] = format_to_string(plan.format);
    root["entries"] = json::array();
    for (const PlanEntry& entry : plan.entries) {
        const scheme::SchemeConfig& c = entry.config;
        json e;
        e["n"] = c.n;
        e["q"] = c.alphabet.q();
        e["K"] = c.block_bits;
        e["eps"] = c.epsilon;
        e["metric"] = metric_to_string(c.metric);
        e["kt_k_max"] = c.kt_k_max;
        e["work_budget"] = c.work_budget;
        e["noise"] = entry.noise.canonical();
        e["trials"] = entry.trials;
        root["entries"].push_back(std::move(e));
    }
    return root.dump(2) + "\n";
}

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        bool found = false;
        for (const char* name : known) found |= key == name;
        require(found, "unknown key '" + key + "' in " + where);
    }
}

} // namespace

ExperimentPlan plan_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("plan is not valid JSON: ") + e.what());
    }
    require(root.is_object(), "plan must be a JSON object");
    reject_unknown_keys(root, {"seed", "out", "format", "entries"}, "plan");
    require(root.contains("entries") && root["entries"].is_array(),
            "plan must contain an 'entries' array");

    ExperimentPlan plan;
    try {
        plan.seed = root.value("seed", std::uint64_t{0});
        plan.out_path = root.value("out", std::string{});
        plan.format = format_from_string(root.value("format", std::string{"csv"}));
        for (const json& e : root["entries"]) {
            require(e.is_object(), "plan entry must be a JSON object");
            reject_unknown_keys(
                e, {"n", "q", "K", "eps", "metric", "kt_k_max", "work_budget", "noise", "trials"},
                "plan entry");
            for (const char* name : {"n", "q", "K", "eps", "noise", "trials"})
                require(e.contains(name),
                        std::string("plan entry is missing required key '") + name + "'");

            PlanEntry entry;
            entry.config.n = e["n"].get<std::size_t>();
            entry.config.alphabet = core::Alphabet(e["q"].get<unsigned>());
            entry.config.block_bits = e["K"].get<unsigned>();
            entry.config.epsilon = e["eps"].get<double>();
            entry.config.metric = metric_from_string(e.value("metric", std::string{"lz78"}));
            entry.config.kt_k_max = e.value("kt_k_max", 0u);
            entry.config.work_budget = e.value("work_budget", entry.config.work_budget);
            entry.noise = core::NoiseSpec::parse(e["noise"].get<std::string>(),
                                                 entry.config.alphabet);
            entry.trials = e["trials"].get<std::uint64_t>();
            plan.entries.push_back(std::move(entry));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("plan field has the wrong type: ") + e.what());
    }
    plan.validate();
    return plan;
}

} // namespace moducom::harness
