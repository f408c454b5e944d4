#include "moducom/harness/serialize.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <system_error>

#include "moducom/core/errors.hpp"
#include "moducom/harness/hash.hpp"
#include "moducom/harness/sweep.hpp"

namespace moducom::harness {

using json = nlohmann::ordered_json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

namespace {

std::string attribution_line(std::uint64_t hash) { return "# plan=" + hash_hex(hash) + "\n"; }

void append_row(std::string& out, const TrialRow& row, bool include_entry_column) {
    if (include_entry_column) out += std::to_string(row.entry) + ",";
    out += std::to_string(row.trial) + ",";
    out += std::to_string(row.seed) + ",";
    out += std::to_string(row.decoded_blocks) + ",";
    out += std::to_string(row.decoded_bits) + ",";
    out += format_double(row.actual_rate) + ",";
    out += format_double(row.empirical_rate) + ",";
    out += format_double(row.rate_floor) + ",";
    out += row.error ? "1\n" : "0\n";
}

} // namespace

std::string record_to_csv(const RunRecord& record, bool include_entry_column) {
    std::string out = attribution_line(record.plan_hash);
    if (include_entry_column) out += "entry,";
    out += "trial,seed,B,bits,R_act,r_emp,rate_floor,error\n";
    for (const TrialRow& row : record.rows) append_row(out, row, include_entry_column);
    return out;
}

std::string record_to_json(const RunRecord& record, bool include_entry_column) {
    json root;
    root["plan"] = hash_hex(record.plan_hash);
    root["rows"] = json::array();
    for (const TrialRow& row : record.rows) {
        json r;
        if (include_entry_column) r["entry"] = row.entry;
        r["trial"] = row.trial;
        r["seed"] = row.seed;
        r["B"] = row.decoded_blocks;
        r["bits"] = row.decoded_bits;
        r["R_act"] = row.actual_rate;
        r["r_emp"] = row.empirical_rate;
        r["rate_floor"] = row.rate_floor;
        r["error"] = row.error;
        root["rows"].push_back(std::move(r));
    }
    root["aggregates"] = {{"mean_R_act", record.aggregates.mean_actual_rate},
                          {"median_R_act", record.aggregates.median_actual_rate},
                          {"error_rate", record.aggregates.error_rate},
                          {"floor_violations", record.aggregates.floor_violations}};
    return root.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, std::uint64_t hash) {
    std::string out = attribution_line(hash);
    out += "n,R_act,r_emp,rate_floor,iid_capacity\n";
    for (const SweepRow& row : rows) {
        out += std::to_string(row.n) + ",";
        out += format_double(row.actual_rate) + ",";
        out += format_double(row.empirical_rate) + ",";
        out += format_double(row.rate_floor) + ",";
        out += format_double(row.iid_capacity) + "\n";
    }
    return out;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows, std::uint64_t hash) {
    json root;
    root["plan"] = hash_hex(hash);
    root["rows"] = json::array();
    for (const SweepRow& row : rows) {
        json r;
        r["n"] = row.n;
        r["R_act"] = row.actual_rate;
        r["r_emp"] = row.empirical_rate;
        r["rate_floor"] = row.rate_floor;
        r["iid_capacity"] = row.iid_capacity;
        root["rows"].push_back(std::move(r));
    }
    return root.dump(2) + "\n";
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot create file '" + tmp + "'");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        require(out.good(), "failed writing file '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ValidationError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

} // namespace moducom::harness
