#ifndef PATGRAPH_RECORD_HPP
#define PATGRAPH_RECORD_HPP

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "ipc.hpp"
#include "text.hpp"

namespace patgraph {

enum class ParseMode { Strict, Lenient };

/// One normalized gazette patent advertisement.
struct PatentRecord {
    std::string registration_id;
    std::string application_id;
    std::string subject;
    std::vector<IpcCode> ipc_codes;
    std::string owner;
    std::vector<std::string> inventors;
    std::optional<std::string> institution;
    std::optional<std::string> nationality;
    std::string registration_date;
    std::optional<int> protection_years;
};

namespace detail {

inline std::optional<std::string> json_text(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (it->is_string()) return normalize_text(it->get<std::string>());
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    if (it->is_number()) return normalize_text(it->dump());
    fail(ErrorCode::MalformedInput, std::string("field '") + key + "' is not a string");
}

inline std::vector<std::string> json_text_list(const nlohmann::json& obj, const char* key) {
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return out;
    if (it->is_string()) {
        out.push_back(normalize_text(it->get<std::string>()));
    } else if (it->is_array()) {
        for (const auto& v : *it) {
            if (!v.is_string())
                fail(ErrorCode::MalformedInput, std::string("field '") + key + "' holds a non-string");
            out.push_back(normalize_text(v.get<std::string>()));
        }
    } else {
        fail(ErrorCode::MalformedInput, std::string("field '") + key + "' is not an array");
    }
    std::erase_if(out, [](const std::string& s) { return s.empty(); });
    return out;
}

} // namespace detail

/// Builds a record from one JSON object of the JSONL input schema. Unknown
/// keys are ignored. In lenient mode malformed IPC tokens are dropped with a
/// warning; in strict mode they raise MalformedIpc.
inline PatentRecord parse_record(const nlohmann::json& obj, ParseMode mode = ParseMode::Lenient,
                                 Warnings* warnings = nullptr, const std::string& context = {}) {
    const std::string where = context.empty() ? std::string() : context + ": ";
    if (!obj.is_object()) fail(ErrorCode::MalformedInput, where + "record is not a JSON object");

    PatentRecord r;
    auto id = detail::json_text(obj, "registration_id");
    if (!id || id->empty()) fail(ErrorCode::MissingField, where + "missing field 'registration_id'");
    r.registration_id = *id;
    r.application_id = detail::json_text(obj, "application_id").value_or("");
    r.subject = detail::json_text(obj, "subject").value_or("");
    r.owner = detail::json_text(obj, "owner").value_or("");
    r.inventors = detail::json_text_list(obj, "inventors");
    r.registration_date = detail::json_text(obj, "registration_date").value_or("");

    if (auto inst = detail::json_text(obj, "institution"); inst && !inst->empty()) r.institution = inst;
    if (auto nat = detail::json_text(obj, "nationality"); nat && !nat->empty()) r.nationality = nat;

    if (auto it = obj.find("protection_years"); it != obj.end() && !it->is_null()) {
        if (it->is_number_integer()) {
            r.protection_years = it->get<int>();
        } else {
            auto text = detail::json_text(obj, "protection_years").value_or("");
            try {
                std::size_t used = 0;
                int years = std::stoi(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                r.protection_years = years;
            } catch (const std::exception&) {
                if (mode == ParseMode::Strict)
                    fail(ErrorCode::MalformedInput, where + "protection_years '" + text + "' is not an integer");
                warn(warnings, where + "ignoring non-integer protection_years '" + text + "'");
            }
        }
    }

    std::set<std::string> seen;
    for (const auto& token : detail::json_text_list(obj, "ipc")) {
        try {
            IpcCode code = parse_ipc(token);
            if (seen.insert(code.full_key()).second) r.ipc_codes.push_back(std::move(code));
        } catch (const Error& e) {
            if (mode == ParseMode::Strict)
                fail(ErrorCode::MalformedIpc, where + "record " + r.registration_id + ": " + e.what());
            warn(warnings, where + "record " + r.registration_id + ": dropping " + e.what());
        }
    }
    return r;
}

inline nlohmann::json to_json(const PatentRecord& r) {
    nlohmann::json obj;
    obj["registration_id"] = r.registration_id;
    obj["application_id"] = r.application_id;
    obj["subject"] = r.subject;
    auto ipc = nlohmann::json::array();
    for (const auto& c : r.ipc_codes) ipc.push_back(c.full_key());
    obj["ipc"] = std::move(ipc);
    obj["owner"] = r.owner;
    obj["inventors"] = r.inventors;
    obj["institution"] = r.institution ? nlohmann::json(*r.institution) : nlohmann::json();
    obj["nationality"] = r.nationality ? nlohmann::json(*r.nationality) : nlohmann::json();
    obj["registration_date"] = r.registration_date;
    obj["protection_years"] = r.protection_years ? nlohmann::json(*r.protection_years) : nlohmann::json();
    return obj;
}

/// Reads JSON Lines; blank lines are skipped. Output order follows input.
inline std::vector<PatentRecord> load_records(std::istream& in, ParseMode mode = ParseMode::Lenient,
                                              Warnings* warnings = nullptr) {
    std::vector<PatentRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            fail(ErrorCode::MalformedInput, "line " + std::to_string(lineno) + ": invalid JSON");
        }
        out.push_back(parse_record(obj, mode, warnings, "line " + std::to_string(lineno)));
    }
    return out;
}

} // namespace patgraph

#endif
