#ifndef PATGRAPH_INSTITUTIONS_HPP
#define PATGRAPH_INSTITUTIONS_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "record.hpp"
#include "text.hpp"

namespace patgraph {

struct InstitutionOptions {
    /// Leading words removed before matching (after normalization).
    std::vector<std::string> honorifics = {"آقای", "خانم", "دکتر", "مهندس", "Mr.", "Mrs.", "Ms.", "Dr."};
};

inline std::string strip_honorifics(std::string_view normalized, const std::vector<std::string>& honorifics) {
    std::string s(normalized);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& h : honorifics) {
            std::string hn = normalize_text(h);
            if (starts_with_word(s, hn)) {
                s = s.size() == hn.size() ? std::string() : s.substr(hn.size() + 1);
                changed = true;
            }
        }
    }
    return s;
}

/// Maps every institution surface form on the records to one canonical name.
/// Surfaces that agree after normalization, honorific stripping and ASCII
/// case folding share the canonical form of the first one seen; alias table
/// entries (matched the same way) take precedence.
inline std::map<std::string, std::string> resolve_institutions(
    const std::vector<PatentRecord>& records, const std::map<std::string, std::string>& aliases = {},
    const InstitutionOptions& options = {}) {
    auto match_key = [&](std::string_view surface) {
        return ascii_lower(strip_honorifics(normalize_text(surface), options.honorifics));
    };

    std::map<std::string, std::string> alias_by_match;
    std::map<std::string, std::string> canonical_by_match;
    for (const auto& [from, to] : aliases) {
        std::string target = normalize_text(to);
        alias_by_match[match_key(from)] = target;
        canonical_by_match.emplace(match_key(target), target);
    }

    std::map<std::string, std::string> resolved;
    for (const auto& r : records) {
        if (!r.institution || resolved.contains(*r.institution)) continue;
        const std::string& surface = *r.institution;
        std::string key = match_key(surface);
        if (auto a = alias_by_match.find(key); a != alias_by_match.end()) {
            resolved[surface] = a->second;
            continue;
        }
        auto [it, inserted] =
            canonical_by_match.emplace(key, strip_honorifics(normalize_text(surface), options.honorifics));
        resolved[surface] = it->second;
    }
    return resolved;
}

/// Reads a two-column TSV alias table: `surface<TAB>canonical`.
inline std::map<std::string, std::string> parse_alias_table(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            fail(ErrorCode::MalformedInput, "alias table line " + std::to_string(lineno) + ": expected a tab");
        out[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return out;
}

} // namespace patgraph

#endif
