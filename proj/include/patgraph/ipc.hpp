#ifndef PATGRAPH_IPC_HPP
#define PATGRAPH_IPC_HPP

#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "text.hpp"

namespace patgraph {

/// International Patent Classification symbol, e.g. "A61K 31/00".
struct IpcCode {
    char section = 'A';
    std::string class_digits;   // two digits
    char subclass_letter = 'A';
    std::string group;          // "main/sub"

    std::string section_key() const { return std::string(1, section); }
    std::string class_key() const { return section_key() + class_digits; }
    std::string subclass_key() const { return class_key() + subclass_letter; }
    std::string full_key() const { return subclass_key() + ' ' + group; }

    friend bool operator==(const IpcCode&, const IpcCode&) = default;
};

namespace detail {

inline const std::regex& ipc_token_regex() {
    static const std::regex re(R"(^([A-H])([0-9]{2})([A-Z])\s*([0-9]+/[0-9]+)$)");
    return re;
}

inline const std::regex& ipc_scan_regex() {
    static const std::regex re(R"(\b([A-H])([0-9]{2})([A-Z])\s*([0-9]+/[0-9]+)(?![0-9]))");
    return re;
}

template <class Match>
IpcCode ipc_from_match(const Match& m) {
    IpcCode code;
    code.section = m.str(1)[0];
    code.class_digits = m.str(2);
    code.subclass_letter = m.str(3)[0];
    code.group = m.str(4);
    return code;
}

} // namespace detail

/// Parses one digit-normalized IPC token. Whitespace between subclass and
/// group is optional.
inline IpcCode parse_ipc(std::string_view token) {
    std::string s(token);
    std::smatch m;
    if (!std::regex_match(s, m, detail::ipc_token_regex()))
        fail(ErrorCode::MalformedIpc, "malformed IPC code '" + s + "'");
    return detail::ipc_from_match(m);
}

inline std::string render(const IpcCode& code) { return code.full_key(); }

/// All IPC symbols in free text, in order of appearance, first occurrence of
/// each full key kept.
inline std::vector<IpcCode> extract_ipc_codes(std::string_view text) {
    const std::string normalized = normalize_text(text);
    std::vector<IpcCode> out;
    std::set<std::string> seen;
    auto begin = std::sregex_iterator(normalized.begin(), normalized.end(), detail::ipc_scan_regex());
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        IpcCode code = detail::ipc_from_match(*it);
        if (seen.insert(code.full_key()).second) out.push_back(std::move(code));
    }
    return out;
}

} // namespace patgraph

#endif
