#ifndef PATGRAPH_CONFIG_HPP
#define PATGRAPH_CONFIG_HPP

#include <charconv>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "line.hpp"
#include "record.hpp"
#include "sdne.hpp"
#include "tsne.hpp"
#include "walks.hpp"

namespace patgraph {

enum class EmbedAlgo { DeepWalk, Node2Vec, Line, Sdne };

inline std::string_view to_string(EmbedAlgo a) {
    switch (a) {
    case EmbedAlgo::DeepWalk: return "deepwalk";
    case EmbedAlgo::Node2Vec: return "node2vec";
    case EmbedAlgo::Line: return "line";
    case EmbedAlgo::Sdne: return "sdne";
    }
    return "?";
}

inline EmbedAlgo parse_embed_algo(std::string_view s) {
    if (s == "deepwalk") return EmbedAlgo::DeepWalk;
    if (s == "node2vec") return EmbedAlgo::Node2Vec;
    if (s == "line") return EmbedAlgo::Line;
    if (s == "sdne") return EmbedAlgo::Sdne;
    fail(ErrorCode::InvalidArgument, "unknown embedding algorithm '" + std::string(s) + "'");
}

struct PipelineConfig {
    std::string input;
    std::string output_dir = "out";
    std::string aliases;
    std::optional<std::uint64_t> seed;
    ParseMode mode = ParseMode::Lenient;
    bool deterministic = true;

    EmbedAlgo algo = EmbedAlgo::Node2Vec;
    bool include_institutions = false;
    std::size_t max_removals = 0;
    std::optional<std::size_t> plateau;
    std::size_t centrality_top = 20;
    std::string query;  // empty: first patent
    std::size_t k = 5;
    bool project = false;

    DeepWalkConfig deepwalk;
    Node2VecConfig node2vec;
    LineConfig line;
    SdneConfig sdne;
    TsneOptions tsne;
};

namespace detail {

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        fail(ErrorCode::InvalidArgument, "config key '" + key + "': bad value '" + value + "'");
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    fail(ErrorCode::InvalidArgument, "config key '" + key + "': expected true/false, got '" + value + "'");
}

inline std::vector<std::size_t> parse_size_list(const std::string& key, const std::string& value) {
    std::vector<std::size_t> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<std::size_t>(key, item));
    if (out.empty()) fail(ErrorCode::InvalidArgument, "config key '" + key + "': empty list");
    return out;
}

inline std::string join(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out;
}

inline std::string line_order_name(LineOrder o) {
    return o == LineOrder::First ? "1" : o == LineOrder::Second ? "2" : "concat";
}

struct ConfigField {
    std::function<void(PipelineConfig&, const std::string&)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

#define PATGRAPH_SIZE_FIELD(name, member)                                                                  \
    {name,                                                                                                 \
     {[](PipelineConfig& c, const std::string& v) { c.member = parse_number<std::size_t>(name, v); },      \
      [](const PipelineConfig& c) { return std::to_string(c.member); }}}
#define PATGRAPH_REAL_FIELD(name, member)                                                                  \
    {name,                                                                                                 \
     {[](PipelineConfig& c, const std::string& v) { c.member = parse_number<double>(name, v); },           \
      [](const PipelineConfig& c) { return format_double(c.member); }}}

inline const std::map<std::string, ConfigField>& config_fields() {
    static const std::map<std::string, ConfigField> fields = {
        {"input", {[](PipelineConfig& c, const std::string& v) { c.input = v; },
                   [](const PipelineConfig& c) { return c.input; }}},
        {"output_dir", {[](PipelineConfig& c, const std::string& v) { c.output_dir = v; },
                        [](const PipelineConfig& c) { return c.output_dir; }}},
        {"aliases", {[](PipelineConfig& c, const std::string& v) { c.aliases = v; },
                     [](const PipelineConfig& c) { return c.aliases; }}},
        {"seed", {[](PipelineConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>("seed", v); },
                  [](const PipelineConfig& c) { return c.seed ? std::to_string(*c.seed) : std::string(); }}},
        {"mode", {[](PipelineConfig& c, const std::string& v) {
                      if (v == "strict") c.mode = ParseMode::Strict;
                      else if (v == "lenient") c.mode = ParseMode::Lenient;
                      else fail(ErrorCode::InvalidArgument, "config key 'mode': expected strict or lenient");
                  },
                  [](const PipelineConfig& c) { return std::string(c.mode == ParseMode::Strict ? "strict" : "lenient"); }}},
        {"deterministic", {[](PipelineConfig& c, const std::string& v) { c.deterministic = parse_bool("deterministic", v); },
                           [](const PipelineConfig& c) { return std::string(c.deterministic ? "true" : "false"); }}},
        {"embed.algo", {[](PipelineConfig& c, const std::string& v) { c.algo = parse_embed_algo(v); },
                        [](const PipelineConfig& c) { return std::string(to_string(c.algo)); }}},
        {"embed.include_institutions",
         {[](PipelineConfig& c, const std::string& v) { c.include_institutions = parse_bool("embed.include_institutions", v); },
          [](const PipelineConfig& c) { return std::string(c.include_institutions ? "true" : "false"); }}},
        PATGRAPH_SIZE_FIELD("communities.max_removals", max_removals),
        {"communities.plateau",
         {[](PipelineConfig& c, const std::string& v) {
              const auto k = parse_number<std::size_t>("communities.plateau", v);
              c.plateau = k == 0 ? std::nullopt : std::optional<std::size_t>(k);
          },
          [](const PipelineConfig& c) { return std::to_string(c.plateau.value_or(0)); }}},
        PATGRAPH_SIZE_FIELD("centrality.top", centrality_top),
        {"recommend.query", {[](PipelineConfig& c, const std::string& v) { c.query = v; },
                             [](const PipelineConfig& c) { return c.query; }}},
        PATGRAPH_SIZE_FIELD("recommend.k", k),
        {"project.enabled", {[](PipelineConfig& c, const std::string& v) { c.project = parse_bool("project.enabled", v); },
                             [](const PipelineConfig& c) { return std::string(c.project ? "true" : "false"); }}},

        PATGRAPH_SIZE_FIELD("deepwalk.walk_length", deepwalk.walk_length),
        PATGRAPH_SIZE_FIELD("deepwalk.num_walks", deepwalk.num_walks),
        PATGRAPH_SIZE_FIELD("deepwalk.dim", deepwalk.dim),
        PATGRAPH_SIZE_FIELD("deepwalk.window", deepwalk.window),
        PATGRAPH_SIZE_FIELD("deepwalk.epochs", deepwalk.epochs),
        PATGRAPH_SIZE_FIELD("deepwalk.negatives", deepwalk.negatives),
        PATGRAPH_REAL_FIELD("deepwalk.learning_rate", deepwalk.learning_rate),

        PATGRAPH_SIZE_FIELD("node2vec.dim", node2vec.dim),
        PATGRAPH_SIZE_FIELD("node2vec.walk_length", node2vec.walk_length),
        PATGRAPH_SIZE_FIELD("node2vec.num_walks", node2vec.num_walks),
        PATGRAPH_SIZE_FIELD("node2vec.window", node2vec.window),
        PATGRAPH_SIZE_FIELD("node2vec.epochs", node2vec.epochs),
        PATGRAPH_REAL_FIELD("node2vec.p", node2vec.p),
        PATGRAPH_REAL_FIELD("node2vec.q", node2vec.q),
        PATGRAPH_SIZE_FIELD("node2vec.negatives", node2vec.negatives),
        PATGRAPH_REAL_FIELD("node2vec.learning_rate", node2vec.learning_rate),

        PATGRAPH_SIZE_FIELD("line.dim", line.dim),
        {"line.order", {[](PipelineConfig& c, const std::string& v) {
                            if (v == "1") c.line.order = LineOrder::First;
                            else if (v == "2") c.line.order = LineOrder::Second;
                            else if (v == "concat") c.line.order = LineOrder::Both;
                            else fail(ErrorCode::InvalidArgument, "config key 'line.order': expected 1, 2 or concat");
                        },
                        [](const PipelineConfig& c) { return line_order_name(c.line.order); }}},
        PATGRAPH_SIZE_FIELD("line.batch_size", line.batch_size),
        PATGRAPH_SIZE_FIELD("line.epochs", line.epochs),
        PATGRAPH_SIZE_FIELD("line.negatives", line.negatives),
        PATGRAPH_REAL_FIELD("line.learning_rate", line.learning_rate),

        {"sdne.hidden_sizes", {[](PipelineConfig& c, const std::string& v) { c.sdne.hidden_sizes = parse_size_list("sdne.hidden_sizes", v); },
                               [](const PipelineConfig& c) { return join(c.sdne.hidden_sizes); }}},
        {"sdne.dim", {[](PipelineConfig& c, const std::string& v) { c.sdne.hidden_sizes.back() = parse_number<std::size_t>("sdne.dim", v); },
                      [](const PipelineConfig& c) { return std::to_string(c.sdne.hidden_sizes.back()); }}},
        PATGRAPH_SIZE_FIELD("sdne.batch_size", sdne.batch_size),
        PATGRAPH_SIZE_FIELD("sdne.epochs", sdne.epochs),
        PATGRAPH_REAL_FIELD("sdne.alpha", sdne.alpha),
        PATGRAPH_REAL_FIELD("sdne.beta", sdne.beta),
        PATGRAPH_REAL_FIELD("sdne.nu", sdne.nu),
        PATGRAPH_REAL_FIELD("sdne.learning_rate", sdne.learning_rate),

        PATGRAPH_REAL_FIELD("tsne.perplexity", tsne.perplexity),
        PATGRAPH_SIZE_FIELD("tsne.iterations", tsne.iterations),
        PATGRAPH_REAL_FIELD("tsne.learning_rate", tsne.learning_rate),
    };
    return fields;
}

#undef PATGRAPH_SIZE_FIELD
#undef PATGRAPH_REAL_FIELD

} // namespace detail

/// Sets one `section.key=value` entry; unknown keys are rejected.
inline void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    const auto& fields = detail::config_fields();
    auto it = fields.find(key);
    if (it == fields.end()) fail(ErrorCode::UnknownConfigKey, "unknown config key '" + key + "'");
    it->second.set(cfg, value);
}

inline std::string get_config_value(const PipelineConfig& cfg, const std::string& key) {
    const auto& fields = detail::config_fields();
    auto it = fields.find(key);
    if (it == fields.end()) fail(ErrorCode::UnknownConfigKey, "unknown config key '" + key + "'");
    return it->second.get(cfg);
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

/// Line-oriented `key=value`; blank lines and `#` comments are skipped.
inline void read_config(std::istream& in, PipelineConfig& cfg, const std::string& name = "config") {
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::InvalidArgument, name + ":" + std::to_string(lineno) + ": expected key=value");
        set_config_value(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

/// Every non-path key in sorted order, one `key=value` per line. Paths are
/// left out so relocating inputs or outputs keeps the hash stable.
inline std::string canonical_config(const PipelineConfig& cfg) {
    std::string out;
    for (const auto& [key, field] : detail::config_fields())
        if (key != "input" && key != "output_dir" && key != "aliases") out += key + "=" + field.get(cfg) + "\n";
    return out;
}

inline std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string config_hash(const PipelineConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_config(cfg))));
    return buf;
}

} // namespace patgraph

#endif
