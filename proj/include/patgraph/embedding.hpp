#ifndef PATGRAPH_EMBEDDING_HPP
#define PATGRAPH_EMBEDDING_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "error.hpp"

namespace patgraph {

/// Dense node-embedding table: one `dim`-vector per node key.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    explicit EmbeddingMatrix(std::size_t dim, std::string algo = {}, std::uint64_t seed = 0)
        : dim_(dim), algo_(std::move(algo)), seed_(seed) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return keys_.size(); }
    const std::string& algo() const noexcept { return algo_; }
    std::uint64_t seed() const noexcept { return seed_; }
    void set_provenance(std::string algo, std::uint64_t seed) {
        algo_ = std::move(algo);
        seed_ = seed;
    }

    const std::string& key(std::size_t row) const { return keys_[row]; }
    const std::vector<std::string>& keys() const noexcept { return keys_; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }

    std::optional<std::size_t> find(const std::string& key) const {
        auto it = index_.find(key);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t add_row(std::string key, std::span<const double> values) {
        if (values.size() != dim_)
            fail(ErrorCode::DimensionMismatch, "row '" + key + "' has " + std::to_string(values.size()) +
                                                   " values, expected " + std::to_string(dim_));
        if (index_.contains(key)) fail(ErrorCode::DuplicateKey, "duplicate embedding key '" + key + "'");
        index_.emplace(key, keys_.size());
        keys_.push_back(std::move(key));
        data_.insert(data_.end(), values.begin(), values.end());
        return keys_.size() - 1;
    }

    bool all_finite() const {
        for (double x : data_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
        return a.dim_ == b.dim_ && a.keys_ == b.keys_ && a.data_ == b.data_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::string> keys_;
    std::vector<double> data_;
    std::map<std::string, std::size_t> index_;
    std::string algo_;
    std::uint64_t seed_ = 0;
};

namespace detail {

/// Keys may contain spaces; whitespace and '%' are percent-encoded so every
/// row splits into exactly dim + 1 tokens.
inline std::string encode_key(const std::string& key) {
    std::string out;
    for (char c : key) {
        switch (c) {
        case '%': out += "%25"; break;
        case ' ': out += "%20"; break;
        case '\t': out += "%09"; break;
        case '\n': out += "%0A"; break;
        case '\r': out += "%0D"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string decode_key(const std::string& token) {
    std::string out;
    for (std::size_t i = 0; i < token.size(); ++i) {
        if (token[i] == '%' && i + 2 < token.size()) {
            unsigned value = 0;
            auto [ptr, ec] = std::from_chars(token.data() + i + 1, token.data() + i + 3, value, 16);
            if (ec == std::errc() && ptr == token.data() + i + 3) {
                out += static_cast<char>(value);
                i += 2;
                continue;
            }
        }
        out += token[i];
    }
    return out;
}

inline std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

} // namespace detail

/// Text format: `<n> <dim>` then `<key> <f1> ... <fdim>` per row, shortest
/// round-trip float formatting.
inline void write_embeddings(const EmbeddingMatrix& e, std::ostream& out) {
    out << e.size() << ' ' << e.dim() << '\n';
    for (std::size_t i = 0; i < e.size(); ++i) {
        out << detail::encode_key(e.key(i));
        for (double x : e.row(i)) out << ' ' << detail::format_double(x);
        out << '\n';
    }
}

inline EmbeddingMatrix read_embeddings(std::istream& in, const std::string& name = "embeddings") {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::MalformedHeader, name + ": missing header");
    std::istringstream header(line);
    long long n = -1, dim = -1;
    std::string extra;
    if (!(header >> n >> dim) || (header >> extra) || n < 0 || dim < 1)
        fail(ErrorCode::MalformedHeader, name + ": header must be '<n> <dim>'");

    EmbeddingMatrix e(static_cast<std::size_t>(dim));
    std::vector<double> values(static_cast<std::size_t>(dim));
    for (long long r = 0; r < n; ++r) {
        if (!std::getline(in, line))
            fail(ErrorCode::MalformedInput, name + ": expected " + std::to_string(n) + " rows, found " + std::to_string(r));
        std::istringstream row(line);
        std::vector<std::string> tokens;
        for (std::string t; row >> t;) tokens.push_back(std::move(t));
        const std::string where = name + ":" + std::to_string(r + 2);
        if (tokens.size() != values.size() + 1)
            fail(ErrorCode::DimensionMismatch, where + ": expected " + std::to_string(dim) + " values, found " +
                                                   std::to_string(tokens.empty() ? 0 : tokens.size() - 1));
        for (std::size_t k = 0; k < values.size(); ++k) {
            const auto& t = tokens[k + 1];
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), values[k]);
            if (ec != std::errc() || ptr != t.data() + t.size())
                fail(ErrorCode::MalformedInput, where + ": bad number '" + t + "'");
        }
        e.add_row(detail::decode_key(tokens[0]), values);
    }
    return e;
}

inline void save_embeddings(const EmbeddingMatrix& e, const std::string& path) {
    auto out = csv::open_out(path);
    write_embeddings(e, out);
    if (!out) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

inline EmbeddingMatrix load_embeddings(const std::string& path) {
    auto in = csv::open_in(path);
    return read_embeddings(in, path);
}

} // namespace patgraph

#endif
