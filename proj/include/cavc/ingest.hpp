// Graph file parsing: plain edge lists and MatrixMarket coordinate files.
#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cavc/graph.hpp"

namespace cavc {

class ParseError : public InputError {
  public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Edges as read from a file: 0-based, possibly with self-loops and duplicates.
struct RawEdgeList {
    std::optional<std::size_t> numVerticesDeclared;
    std::vector<Edge> edges;
};

enum class GraphFormat { Auto, EdgeList, MatrixMarket };

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::uint64_t parseId(std::string_view tok, std::size_t lineNo) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(lineNo, "expected a non-negative integer, got '" + std::string(tok) + "'");
    if (value >= std::numeric_limits<Vertex>::max())
        throw ParseError(lineNo, "vertex id " + std::string(tok) + " is too large");
    return value;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

template <class F>
void forEachLine(std::string_view text, F&& f) {
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++lineNo;
        f(text.substr(pos, end - pos), lineNo);
        if (end == text.size()) break;
        pos = end + 1;
    }
}

}  // namespace detail

/// Whitespace-separated id pairs, one edge per line. Lines starting with '#' or
/// '%' are comments; a "% base=1" (or "# base=1") comment switches to 1-based ids.
inline RawEdgeList parseEdgeList(std::string_view text) {
    RawEdgeList raw;
    std::uint64_t base = 0;
    std::uint64_t maxId = 0;
    bool any = false;
    detail::forEachLine(text, [&](std::string_view line, std::size_t lineNo) {
        line = detail::trim(line);
        if (line.empty()) return;
        if (line.front() == '#' || line.front() == '%') {
            auto body = detail::lower(line.substr(1));
            body.erase(std::remove_if(body.begin(), body.end(), ::isspace), body.end());
            if (body == "base=1") base = 1;
            else if (body == "base=0") base = 0;
            return;
        }
        auto toks = detail::tokens(line);
        if (toks.size() % 2 != 0)
            throw ParseError(lineNo, "odd number of tokens (" + std::to_string(toks.size()) + ")");
        for (std::size_t i = 0; i < toks.size(); i += 2) {
            auto u = detail::parseId(toks[i], lineNo);
            auto v = detail::parseId(toks[i + 1], lineNo);
            if (u < base || v < base) throw ParseError(lineNo, "id 0 in a 1-based edge list");
            u -= base;
            v -= base;
            maxId = std::max({maxId, u, v});
            any = true;
            raw.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    });
    raw.numVerticesDeclared = any ? maxId + 1 : 0;
    return raw;
}

/// MatrixMarket coordinate files (pattern/integer/real, general/symmetric).
/// Indices are 1-based; values are ignored.
inline RawEdgeList parseMatrixMarket(std::string_view text) {
    RawEdgeList raw;
    bool sawHeader = false;
    bool sawSize = false;
    bool pattern = true;
    std::uint64_t rows = 0;
    std::uint64_t expected = 0;
    std::uint64_t seen = 0;
    std::size_t lastLine = 1;
    detail::forEachLine(text, [&](std::string_view line, std::size_t lineNo) {
        lastLine = lineNo;
        if (!sawHeader) {
            auto toks = detail::tokens(detail::trim(line));
            if (toks.size() != 5 || detail::lower(toks[0]) != "%%matrixmarket")
                throw ParseError(lineNo, "missing %%MatrixMarket header");
            auto object = detail::lower(toks[1]);
            auto format = detail::lower(toks[2]);
            auto field = detail::lower(toks[3]);
            auto symmetry = detail::lower(toks[4]);
            if (object != "matrix" || format != "coordinate")
                throw ParseError(lineNo, "only 'matrix coordinate' files are supported");
            if (field != "pattern" && field != "integer" && field != "real")
                throw ParseError(lineNo, "unsupported field '" + field + "'");
            if (symmetry != "general" && symmetry != "symmetric")
                throw ParseError(lineNo, "unsupported symmetry '" + symmetry + "'");
            pattern = field == "pattern";
            sawHeader = true;
            return;
        }
        line = detail::trim(line);
        if (line.empty() || line.front() == '%') return;
        auto toks = detail::tokens(line);
        if (!sawSize) {
            if (toks.size() != 3) throw ParseError(lineNo, "expected 'rows cols entries'");
            rows = detail::parseId(toks[0], lineNo);
            auto cols = detail::parseId(toks[1], lineNo);
            expected = detail::parseId(toks[2], lineNo);
            if (rows != cols)
                throw ParseError(lineNo, "adjacency matrix must be square, got " + std::to_string(rows) +
                                             "x" + std::to_string(cols));
            raw.numVerticesDeclared = rows;
            raw.edges.reserve(expected);
            sawSize = true;
            return;
        }
        if (toks.size() != (pattern ? 2u : 3u))
            throw ParseError(lineNo, "expected " + std::string(pattern ? "2" : "3") + " tokens per entry");
        auto i = detail::parseId(toks[0], lineNo);
        auto j = detail::parseId(toks[1], lineNo);
        if (i < 1 || j < 1 || i > rows || j > rows)
            throw ParseError(lineNo, "index out of declared range 1.." + std::to_string(rows));
        if (++seen > expected)
            throw ParseError(lineNo, "more entries than the declared " + std::to_string(expected));
        raw.edges.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1));
    });
    if (!sawHeader) throw ParseError(1, "missing %%MatrixMarket header");
    if (!sawSize) throw ParseError(1, "missing size line");
    if (seen != expected)
        throw ParseError(lastLine, "declared " + std::to_string(expected) + " entries, found " + std::to_string(seen));
    return raw;
}

struct CanonicalEdges {
    std::vector<Edge> edges;
    std::size_t numVertices = 0;
};

/// Each edge once as (min, max), self-loops dropped, sorted.
inline CanonicalEdges canonicalize(RawEdgeList raw) {
    CanonicalEdges out;
    std::size_t n = raw.numVerticesDeclared.value_or(0);
    out.edges.reserve(raw.edges.size());
    for (auto [u, v] : raw.edges) {
        n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
        if (u == v) continue;
        out.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    out.numVertices = n;
    return out;
}

inline GraphFormat detectFormat(std::string_view text) {
    auto head = detail::lower(detail::trim(text.substr(0, 64)));
    return head.starts_with("%%matrixmarket") ? GraphFormat::MatrixMarket : GraphFormat::EdgeList;
}

inline StaticGraph parseGraph(std::string_view text, GraphFormat format = GraphFormat::Auto) {
    if (format == GraphFormat::Auto) format = detectFormat(text);
    auto raw = format == GraphFormat::MatrixMarket ? parseMatrixMarket(text) : parseEdgeList(text);
    auto canon = canonicalize(std::move(raw));
    return buildCSR(canon.edges, canon.numVertices);
}

inline StaticGraph loadGraph(const std::string& path, GraphFormat format = GraphFormat::Auto) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseGraph(buf.str(), format);
}

/// 0-based edge list, one edge per line; isolated trailing vertices are lost.
inline std::string writeEdgeList(const StaticGraph& g) {
    std::string out;
    for (auto [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

}  // namespace cavc
