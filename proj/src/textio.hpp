#pragma once

// Line-oriented helpers shared by the dataset, model and report formats.

#include "mdsmm/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mdsmm::textio {

/// 17 significant digits: enough for an exact double round trip.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

inline double parse_real(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw parse_error("bad real literal '" + std::string(tok) + "'", line);
    }
    if (!std::isfinite(v)) {
        throw parse_error("non-finite literal '" + std::string(tok) + "'", line);
    }
    return v;
}

template <class Int = long long>
Int parse_int(std::string_view tok, std::size_t line) {
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw parse_error("bad integer literal '" + std::string(tok) + "'", line);
    }
    return v;
}

/// Reads lines while tracking the 1-based line number of the last line returned.
class LineReader {
  public:
    explicit LineReader(std::istream &in) : in_(in) {}

    bool next(std::string &out) {
        if (!std::getline(in_, out)) {
            return false;
        }
        ++line_;
        return true;
    }

    /// Next line or a parse_error naming what was expected.
    std::string expect(const char *what) {
        std::string s;
        if (!next(s)) {
            throw parse_error(std::string("unexpected end of file, expected ") + what, line_ + 1);
        }
        return s;
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::istream &in_;
    std::size_t line_ = 0;
};

/// Parses exactly `count` reals from one line.
inline std::vector<double> parse_reals(std::string_view text, std::size_t count, std::size_t line) {
    const auto toks = split(text);
    if (toks.size() != count) {
        throw parse_error("expected " + std::to_string(count) + " values, found " + std::to_string(toks.size()),
                          line);
    }
    std::vector<double> out;
    out.reserve(count);
    for (auto t : toks) {
        out.push_back(parse_real(t, line));
    }
    return out;
}

}  // namespace mdsmm::textio
