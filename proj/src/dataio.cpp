#include "mdsmm/dataio.hpp"

#include "mdsmm/errors.hpp"
#include "textio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace mdsmm {

Dataset make_dataset(std::vector<LabeledSample> samples, std::string provenance) {
    const auto [m, n] = common_shape(samples);
    return {std::move(samples), m, n, std::move(provenance)};
}

void write_dataset(std::ostream &out, const Dataset &ds) {
    out << "MDS 1 " << ds.samples.size() << ' ' << ds.m << ' ' << ds.n << '\n';
    for (const auto &s : ds.samples) {
        if (s.x.rows() != ds.m || s.x.cols() != ds.n) {
            throw dimension_error("write_dataset: sample shape differs from dataset shape");
        }
        out << "label " << s.label << '\n';
        for (std::size_t i = 0; i < ds.m; ++i) {
            for (std::size_t j = 0; j < ds.n; ++j) {
                out << (j ? " " : "") << textio::format_real(s.x(i, j));
            }
            out << '\n';
        }
    }
}

void write_dataset(const std::filesystem::path &path, const Dataset &ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open '" + path.string() + "' for writing");
    }
    write_dataset(out, ds);
    if (!out.flush()) {
        throw io_error("failed writing '" + path.string() + "'");
    }
}

Dataset read_dataset(std::istream &in) {
    textio::LineReader reader(in);
    const std::string header = reader.expect("dataset header");
    const auto head = textio::split(header);
    if (head.size() != 5 || head[0] != "MDS" || head[1] != "1") {
        throw parse_error("expected header 'MDS 1 N m n'", reader.line());
    }
    const auto count = textio::parse_int<std::size_t>(head[2], reader.line());
    const auto m = textio::parse_int<std::size_t>(head[3], reader.line());
    const auto n = textio::parse_int<std::size_t>(head[4], reader.line());
    if (count == 0 || m == 0 || n == 0) {
        throw parse_error("N, m and n must be positive", reader.line());
    }

    Dataset ds;
    ds.m = m;
    ds.n = n;
    ds.samples.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const std::string label_line = reader.expect("label line");
        const auto toks = textio::split(label_line);
        if (toks.size() != 2 || toks[0] != "label") {
            throw parse_error("expected 'label <integer>'", reader.line());
        }
        const int label = textio::parse_int<int>(toks[1], reader.line());
        std::vector<double> values;
        values.reserve(m * n);
        for (std::size_t i = 0; i < m; ++i) {
            const std::string row = reader.expect("matrix row");
            const auto parsed = textio::parse_reals(row, n, reader.line());
            values.insert(values.end(), parsed.begin(), parsed.end());
        }
        ds.samples.push_back({Mat(m, n, std::move(values)), label});
    }
    std::string rest;
    while (reader.next(rest)) {
        if (!textio::split(rest).empty()) {
            throw parse_error("more samples than the header declares", reader.line());
        }
    }
    return ds;
}

Dataset read_dataset(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path.string() + "'");
    }
    Dataset ds = read_dataset(in);
    ds.provenance = path.string();
    return ds;
}

namespace {

class PgmScanner {
  public:
    explicit PgmScanner(std::string data) : data_(std::move(data)) {}

    // Next whitespace-delimited header token; '#' starts a comment running to end of line.
    std::string token(const char *what) {
        while (pos_ < data_.size()) {
            const char ch = data_[pos_];
            if (ch == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                if (ch == '\n') {
                    ++line_;
                }
                ++pos_;
            } else {
                break;
            }
        }
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) && data_[pos_] != '#') {
            ++pos_;
        }
        if (start == pos_) {
            throw parse_error(std::string("PGM: unexpected end of data, expected ") + what, line_);
        }
        return data_.substr(start, pos_ - start);
    }

    unsigned number(const char *what) {
        const std::string tok = token(what);
        try {
            return textio::parse_int<unsigned>(tok, line_);
        } catch (const parse_error &) {
            throw parse_error(std::string("PGM: bad ") + what + " '" + tok + "'", line_);
        }
    }

    // Consumes the single whitespace byte separating the header from a binary raster.
    void raster_separator() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            throw parse_error("PGM: missing whitespace before raster", line_);
        }
        ++pos_;
    }

    [[nodiscard]] std::size_t remaining() const { return data_.size() - pos_; }
    unsigned char byte() { return static_cast<unsigned char>(data_[pos_++]); }
    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::string data_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

}  // namespace

PgmImage read_pgm_image(std::istream &in) {
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    PgmScanner scan(std::move(data));
    const std::string magic = scan.token("magic number");
    if (magic != "P2" && magic != "P5") {
        throw parse_error("PGM: bad magic '" + magic + "' (expected P2 or P5)", scan.line());
    }
    const unsigned width = scan.number("width");
    const unsigned height = scan.number("height");
    const unsigned maxval = scan.number("maxval");
    if (width == 0 || height == 0) {
        throw parse_error("PGM: width and height must be positive", scan.line());
    }
    if (maxval == 0 || maxval > 65535) {
        throw parse_error("PGM: maxval must lie in [1, 65535]", scan.line());
    }

    const std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<double> pixels;
    pixels.reserve(count);
    if (magic == "P2") {
        for (std::size_t k = 0; k < count; ++k) {
            const unsigned v = scan.number("pixel value");
            if (v > maxval) {
                throw parse_error("PGM: pixel value exceeds maxval", scan.line());
            }
            pixels.push_back(v);
        }
    } else {
        scan.raster_separator();
        const std::size_t bytes_per = maxval < 256 ? 1 : 2;
        if (scan.remaining() < count * bytes_per) {
            throw parse_error("PGM: short pixel payload (" + std::to_string(scan.remaining()) + " of " +
                                  std::to_string(count * bytes_per) + " bytes)",
                              scan.line());
        }
        for (std::size_t k = 0; k < count; ++k) {
            unsigned v = scan.byte();
            if (bytes_per == 2) {
                v = (v << 8) | scan.byte();
            }
            if (v > maxval) {
                throw parse_error("PGM: pixel value exceeds maxval", scan.line());
            }
            pixels.push_back(v);
        }
    }
    return {Mat(height, width, std::move(pixels)), maxval};
}

Mat read_pgm(std::istream &in) { return read_pgm_image(in).pixels; }

Mat read_pgm(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path.string() + "'");
    }
    return read_pgm(in);
}

void write_pgm(std::ostream &out, const Mat &pixels, unsigned maxval, bool binary) {
    if (maxval == 0 || maxval > 65535) {
        throw input_error("write_pgm: maxval must lie in [1, 65535]");
    }
    std::vector<unsigned> values;
    values.reserve(pixels.size());
    for (double v : pixels.data()) {
        const double r = std::round(v);
        if (r < 0.0 || r > maxval) {
            throw input_error("write_pgm: pixel outside [0, maxval]");
        }
        values.push_back(static_cast<unsigned>(r));
    }
    out << (binary ? "P5" : "P2") << '\n' << pixels.cols() << ' ' << pixels.rows() << '\n' << maxval << '\n';
    if (binary) {
        for (unsigned v : values) {
            if (maxval >= 256) {
                out.put(static_cast<char>(v >> 8));
            }
            out.put(static_cast<char>(v & 0xFF));
        }
    } else {
        for (std::size_t i = 0; i < pixels.rows(); ++i) {
            for (std::size_t j = 0; j < pixels.cols(); ++j) {
                out << (j ? " " : "") << values[i * pixels.cols() + j];
            }
            out << '\n';
        }
    }
}

void write_pgm(const std::filesystem::path &path, const Mat &pixels, unsigned maxval, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open '" + path.string() + "' for writing");
    }
    write_pgm(out, pixels, maxval, binary);
    if (!out.flush()) {
        throw io_error("failed writing '" + path.string() + "'");
    }
}

Mat normalize_unit(const Mat &x, double maxval) {
    if (!(maxval > 0.0) || !std::isfinite(maxval)) {
        throw input_error("normalize_unit: maxval must be positive");
    }
    std::vector<double> out(x.data().begin(), x.data().end());
    for (double &v : out) {
        v /= maxval;
    }
    return Mat(x.rows(), x.cols(), std::move(out));
}

namespace {

// Overlap weights between source cells and output cells along one axis. In units where a source
// cell has length `to` and an output cell length `from`, both partitions cover [0, from * to), so
// every overlap is an integer.
struct AxisWeight {
    std::size_t source;
    double weight;
};

std::vector<std::vector<AxisWeight>> axis_weights(std::size_t from, std::size_t to) {
    std::vector<std::vector<AxisWeight>> out(to);
    for (std::size_t o = 0; o < to; ++o) {
        const std::size_t lo = o * from;
        const std::size_t hi = lo + from;
        for (std::size_t s = lo / to; s < from && s * to < hi; ++s) {
            const std::size_t a = std::max(lo, s * to);
            const std::size_t b = std::min(hi, (s + 1) * to);
            if (b > a) {
                out[o].push_back({s, static_cast<double>(b - a)});
            }
        }
    }
    return out;
}

}  // namespace

Mat resize_block_mean(const Mat &x, std::size_t new_m, std::size_t new_n) {
    if (new_m == 0 || new_n == 0) {
        throw dimension_error("resize_block_mean: target dimensions must be positive");
    }
    if (new_m == x.rows() && new_n == x.cols()) {
        return x;
    }
    const auto rows = axis_weights(x.rows(), new_m);
    const auto cols = axis_weights(x.cols(), new_n);
    const double area = static_cast<double>(x.rows()) * static_cast<double>(x.cols());
    std::vector<double> out(new_m * new_n);
    for (std::size_t i = 0; i < new_m; ++i) {
        for (std::size_t j = 0; j < new_n; ++j) {
            double acc = 0.0;
            for (const auto &r : rows[i]) {
                for (const auto &c : cols[j]) {
                    acc += r.weight * c.weight * x(r.source, c.source);
                }
            }
            out[i * new_n + j] = acc / area;
        }
    }
    return Mat(new_m, new_n, std::move(out));
}

}  // namespace mdsmm
