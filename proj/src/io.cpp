// SPDX-License-Identifier: MIT

#include "schilder/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace schilder::io {

Value Value::array() {
    Value v;
    v.kind_ = Kind::array;
    return v;
}

Value Value::object() {
    Value v;
    v.kind_ = Kind::object;
    return v;
}

Value& Value::operator[](const std::string& key) {
    if (kind_ == Kind::null) kind_ = Kind::object;
    if (kind_ != Kind::object) throw std::logic_error("not a JSON object");
    return fields_[key];
}

void Value::push_back(Value v) {
    if (kind_ == Kind::null) kind_ = Kind::array;
    if (kind_ != Kind::array) throw std::logic_error("not a JSON array");
    items_.push_back(std::move(v));
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * depth), ' ');
}

}  // namespace

void Value::write(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::null: out += "null"; break;
        case Kind::boolean: out += bool_ ? "true" : "false"; break;
        case Kind::number: out += format_double(num_); break;
        case Kind::integer: out += std::to_string(int_); break;
        case Kind::string: write_escaped(out, str_); break;
        case Kind::array: {
            out += '[';
            bool first = true;
            for (const auto& item : items_) {
                if (!first) out += ',';
                first = false;
                newline_indent(out, indent, depth + 1);
                item.write(out, indent, depth + 1);
            }
            if (!items_.empty()) newline_indent(out, indent, depth);
            out += ']';
            break;
        }
        case Kind::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, val] : fields_) {  // std::map: sorted keys
                if (!first) out += ',';
                first = false;
                newline_indent(out, indent, depth + 1);
                write_escaped(out, key);
                out += indent > 0 ? ": " : ":";
                val.write(out, indent, depth + 1);
            }
            if (!fields_.empty()) newline_indent(out, indent, depth);
            out += '}';
            break;
        }
    }
}

std::string Value::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

void write_text(const std::string& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to " + file);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + file);
}

std::string read_text(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, std::size_t row) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("row " + std::to_string(row) + ": cannot parse number '" + s + "'");
    }
}

}  // namespace

void save_path_csv(const DyadicPath& path, const std::string& file) {
    std::string out = "t";
    for (std::size_t k = 0; k < path.channels; ++k) out += ",ch" + std::to_string(k);
    out += '\n';
    const double h = std::ldexp(1.0, -static_cast<int>(path.level));
    char buf[40];
    for (std::size_t j = 0; j < path.points(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", static_cast<double>(j) * h);
        out += buf;
        for (std::size_t k = 0; k < path.channels; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", path.samples(j, k));
            out += ',';
            out += buf;
        }
        out += '\n';
    }
    write_text(file, out);
}

DyadicPath load_path_csv(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read " + file);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty path file " + file);
    const auto header = split_csv_line(line);
    if (header.empty() || header[0] != "t")
        throw ConfigError("path CSV must start with header t,ch0,...");
    const std::size_t channels = header.size() - 1;
    if (channels == 0) throw ConfigError("path CSV has no channels");
    for (std::size_t k = 0; k < channels; ++k)
        if (header[k + 1] != "ch" + std::to_string(k))
            throw ConfigError("unexpected path CSV column '" + header[k + 1] + "'");

    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != channels + 1)
            throw ConfigError("row " + std::to_string(lineno) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(channels + 1));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_double(c, lineno));
        rows.push_back(std::move(row));
    }

    const std::size_t count = rows.size();
    if (count < 2 || !std::has_single_bit(count - 1))
        throw ConfigError("row count " + std::to_string(count) + " is not 2^J + 1");
    const std::size_t level = std::bit_width(count - 1) - 1;
    const double h = std::ldexp(1.0, -static_cast<int>(level));
    double prev = -1.0;
    for (std::size_t j = 0; j < count; ++j) {
        if (rows[j][0] <= prev)
            throw ConfigError("row " + std::to_string(j + 2) + ": t column is not increasing");
        prev = rows[j][0];
        if (rows[j][0] != static_cast<double>(j) * h)
            throw ConfigError("row " + std::to_string(j + 2) + ": t = " +
                              std::to_string(rows[j][0]) + " is not j/2^J");
    }
    for (std::size_t k = 0; k < channels; ++k)
        if (rows[0][k + 1] != 0.0) throw ConfigError("path must start at 0");

    Matrix samples(count, channels);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t k = 0; k < channels; ++k) samples(j, k) = rows[j][k + 1];
    return DyadicPath(level, channels, std::move(samples));
}

void save_coeff_csv(const CoeffMatrix& coeffs, const std::string& file) {
    std::string out = "n,k_level,l_shift,channel,raw,scaled\n";
    char buf[40];
    for (std::size_t n = 0; n < coeffs.count(); ++n) {
        long long lev = -1, shift = -1;
        if (n > 0) {
            const std::size_t width = std::bit_width(n) - 1;
            lev = static_cast<long long>(width);
            shift = static_cast<long long>(n - (std::size_t{1} << width));
        }
        for (std::size_t k = 0; k < coeffs.channels; ++k) {
            out += std::to_string(n) + ',' + std::to_string(lev) + ',' +
                   std::to_string(shift) + ',' + std::to_string(k);
            std::snprintf(buf, sizeof(buf), "%.17g", coeffs.raw(n, k));
            out += ',';
            out += buf;
            std::snprintf(buf, sizeof(buf), "%.17g", coeffs.scaled(n, k));
            out += ',';
            out += buf;
            out += '\n';
        }
    }
    write_text(file, out);
}

CoeffMatrix load_coeff_csv(const std::string& file, HolderExponent alpha) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read " + file);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty coefficient file " + file);
    if (split_csv_line(line) !=
        std::vector<std::string>{"n", "k_level", "l_shift", "channel", "raw", "scaled"})
        throw ConfigError("unexpected coefficient CSV header");

    std::size_t max_n = 0, max_k = 0, lineno = 1;
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 6)
            throw ConfigError("row " + std::to_string(lineno) + ": expected 6 cells");
        const auto n = static_cast<std::size_t>(parse_double(cells[0], lineno));
        const auto k = static_cast<std::size_t>(parse_double(cells[3], lineno));
        const double raw = parse_double(cells[4], lineno);
        max_n = std::max(max_n, n);
        max_k = std::max(max_k, k);
        entries.emplace_back(n, k, raw);
    }
    const std::size_t count = max_n + 1;
    if (!std::has_single_bit(count))
        throw ConfigError("coefficient count " + std::to_string(count) +
                          " is not a power of two");
    Matrix raw(count, max_k + 1);
    for (const auto& [n, k, v] : entries) raw(n, k) = v;
    return CoeffMatrix::from_raw(std::move(raw), alpha);
}

}  // namespace schilder::io
