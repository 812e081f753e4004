#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace srspmd::csv {

/* Minimal comma-separated reader for the file schemas used by this project:
 * UTF-8, header row required, '.' decimal point, no quoting or embedded
 * commas. Loads the whole file and hands out one row at a time. */
class Reader {
public:
    explicit Reader(const std::string& path) : path_(path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error(path + ": cannot open file");
        std::ostringstream buf;
        buf << in.rdbuf();
        data_ = buf.str();
        pos_ = 0;
        line_no_ = 0;
        if (!next_row(header_)) throw std::runtime_error(path + ": missing header row");
    }

    const std::vector<std::string>& header() const { return header_; }

    int column(std::string_view name) const {
        for (size_t i = 0; i < header_.size(); i++)
            if (header_[i] == name) return static_cast<int>(i);
        return -1;
    }

    int require_column(std::string_view name) const {
        int c = column(name);
        if (c < 0)
            throw std::runtime_error(path_ + ": missing required column '" + std::string(name) + "'");
        return c;
    }

    /* Reads the next non-empty row; returns false at end of file. */
    bool next_row(std::vector<std::string>& out) {
        out.clear();
        while (pos_ < data_.size()) {
            size_t eol = data_.find('\n', pos_);
            if (eol == std::string::npos) eol = data_.size();
            std::string_view line(data_.data() + pos_, eol - pos_);
            pos_ = eol + 1;
            line_no_++;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.empty()) continue;
            size_t start = 0;
            for (;;) {
                size_t comma = line.find(',', start);
                if (comma == std::string_view::npos) {
                    out.emplace_back(line.substr(start));
                    break;
                }
                out.emplace_back(line.substr(start, comma - start));
                start = comma + 1;
            }
            return true;
        }
        return false;
    }

    size_t line_number() const { return line_no_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error(path_ + ":" + std::to_string(line_no_) + ": " + msg);
    }

    double parse_double(const std::string& field) const {
        double v = 0;
        auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || p != field.data() + field.size())
            fail("not a number: '" + field + "'");
        return v;
    }

    int64_t parse_int(const std::string& field) const {
        int64_t v = 0;
        auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || p != field.data() + field.size())
            fail("not an integer: '" + field + "'");
        return v;
    }

private:
    std::string path_;
    std::string data_;
    size_t pos_ = 0;
    size_t line_no_ = 0;
    std::vector<std::string> header_;
};

/* Shortest round-trip decimal formatting; keeps output files byte-stable
 * across reruns. */
inline std::string fmt(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string fmt(int64_t v) { return std::to_string(v); }
inline std::string fmt(int32_t v) { return std::to_string(v); }

}  // namespace srspmd::csv
