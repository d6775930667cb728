#include "mcs/bfile.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "mcs/errors.hpp"

namespace mcs {

BFile BFile::from_terms(const std::vector<Term>& values, std::int64_t offset) {
    BFile f;
    f.records.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        f.records.push_back({offset + static_cast<std::int64_t>(i), values[i]});
    }
    return f;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool is_integer_token(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

BFile parse_bfile(std::istream& in) {
    BFile f;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto sep = line.find_first_of(" \t");
        if (sep == std::string_view::npos) {
            throw MalformedInput("expected \"index value\"", line_no);
        }
        const std::string_view idx_text = line.substr(0, sep);
        const std::string_view val_text = trim(line.substr(sep + 1));
        if (!is_integer_token(idx_text) || !is_integer_token(val_text)) {
            throw MalformedInput("expected two integers", line_no);
        }
        std::int64_t index = 0;
        const auto [ptr, ec] =
            std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
        if (ec != std::errc{} || ptr != idx_text.data() + idx_text.size()) {
            throw MalformedInput("index out of range", line_no);
        }
        if (!f.records.empty() && index != f.records.back().index + 1) {
            throw MalformedInput("index " + std::to_string(index) + " does not follow " +
                                     std::to_string(f.records.back().index),
                                 line_no);
        }
        f.records.push_back({index, Term(std::string(val_text), 10)});
    }
    if (in.bad()) throw MalformedInput("read error", line_no);
    return f;
}

BFile read_bfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return parse_bfile(in);
}

void write_bfile(std::ostream& out, const BFile& file) {
    for (const auto& r : file.records) out << r.index << ' ' << r.value.get_str() << '\n';
}

}  // namespace mcs
