#include "citeangle/series_io.hpp"

#include "csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

namespace citeangle {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

template <typename Int>
Int parse_int(std::string_view cell, std::string_view what, std::size_t line_no) {
    const auto s = csv::trim(cell);
    Int value{};
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (s.empty() || ec != std::errc{} || ptr != last) {
        throw InputError("line " + std::to_string(line_no) + ": " + std::string(what) +
                         " is not an integer: '" + std::string(s) + "'");
    }
    return value;
}

bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!csv::trim(line).empty()) return true;
    }
    return false;
}

std::vector<std::string> read_header(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) {
        throw InputError("empty input");
    }
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    auto cols = csv::split_record(line);
    for (auto& c : cols) c = lower(csv::trim(c));
    return cols;
}

void merge_categories(std::vector<std::string>& into, const std::vector<std::string>& more) {
    for (const auto& c : more) {
        if (std::find(into.begin(), into.end(), c) == into.end()) into.push_back(c);
    }
}

std::string years_label(const std::string& id, int year) {
    return "paper '" + id + "' year " + std::to_string(year);
}

}  // namespace

Corpus parse_long(std::span<const LongRow> rows, const ParseOptions& options) {
    if (rows.empty()) {
        throw InputError("empty input");
    }
    struct Pending {
        std::map<int, Count> by_year;
        std::vector<std::string> categories;
        std::optional<int> pub_year;
    };
    std::vector<std::string> order;
    std::unordered_map<std::string, Pending> pending;

    for (const auto& row : rows) {
        if (row.paper_id.empty()) {
            throw InputError("row with empty paper_id");
        }
        if (row.citations < 0) {
            throw InputError("negative citations for " + years_label(row.paper_id, row.year));
        }
        auto [it, fresh] = pending.try_emplace(row.paper_id);
        if (fresh) order.push_back(row.paper_id);
        auto& p = it->second;
        if (!p.by_year.emplace(row.year, row.citations).second) {
            throw InputError("duplicate row for " + years_label(row.paper_id, row.year));
        }
        merge_categories(p.categories, row.categories);
        if (row.pub_year) {
            if (p.pub_year && *p.pub_year != *row.pub_year) {
                throw InputError("conflicting pub_year for paper '" + row.paper_id + "'");
            }
            p.pub_year = row.pub_year;
        }
    }

    Corpus corpus;
    for (const auto& id : order) {
        auto& p = pending.at(id);
        const int first_year = p.by_year.begin()->first;
        const int last_year = p.by_year.rbegin()->first;
        const int pub_year = p.pub_year.value_or(first_year);
        if (pub_year > first_year) {
            throw InputError("paper '" + id + "' has citations in " + std::to_string(first_year) +
                             " before its pub_year " + std::to_string(pub_year));
        }
        CitationSeries s;
        s.paper_id = id;
        s.pub_year = pub_year;
        s.categories = std::move(p.categories);
        s.counts.reserve(static_cast<std::size_t>(last_year - pub_year + 1));
        for (int y = pub_year; y <= last_year; ++y) {
            const auto found = p.by_year.find(y);
            if (found != p.by_year.end()) {
                s.counts.push_back(found->second);
                continue;
            }
            if (!options.zero_fill) {
                throw InputError("gap in years: missing " + years_label(id, y));
            }
            if (options.on_warning) {
                options.on_warning("zero-filled missing " + years_label(id, y));
            }
            s.counts.push_back(0);
        }
        corpus.add(std::move(s));
    }
    return corpus;
}

Corpus parse_wide(std::span<const WideRow> rows) {
    if (rows.empty()) {
        throw InputError("empty input");
    }
    Corpus corpus;
    for (const auto& row : rows) {
        if (row.counts.empty()) {
            throw InputError("empty series for paper '" + row.paper_id + "'");
        }
        if (std::any_of(row.counts.begin(), row.counts.end(), [](Count c) { return c < 0; })) {
            throw InputError("negative count for paper '" + row.paper_id + "'");
        }
        corpus.add(CitationSeries{row.paper_id, row.pub_year, row.counts, row.categories});
    }
    return corpus;
}

std::vector<LongRow> read_long_rows(std::istream& in) {
    const auto header = read_header(in);
    const auto col = [&](std::string_view name) -> std::optional<std::size_t> {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto id_col = col("paper_id");
    const auto year_col = col("year");
    const auto cit_col = col("citations");
    if (!id_col || !year_col || !cit_col) {
        throw InputError("long format header must contain paper_id,year,citations");
    }
    auto cat_col = col("category");
    if (!cat_col) cat_col = col("categories");
    const auto pub_col = col("pub_year");

    std::vector<LongRow> rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split_record(line);
        if (cells.size() != header.size()) {
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        }
        LongRow row;
        row.paper_id = std::string(csv::trim(cells[*id_col]));
        row.year = parse_int<int>(cells[*year_col], "year", line_no);
        row.citations = parse_int<Count>(cells[*cit_col], "citations", line_no);
        if (cat_col) row.categories = csv::split_list(cells[*cat_col]);
        if (pub_col && !csv::trim(cells[*pub_col]).empty()) {
            row.pub_year = parse_int<int>(cells[*pub_col], "pub_year", line_no);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<WideRow> read_wide_rows(std::istream& in) {
    const auto header = read_header(in);
    if (header.size() < 3 || header[0] != "paper_id" || header[1] != "pub_year") {
        throw InputError("wide format header must start with paper_id,pub_year,c0");
    }
    const bool has_categories = header.back() == "categories" || header.back() == "category";
    const std::size_t n_counts = header.size() - 2 - (has_categories ? 1 : 0);
    if (n_counts == 0) {
        throw InputError("wide format header has no count columns");
    }
    for (std::size_t t = 0; t < n_counts; ++t) {
        if (header[2 + t] != "c" + std::to_string(t)) {
            throw InputError("wide format count column " + std::to_string(t) + " must be named c" +
                             std::to_string(t) + ", got '" + header[2 + t] + "'");
        }
    }

    std::vector<WideRow> rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split_record(line);
        if (cells.size() != header.size()) {
            throw InputError("line " + std::to_string(line_no) + ": ragged row, expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        }
        WideRow row;
        row.paper_id = std::string(csv::trim(cells[0]));
        row.pub_year = parse_int<int>(cells[1], "pub_year", line_no);
        std::size_t used = n_counts;
        while (used > 0 && csv::trim(cells[2 + used - 1]).empty()) --used;
        row.counts.reserve(used);
        for (std::size_t t = 0; t < used; ++t) {
            row.counts.push_back(parse_int<Count>(cells[2 + t], "c" + std::to_string(t), line_no));
        }
        if (has_categories) row.categories = csv::split_list(cells.back());
        rows.push_back(std::move(row));
    }
    return rows;
}

Corpus read_long(std::istream& in, const ParseOptions& options) {
    const auto rows = read_long_rows(in);
    return parse_long(rows, options);
}

Corpus read_wide(std::istream& in) {
    const auto rows = read_wide_rows(in);
    return parse_wide(rows);
}

TableFormat detect_format(const std::string& header_line) {
    auto cols = csv::split_record(header_line);
    for (auto& c : cols) c = lower(csv::trim(c));
    if (!cols.empty() && cols[0].rfind("\xEF\xBB\xBF", 0) == 0) cols[0].erase(0, 3);
    const auto has = [&](std::string_view name) {
        return std::find(cols.begin(), cols.end(), name) != cols.end();
    };
    if (has("year") && has("citations")) return TableFormat::long_rows;
    if (has("pub_year") && has("c0")) return TableFormat::wide;
    throw InputError("cannot detect table format from header '" + header_line + "'");
}

Corpus load_corpus(const std::filesystem::path& path, TableFormat format,
                   const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open input file '" + path.string() + "'");
    }
    if (format == TableFormat::detect) {
        std::string header;
        if (!next_line(in, header)) {
            throw InputError("empty input");
        }
        format = detect_format(header);
        in.clear();
        in.seekg(0);
    }
    return format == TableFormat::wide ? read_wide(in) : read_long(in, options);
}

void write_long(std::ostream& out, const Corpus& corpus) {
    const bool with_cats = std::any_of(corpus.begin(), corpus.end(),
                                       [](const auto& s) { return !s.categories.empty(); });
    out << (with_cats ? "paper_id,year,citations,category\n" : "paper_id,year,citations\n");
    for (const auto& s : corpus) {
        std::string cats;
        for (std::size_t i = 0; i < s.categories.size(); ++i) {
            if (i) cats += ';';
            cats += s.categories[i];
        }
        for (std::size_t t = 0; t < s.counts.size(); ++t) {
            std::vector<std::string> fields{s.paper_id, std::to_string(s.pub_year + static_cast<int>(t)),
                                            std::to_string(s.counts[t])};
            if (with_cats) fields.push_back(cats);
            out << csv::join_record(fields) << '\n';
        }
    }
}

void write_wide(std::ostream& out, const Corpus& corpus) {
    std::size_t width = 0;
    bool with_cats = false;
    for (const auto& s : corpus) {
        width = std::max(width, s.counts.size());
        with_cats = with_cats || !s.categories.empty();
    }
    std::vector<std::string> header{"paper_id", "pub_year"};
    for (std::size_t t = 0; t < width; ++t) header.push_back("c" + std::to_string(t));
    if (with_cats) header.push_back("categories");
    out << csv::join_record(header) << '\n';
    for (const auto& s : corpus) {
        std::vector<std::string> fields{s.paper_id, std::to_string(s.pub_year)};
        for (std::size_t t = 0; t < width; ++t) {
            fields.push_back(t < s.counts.size() ? std::to_string(s.counts[t]) : std::string{});
        }
        if (with_cats) {
            std::string cats;
            for (std::size_t i = 0; i < s.categories.size(); ++i) {
                if (i) cats += ';';
                cats += s.categories[i];
            }
            fields.push_back(std::move(cats));
        }
        out << csv::join_record(fields) << '\n';
    }
}

}  // namespace citeangle
