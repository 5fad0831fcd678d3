#include "citeangle/report.hpp"

#include "csv.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>

namespace citeangle {
namespace {

using nlohmann::ordered_json;

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    std::string s(buf);
    // "-0.0000" and friends print as zero.
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

double rounded(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::round(x * scale) / scale + 0.0;
}

ordered_json optional_number(const std::optional<double>& v, int digits) {
    return v ? ordered_json(rounded(*v, digits)) : ordered_json(nullptr);
}

ordered_json tier_block(const TierCounts& tc, std::size_t total) {
    ordered_json out = ordered_json::object();
    for (const auto t : {Tier::none, Tier::possible, Tier::typical, Tier::higher}) {
        out[to_string(t)] = {{"count", tc.at(t)}, {"pct", rounded(percent(tc.at(t), total), 2)}};
    }
    out["at_least_possible"] = {{"count", tc.at_least(Tier::possible)},
                                {"pct", rounded(percent(tc.at_least(Tier::possible), total), 2)}};
    out["at_least_typical"] = {{"count", tc.at_least(Tier::typical)},
                               {"pct", rounded(percent(tc.at_least(Tier::typical), total), 2)}};
    return out;
}

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out.push_back(sep);
        out += items[i];
    }
    return out;
}

}  // namespace

void TierCounts::add(Tier t) noexcept {
    switch (t) {
        case Tier::none: ++none; break;
        case Tier::possible: ++possible; break;
        case Tier::typical: ++typical; break;
        case Tier::higher: ++higher; break;
    }
}

std::size_t TierCounts::at(Tier t) const noexcept {
    switch (t) {
        case Tier::none: return none;
        case Tier::possible: return possible;
        case Tier::typical: return typical;
        case Tier::higher: return higher;
    }
    return 0;
}

std::size_t TierCounts::at_least(Tier t) const noexcept {
    std::size_t n = 0;
    for (const auto u : {Tier::none, Tier::possible, Tier::typical, Tier::higher}) {
        if (u >= t) n += at(u);
    }
    return n;
}

double percent(std::size_t count, std::size_t total) noexcept {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

SeriesRecord analyze_series(const CitationSeries& series, const CriteriaConfig& config) {
    SeriesRecord rec;
    rec.paper_id = series.paper_id;
    rec.categories = series.categories;
    rec.profile = angle_profile(series.counts);
    rec.beauty = beauty_scores(series.counts);
    rec.result = classify(series.counts, rec.profile, config);
    rec.sleep = detect_sleep(series.counts, rec.profile, config);
    return rec;
}

CorpusReport classify_corpus(const Corpus& corpus, const CriteriaConfig& config,
                             const ReportOptions& options) {
    if (corpus.empty()) {
        throw InputError("empty input");
    }
    config.validate();

    const auto all = corpus.series();
    std::vector<std::optional<SeriesRecord>> records(all.size());
    std::vector<std::vector<std::string>> reasons(all.size());
    const unsigned jobs = options.jobs == 0 ? detail::default_jobs() : options.jobs;

    detail::parallel_for(all.size(), jobs, [&](std::size_t i) {
        const auto series = shift_origin(all[i], options.zero_offset);
        for (const auto& v : validate(series, options.min_years)) {
            reasons[i].push_back(std::string(to_string(v.kind)) + ": " + v.message);
        }
        if (!reasons[i].empty()) return;
        try {
            records[i] = analyze_series(series, config);
        } catch (const std::invalid_argument& e) {
            reasons[i].emplace_back(e.what());
        }
    });

    CorpusReport report;
    report.config = config;
    report.zero_offset = options.zero_offset;
    report.totals.series = all.size();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (records[i]) {
            auto& rec = *records[i];
            report.totals.sg.add(rec.result.sg_tier);
            report.totals.sb.add(rec.result.sb_tier);
            report.totals.asb += rec.result.asb ? 1 : 0;
            report.totals.short_series += rec.result.short_series ? 1 : 0;
            report.records.push_back(std::move(rec));
        } else {
            report.skipped.push_back({all[i].paper_id, std::move(reasons[i])});
        }
    }
    report.totals.classified = report.records.size();
    report.totals.skipped = report.skipped.size();
    report.categories = aggregate_by_category(report);
    return report;
}

std::vector<CategoryRow> aggregate_by_category(const CorpusReport& report) {
    std::map<std::string, CategoryRow> rows;
    const auto tally = [&](const std::string& cat, const SeriesRecord& rec) {
        auto& row = rows[cat];
        row.category = cat;
        ++row.papers;
        row.sg_typical += rec.result.sg_tier >= Tier::typical ? 1 : 0;
        row.sb_typical += rec.result.sb_tier >= Tier::typical ? 1 : 0;
    };
    for (const auto& rec : report.records) {
        if (rec.categories.empty()) {
            tally(kNoCategory, rec);
            continue;
        }
        for (const auto& cat : rec.categories) tally(cat, rec);
    }
    std::vector<CategoryRow> out;
    out.reserve(rows.size());
    for (auto& [_, row] : rows) {
        row.sg_pct = percent(row.sg_typical, row.papers);
        row.sb_pct = percent(row.sb_typical, row.papers);
        out.push_back(std::move(row));
    }
    return out;
}

std::string report_to_json(const CorpusReport& report) {
    ordered_json doc = ordered_json::object();
    doc["criteria"] = ordered_json::parse(criteria_to_json(report.config));
    doc["zero_offset"] = report.zero_offset;

    ordered_json series = ordered_json::array();
    for (const auto& rec : report.records) {
        const auto& p = rec.profile;
        const auto& ev = rec.result.evidence;
        ordered_json s = ordered_json::object();
        s["paper_id"] = rec.paper_id;
        s["categories"] = rec.categories;
        s["t_h"] = p.t_h;
        s["t1"] = p.t1();
        s["c1"] = p.c1();
        s["t2"] = p.t2();
        s["c2"] = p.c2();
        s["tm"] = p.global.t;
        s["cm"] = p.global.c;
        s["beta1_deg"] = rounded(p.beta1_deg(), 4);
        s["beta2_deg"] = rounded(p.beta2_deg(), 4);
        s["betam_deg"] = rounded(p.betam_deg(), 4);
        s["b"] = rounded(rec.beauty.b, 4);
        s["b_prime"] = rounded(rec.beauty.b_prime, 4);
        s["sca"] = ev.sca;
        s["scb"] = ev.scb;
        s["ac_sg"] = optional_number(ev.ac_sg, 4);
        s["ac_sb"] = optional_number(ev.ac_sb, 4);
        s["dt"] = ev.dt;
        s["sg_tier"] = to_string(rec.result.sg_tier);
        s["sb_tier"] = to_string(rec.result.sb_tier);
        s["asb"] = rec.result.asb;
        s["short_series"] = rec.result.short_series;
        s["sleep"] = {{"start", rec.sleep.s > 0 ? ordered_json(rec.sleep.sleep_start) : ordered_json(nullptr)},
                      {"end", rec.sleep.s > 0 ? ordered_json(rec.sleep.sleep_end) : ordered_json(nullptr)},
                      {"s", rec.sleep.s},
                      {"cs_mean", rounded(rec.sleep.cs_mean, 4)},
                      {"depth", to_string(rec.sleep.depth)},
                      {"cw", rounded(rec.sleep.cw, 4)}};
        series.push_back(std::move(s));
    }
    doc["series"] = std::move(series);

    ordered_json skipped = ordered_json::array();
    for (const auto& sk : report.skipped) {
        skipped.push_back({{"paper_id", sk.paper_id}, {"reasons", sk.reasons}});
    }
    doc["skipped"] = std::move(skipped);

    const auto& t = report.totals;
    doc["totals"] = {{"series", t.series},
                     {"classified", t.classified},
                     {"skipped", t.skipped},
                     {"short_series", t.short_series},
                     {"sg", tier_block(t.sg, t.classified)},
                     {"sb", tier_block(t.sb, t.classified)},
                     {"asb", {{"count", t.asb}, {"pct", rounded(percent(t.asb, t.classified), 2)}}}};

    ordered_json cats = ordered_json::array();
    for (const auto& row : report.categories) {
        cats.push_back({{"category", row.category},
                        {"papers", row.papers},
                        {"sg_typical", row.sg_typical},
                        {"sb_typical", row.sb_typical},
                        {"sg_typical_pct", rounded(row.sg_pct, 2)},
                        {"sb_typical_pct", rounded(row.sb_pct, 2)}});
    }
    doc["categories"] = std::move(cats);
    return doc.dump(2) + "\n";
}

void write_series_table(std::ostream& out, const CorpusReport& report) {
    out << "paper_id,beta1_deg,beta2_deg,betam_deg,b,b_prime,sca,scb,ac_sg,ac_sb,dt,sg_tier,sb_tier,asb\n";
    for (const auto& rec : report.records) {
        const auto& ev = rec.result.evidence;
        out << csv::quote_if_needed(rec.paper_id) << ',' << fixed(rec.profile.beta1_deg(), 4) << ','
            << fixed(rec.profile.beta2_deg(), 4) << ',' << fixed(rec.profile.betam_deg(), 4) << ','
            << fixed(rec.beauty.b, 4) << ',' << fixed(rec.beauty.b_prime, 4) << ',' << ev.sca << ','
            << ev.scb << ',' << (ev.ac_sg ? fixed(*ev.ac_sg, 4) : "") << ','
            << (ev.ac_sb ? fixed(*ev.ac_sb, 4) : "") << ',' << ev.dt << ','
            << to_string(rec.result.sg_tier) << ',' << to_string(rec.result.sb_tier) << ','
            << (rec.result.asb ? "true" : "false") << '\n';
    }
}

void write_summary(std::ostream& out, const CorpusReport& report, bool by_category) {
    const auto& t = report.totals;
    out << "series      " << t.series << '\n'
        << "classified  " << t.classified << '\n'
        << "skipped     " << t.skipped << '\n';
    if (t.short_series > 0) {
        out << "short (T < 2*dt_min) " << t.short_series << '\n';
    }
    out << "\ntier        SG count   SG %     SB count   SB %\n";
    for (const auto tier : {Tier::none, Tier::possible, Tier::typical, Tier::higher}) {
        char line[128];
        std::snprintf(line, sizeof line, "%-10s  %8zu  %7s  %9zu  %7s\n", to_string(tier), t.sg.at(tier),
                      fixed(percent(t.sg.at(tier), t.classified), 2).c_str(), t.sb.at(tier),
                      fixed(percent(t.sb.at(tier), t.classified), 2).c_str());
        out << line;
    }
    {
        char line[128];
        std::snprintf(line, sizeof line, "%-10s  %8zu  %7s  %9zu  %7s\n", ">=typical",
                      t.sg.at_least(Tier::typical),
                      fixed(percent(t.sg.at_least(Tier::typical), t.classified), 2).c_str(),
                      t.sb.at_least(Tier::typical),
                      fixed(percent(t.sb.at_least(Tier::typical), t.classified), 2).c_str());
        out << line;
    }
    out << "\nASB         " << t.asb << " (" << fixed(percent(t.asb, t.classified), 2) << "%)\n";
    if (by_category) {
        out << "\ncategory,papers,sg_typical,sg_typical_pct,sb_typical,sb_typical_pct\n";
        for (const auto& row : report.categories) {
            out << csv::quote_if_needed(row.category) << ',' << row.papers << ',' << row.sg_typical << ','
                << fixed(row.sg_pct, 2) << ',' << row.sb_typical << ',' << fixed(row.sb_pct, 2) << '\n';
        }
    }
    for (const auto& sk : report.skipped) {
        out << "skipped " << sk.paper_id << ": " << join(sk.reasons, ';') << '\n';
    }
}

std::vector<Peak> local_peaks(std::span<const Count> counts) {
    std::vector<Peak> out;
    const int T = static_cast<int>(counts.size()) - 1;
    const auto at = [&](int t) { return counts[static_cast<std::size_t>(t)]; };
    int t = 1;
    while (t <= T) {
        int end = t;
        while (end < T && at(end + 1) == at(t)) ++end;
        const bool left_lower = t == 1 || at(t - 1) < at(t);
        const bool right_lower = end == T || at(end + 1) < at(t);
        if (at(t) > 0 && left_lower && right_lower) out.push_back({t, at(t)});
        t = end + 1;
    }
    return out;
}

CurveTable emit_curve_data(std::span<const Count> counts, const AngleProfile& profile, CurveLines lines) {
    CurveTable table;
    table.columns = {"t", "c", "l1", "l2"};
    std::vector<Peak> extra;
    if (lines == CurveLines::all_peaks) {
        extra = local_peaks(counts);
        for (const auto& p : extra) table.columns.push_back("l_t" + std::to_string(p.t));
    }
    const double slope1 = std::tan(profile.beta1);
    const double slope2 = std::tan(profile.beta2);
    for (std::size_t t = 0; t < counts.size(); ++t) {
        const auto td = static_cast<double>(t);
        std::vector<double> row{td, static_cast<double>(counts[t]), slope1 * td, slope2 * td};
        for (const auto& p : extra) row.push_back(static_cast<double>(p.c) / p.t * td);
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_curve(std::ostream& out, const CurveTable& table) {
    out << join(table.columns, ',') << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            // t and c are integers
            out << (i < 2 ? std::to_string(static_cast<long long>(row[i])) : fixed(row[i], 6));
        }
        out << '\n';
    }
}

}  // namespace citeangle
