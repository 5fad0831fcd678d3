#include <citeangle/angle.hpp>
#include <citeangle/beauty.hpp>
#include <citeangle/classifier.hpp>
#include <citeangle/report.hpp>
#include <citeangle/series_io.hpp>
#include <citeangle/synth.hpp>

#include "cli.hpp"
#include "fixtures.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace citeangle;
namespace fs = std::filesystem;

namespace {

const std::string kData = CITEANGLE_TEST_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && out_.pass) {
            out_.pass = false;
            out_.detail = what;
        }
        ++checks_;
    }
    void note(const std::string& detail) {
        if (out_.pass) out_.detail = detail;
    }
    [[nodiscard]] Outcome result() const {
        Outcome o = out_;
        if (o.pass && o.detail.empty()) o.detail = std::to_string(checks_) + " checks";
        return o;
    }

private:
    Outcome out_;
    long checks_ = 0;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    return cli::run_cli(args, out, err);
}

std::vector<Count> random_counts(std::mt19937_64& gen, int min_len, int max_len, Count max_count) {
    std::uniform_int_distribution<int> len(min_len, max_len);
    std::uniform_int_distribution<Count> c(0, max_count);
    std::vector<Count> out(static_cast<std::size_t>(len(gen)));
    for (auto& x : out) x = c(gen);
    return out;
}

// 1. Threshold angles against the printed degree-arcminute values.
Outcome threshold_constants() {
    Check check;
    struct Case {
        double c, t, expected_deg;
        int printed_deg, printed_min;
    };
    const Case cases[] = {{2, 1, 63.4349, 63, 27}, {2, 3, 33.6901, 33, 41}, {1, 10, 5.7106, 5, 42}};
    double worst_arcmin = 0.0;
    for (const auto& k : cases) {
        const double deg = citation_angle(k.c, k.t);
        check.expect(std::abs(deg - k.expected_deg) < 5e-5, fmt("angle %.6f vs %.4f", deg, k.expected_deg));
        const double printed = k.printed_deg + k.printed_min / 60.0;
        const double arcmin = std::abs(deg - printed) * 60.0;
        worst_arcmin = std::max(worst_arcmin, arcmin);
        check.expect(arcmin <= 2.0, fmt("%.4f deg is %.3f arcmin from the printed value", deg, arcmin));
    }
    check.note(fmt("63.4349/33.6901/5.7106 deg, worst %.3f arcmin from printed", worst_arcmin));
    return check.result();
}

// 2. Beauty coefficient on hand-checked series.
Outcome beauty_fixtures() {
    Check check;
    const std::pair<std::vector<Count>, double> cases[] = {
        {{0, 2, 4, 6, 8}, 0.0}, {{0, 0, 0, 0, 8}, 12.0}, {{0, 6, 8}, -1.0 / 3.0}};
    for (const auto& [counts, expected] : cases) {
        const double b = beauty_b(counts);
        check.expect(std::abs(b - expected) <= 1e-9, fmt("B = %.12f, expected %.12f", b, expected));
    }
    check.note("B = 0, 12, -1/3 within 1e-9");
    return check.result();
}

// 3. B = B' when c0 = 0; B' scale invariance when every count up to the peak is >= 1.
Outcome beauty_prime_properties() {
    Check check;
    std::mt19937_64 gen(3003);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        auto counts = random_counts(gen, 2, 40, 100);
        counts[0] = 0;
        const double diff = std::abs(beauty_b(counts) - beauty_b_prime(counts));
        worst = std::max(worst, diff);
        check.expect(diff <= 1e-9, fmt("B - B' = %.3g on series %.0f", diff, i));
    }
    int exact = 0;
    for (int i = 0; i < 1000; ++i) {
        auto counts = random_counts(gen, 2, 40, 100);
        const auto tm = beauty_scores(counts).tm;
        std::uniform_int_distribution<Count> pos(1, 100);
        for (int t = 0; t <= tm; ++t) {
            if (counts[static_cast<std::size_t>(t)] < 1) counts[static_cast<std::size_t>(t)] = pos(gen);
        }
        // raising prefix counts can move the peak; re-check the condition
        const auto s = beauty_scores(counts);
        bool prefix_ok = true;
        for (int t = 0; t <= s.tm; ++t) prefix_ok = prefix_ok && counts[static_cast<std::size_t>(t)] >= 1;
        if (!prefix_ok) {
            --i;
            continue;
        }
        const double base = s.b_prime;
        for (const Count k : {2, 3, 10}) {
            auto scaled = counts;
            for (auto& c : scaled) c *= k;
            const double b = beauty_b_prime(scaled);
            check.expect(b == base, fmt("B'(k c) = %.17g vs %.17g", b, base));
            exact += b == base ? 1 : 0;
        }
    }
    check.note(fmt("max |B - B'| = %.3g over 1000 series; %.0f/3000 scaled B' bit-identical", worst, exact));
    return check.result();
}

// 4. Analytic gradient against central differences; differential against the dot product.
Outcome gradient_checks() {
    Check check;
    std::mt19937_64 gen(4004);
    std::uniform_real_distribution<double> t_dist(1.0, 100.0);
    std::uniform_real_distribution<double> c_dist(0.0, 1000.0);
    std::uniform_real_distribution<double> d_dist(-5.0, 5.0);
    constexpr double h = 1e-4;
    double worst_fd = 0.0;
    double worst_diff = 0.0;
    for (int i = 0; i < 10000; ++i) {
        // central differences need t - h and c - h inside the domain
        const double t = std::max(t_dist(gen), 1.0 + h);
        const double c = c_dist(gen) + h;
        const auto g = beta_gradient(c, t);
        const double fd_c = (citation_angle_rad(c + h, t) - citation_angle_rad(c - h, t)) / (2 * h);
        const double fd_t = (citation_angle_rad(c, t + h) - citation_angle_rad(c, t - h)) / (2 * h);
        const double rel = std::hypot(fd_c - g.d_dc, fd_t - g.d_dt) / std::hypot(g.d_dc, g.d_dt);
        worst_fd = std::max(worst_fd, rel);
        check.expect(rel < 1e-6, fmt("relative FD error %.3g at c=%.6g t=%.6g", rel, c, t));

        const double dc = d_dist(gen);
        const double dt = d_dist(gen);
        const double diff = std::abs(beta_differential(c, t, dc, dt) - (g.d_dc * dc + g.d_dt * dt));
        worst_diff = std::max(worst_diff, diff);
        check.expect(diff <= 1e-12, fmt("differential off by %.3g", diff));
    }
    check.note(fmt("10000 points: worst relative FD error %.3g, worst differential gap %.3g", worst_fd, worst_diff));
    return check.result();
}

// 5. The three fixtures classify with the exact evidence.
Outcome classifier_fixtures() {
    using namespace citeangle::testing;
    Check check;
    const auto near4 = [](double a, double b) { return std::abs(a - b) < 5e-5; };
    const auto exact = [](const std::optional<double>& a, double b) { return a.has_value() && *a == b; };

    const auto sg = classify(kFixSg);
    check.expect(sg.sg_tier == Tier::higher && sg.sb_tier == Tier::none && !sg.asb, "FIX_SG tiers");
    check.expect(near4(sg.evidence.beta1_deg, 88.0908) && near4(sg.evidence.beta2_deg, 5.1944), "FIX_SG angles");
    check.expect(sg.evidence.sca == 30 && exact(sg.evidence.ac_sg, 26.0 / 19.0) && sg.evidence.dt == 10,
                 "FIX_SG evidence");
    check.expect(std::abs(*sg.evidence.ac_sg - 1.368) < 5e-4, "FIX_SG AC_SG ~ 1.368");

    const auto sb = classify(kFixSb);
    check.expect(sb.sg_tier == Tier::none && sb.sb_tier == Tier::higher && !sb.asb, "FIX_SB tiers");
    check.expect(near4(sb.evidence.beta1_deg, 26.5651) && near4(sb.evidence.beta2_deg, 50.7106), "FIX_SB angles");
    check.expect(sb.evidence.scb == 48 && exact(sb.evidence.ac_sb, 0.75) && sb.evidence.dt == 16, "FIX_SB evidence");

    const auto asb = classify(kFixAsb);
    check.expect(asb.sg_tier == Tier::typical && asb.sb_tier == Tier::higher && asb.asb, "FIX_ASB tiers");
    check.expect(near4(asb.evidence.beta1_deg, 85.4261) && near4(asb.evidence.beta2_deg, 61.9275),
                 "FIX_ASB angles");
    check.expect(asb.evidence.sca == 30 && asb.evidence.scb == 35 && exact(asb.evidence.ac_sg, 3.5) &&
                     exact(asb.evidence.ac_sb, 1.3) && asb.evidence.dt == 14,
                 "FIX_ASB evidence");
    check.note("FIX_SG higher-SG, FIX_SB higher-SB, FIX_ASB typical-SG + higher-SB + ASB");
    return check.result();
}

// 6. Tier nesting and strict boundaries on random series.
Outcome tier_properties() {
    Check check;
    const CriteriaConfig config;
    std::mt19937_64 gen(6006);
    GenSpec spec;
    spec.weights = {0.25, 0.25, 0.25, 0.25};
    const auto generated = generate_corpus(spec, 5000, 6006, 0);
    std::vector<std::vector<Count>> all;
    for (const auto& s : generated.corpus) all.push_back(s.counts);
    while (all.size() < 10000) all.push_back(random_counts(gen, 3, 40, 60));

    std::map<Tier, int> sg_seen;
    std::map<Tier, int> sb_seen;
    for (const auto& counts : all) {
        const auto r = classify(counts, config);
        const auto& ev = r.evidence;
        ++sg_seen[r.sg_tier];
        ++sb_seen[r.sb_tier];

        const bool sg_possible = ev.beta1_deg > 60.0 && ev.sca > 20;
        const bool sg_typical = sg_possible && ev.ac_sg && *ev.ac_sg <= 10.0 && ev.dt >= 10;
        const bool sg_higher = sg_typical && ev.beta1_deg > 88.0;
        const bool sb_possible = ev.beta2_deg > 5.0 && ev.scb > 20;
        const bool sb_typical = sb_possible && ev.ac_sb && *ev.ac_sb <= 2.0 && ev.dt >= 10;
        const bool sb_higher = sb_typical && ev.beta2_deg > 30.0;
        check.expect((r.sg_tier >= Tier::possible) == sg_possible, "sg possible predicate");
        check.expect((r.sg_tier >= Tier::typical) == sg_typical, "sg typical predicate");
        check.expect((r.sg_tier == Tier::higher) == sg_higher, "sg higher predicate");
        check.expect((r.sb_tier >= Tier::possible) == sb_possible, "sb possible predicate");
        check.expect((r.sb_tier >= Tier::typical) == sb_typical, "sb typical predicate");
        check.expect((r.sb_tier == Tier::higher) == sb_higher, "sb higher predicate");
        check.expect(!r.asb || (sb_typical && sg_possible), "asb implies typical SB with smart start");

        auto at60 = ev;
        at60.beta1_deg = 60.0;
        const auto t60 = assign_tiers(at60, config);
        check.expect(t60.sg_tier == Tier::none && !t60.asb, "beta1 = 60 exactly must not be possible-SG");
        auto sca20 = ev;
        sca20.sca = 20;
        const auto t20 = assign_tiers(sca20, config);
        check.expect(t20.sg_tier == Tier::none && !t20.asb, "SCa = 20 exactly must not suffice");
    }
    std::ostringstream note;
    note << all.size() << " series; SG tiers none/possible/typical/higher = " << sg_seen[Tier::none] << '/'
         << sg_seen[Tier::possible] << '/' << sg_seen[Tier::typical] << '/' << sg_seen[Tier::higher]
         << ", SB = " << sb_seen[Tier::none] << '/' << sb_seen[Tier::possible] << '/' << sb_seen[Tier::typical]
         << '/' << sb_seen[Tier::higher];
    check.note(note.str());
    return check.result();
}

struct Workdir {
    fs::path path;
    explicit Workdir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~Workdir() { fs::remove_all(path); }
};

// 7. Planted kinds recovered end to end through the command line.
Outcome corpus_recovery() {
    Check check;
    Workdir dir("citeangle_acceptance_recovery");
    const auto corpus = dir.path / "corpus.csv";
    const auto report_dir = dir.path / "report";

    const auto start = std::chrono::steady_clock::now();
    check.expect(cli({"generate", "--spec", kData + "/gen_recovery.json", "--n", "10000", "--seed", "20160901",
                      "--out", corpus.string(), "--jobs", "0"}) == 0,
                 "generate failed");
    check.expect(cli({"classify", "--input", corpus.string(), "--out", report_dir.string(), "--emit", "json"}) == 0,
                 "classify failed");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!check.result().pass) return check.result();

    std::map<std::string, std::string> planted;
    {
        std::ifstream in(dir.path / "corpus.planted.csv");
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            planted[line.substr(0, comma)] = line.substr(comma + 1);
        }
    }
    const auto doc = nlohmann::json::parse(slurp(report_dir / "report.json"));
    const auto rank = [](const std::string& tier) { return tier == "typical" || tier == "higher"; };
    int sg_total = 0;
    int sg_hit = 0;
    int sb_total = 0;
    int sb_hit = 0;
    for (const auto& s : doc["series"]) {
        const auto& kind = planted.at(s["paper_id"].get<std::string>());
        if (kind == "sg") {
            ++sg_total;
            sg_hit += rank(s["sg_tier"].get<std::string>()) ? 1 : 0;
        } else if (kind == "sb") {
            ++sb_total;
            sb_hit += rank(s["sb_tier"].get<std::string>()) ? 1 : 0;
        }
    }
    check.expect(doc["series"].size() == 10000, "not every series classified");
    check.expect(sg_total > 0 && sb_total > 0, "no planted sg or sb series");
    const double sg_rate = sg_total ? 100.0 * sg_hit / sg_total : 0.0;
    const double sb_rate = sb_total ? 100.0 * sb_hit / sb_total : 0.0;
    check.expect(sg_rate >= 95.0, fmt("sg recovery %.2f%%", sg_rate));
    check.expect(sb_rate >= 95.0, fmt("sb recovery %.2f%%", sb_rate));
    check.expect(seconds < 10.0, fmt("end to end %.2f s", seconds));

    // The mandated mix plants only about ten sleeping beauties, so the same
    // rates are also checked on a balanced corpus at default noise.
    GenSpec balanced = load_gen_spec(kData + "/gen_recovery.json");
    balanced.weights = {0.5, 0.5, 0.0, 0.0};
    const auto bulk = generate_corpus(balanced, 4000, 20160902, 0);
    const auto bulk_report = classify_corpus(bulk.corpus, {}, {0});
    int bulk_sg = 0;
    int bulk_sg_hit = 0;
    int bulk_sb = 0;
    int bulk_sb_hit = 0;
    for (std::size_t i = 0; i < bulk.planted.size(); ++i) {
        const auto& r = bulk_report.records[i].result;
        if (bulk.planted[i] == SeriesKind::sg) {
            ++bulk_sg;
            bulk_sg_hit += r.sg_tier >= Tier::typical ? 1 : 0;
        } else {
            ++bulk_sb;
            bulk_sb_hit += r.sb_tier >= Tier::typical ? 1 : 0;
        }
    }
    const double bulk_sg_rate = 100.0 * bulk_sg_hit / bulk_sg;
    const double bulk_sb_rate = 100.0 * bulk_sb_hit / bulk_sb;
    check.expect(bulk_report.records.size() == bulk.planted.size(), "balanced corpus not fully classified");
    check.expect(bulk_sg_rate >= 95.0, fmt("balanced sg recovery %.2f%%", bulk_sg_rate));
    check.expect(bulk_sb_rate >= 95.0, fmt("balanced sb recovery %.2f%%", bulk_sb_rate));

    std::ostringstream note;
    note << "sg " << sg_hit << '/' << sg_total << " (" << fmt("%.2f", sg_rate) << "%), sb " << sb_hit << '/'
         << sb_total << " (" << fmt("%.2f", sb_rate) << "%), " << fmt("%.2f", seconds) << " s; balanced sg "
         << bulk_sg_hit << '/' << bulk_sg << ", sb " << bulk_sb_hit << '/' << bulk_sb;
    check.note(note.str());
    return check.result();
}

// 8. Byte-identical reports and corpora.
Outcome determinism() {
    Check check;
    Workdir dir("citeangle_acceptance_determinism");
    const auto corpus = dir.path / "corpus.csv";
    check.expect(cli({"generate", "--spec", kData + "/gen_recovery.json", "--n", "3000", "--seed", "8", "--out",
                      corpus.string(), "--jobs", "1"}) == 0,
                 "generate --jobs 1 failed");
    const auto four = dir.path / "corpus4.csv";
    check.expect(cli({"generate", "--spec", kData + "/gen_recovery.json", "--n", "3000", "--seed", "8", "--out",
                      four.string(), "--jobs", "4"}) == 0,
                 "generate --jobs 4 failed");
    check.expect(slurp(corpus) == slurp(four), "corpus differs between --jobs 1 and --jobs 4");
    check.expect(slurp(dir.path / "corpus.planted.csv") == slurp(dir.path / "corpus4.planted.csv"),
                 "planted sidecar differs between --jobs 1 and --jobs 4");

    for (const auto& input : {corpus.string(), kData + "/fixtures_wide.csv"}) {
        const auto a = dir.path / "a";
        const auto b = dir.path / "b";
        fs::remove_all(a);
        fs::remove_all(b);
        check.expect(cli({"classify", "--input", input, "--out", a.string(), "--jobs", "1"}) == 0, "classify a");
        check.expect(cli({"classify", "--input", input, "--out", b.string(), "--jobs", "4"}) == 0, "classify b");
        check.expect(slurp(a / "report.json") == slurp(b / "report.json"), "report.json differs for " + input);
        check.expect(slurp(a / "report.csv") == slurp(b / "report.csv"), "report.csv differs for " + input);
    }
    check.note("generate --jobs 1/4 and repeated classify runs byte-identical");
    return check.result();
}

// 9. wide -> long -> wide on the fixture corpus.
Outcome round_trip() {
    Check check;
    const auto original = load_corpus(kData + "/fixtures_wide.csv", TableFormat::wide);
    std::ostringstream wide1;
    write_wide(wide1, original);
    std::istringstream wide_in(wide1.str());
    const auto from_wide = read_wide(wide_in);
    std::ostringstream long_out;
    write_long(long_out, from_wide);
    std::istringstream long_in(long_out.str());
    const auto from_long = read_long(long_in);
    std::ostringstream wide2;
    write_wide(wide2, from_long);
    check.expect(from_long == original, "corpus changed through the long layout");
    check.expect(wide2.str() == wide1.str(), "wide serialization changed");
    check.note(std::to_string(original.size()) + " series, wide text identical after the long detour");
    return check.result();
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"threshold angle constants", threshold_constants},
        {"beauty coefficient fixtures", beauty_fixtures},
        {"B = B' and B' scale invariance", beauty_prime_properties},
        {"gradient and differential", gradient_checks},
        {"classifier fixtures", classifier_fixtures},
        {"tier nesting and strict boundaries", tier_properties},
        {"planted corpus recovery", corpus_recovery},
        {"determinism", determinism},
        {"wide/long round trip", round_trip},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
