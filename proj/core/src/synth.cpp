#include "citeangle/synth.hpp"

#include "citeangle/classifier.hpp"
#include "citeangle/sleep.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace citeangle {
namespace {

using nlohmann::json;

constexpr double kPoissonChunk = 30.0;
constexpr int kDensityDepthSteps = 10;

Count round_count(double x) { return x <= 0.0 ? 0 : static_cast<Count>(std::llround(x)); }

// (sleep_len, cs, cw) grid weighted by the grand SB density, sampled by CDF.
class DensityGrid {
public:
    explicit DensityGrid(const GenSpec& spec) {
        const auto& sb = spec.sb;
        const int cw_lo = static_cast<int>(std::ceil(std::max(1.0, sb.cw.lo)));
        const int cw_hi = static_cast<int>(std::floor(sb.cw.hi));
        double total = 0.0;
        for (int s = sb.sleep_len.lo; s <= sb.sleep_len.hi; ++s) {
            for (int k = 0; k <= kDensityDepthSteps; ++k) {
                const double cs = sb.cs.lo + (sb.cs.hi - sb.cs.lo) * k / kDensityDepthSteps;
                for (int cw = cw_lo; cw <= cw_hi; ++cw) {
                    total += grand_sb_density(s, cs > 0.0 ? cs : spec.cs_floor, cw);
                    cells_.push_back({s, cs, static_cast<double>(cw)});
                    cdf_.push_back(total);
                }
            }
        }
        for (auto& c : cdf_) c /= total;
    }

    struct Cell {
        int s;
        double cs;
        double cw;
    };

    [[nodiscard]] Cell sample(Rng& rng) const {
        const double u = rng.uniform01();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cells_.size() - 1);
        return cells_[idx];
    }

private:
    std::vector<Cell> cells_;
    std::vector<double> cdf_;
};

void add_smart_girl(std::vector<Count>& counts, const GenSpec& spec, Rng& rng) {
    const int t1 = rng.uniform_int(spec.sg.peak_year.lo, spec.sg.peak_year.hi);
    const double h = rng.uniform(spec.sg.peak_height.lo, spec.sg.peak_height.hi);
    const double decay = rng.uniform(spec.sg.decay.lo, spec.sg.decay.hi);
    for (int t = 1; t < static_cast<int>(counts.size()); ++t) {
        counts[static_cast<std::size_t>(t)] += round_count(h * std::pow(decay, std::abs(t - t1)));
    }
}

void add_sleeping_beauty(std::vector<Count>& counts, const GenSpec& spec, Rng& rng,
                         const DensityGrid* grid) {
    const auto& sb = spec.sb;
    int s = 0;
    double cs = 0.0;
    double cw = 0.0;
    if (grid) {
        const auto cell = grid->sample(rng);
        s = cell.s;
        cs = cell.cs;
        cw = cell.cw;
    } else {
        s = rng.uniform_int(sb.sleep_len.lo, sb.sleep_len.hi);
        cs = rng.uniform(sb.cs.lo, sb.cs.hi);
        cw = rng.uniform(sb.cw.lo, sb.cw.hi);
    }
    const int sleep_end = sb.sleep_start + s - 1;
    const double whole = std::floor(cs);
    for (int t = sb.sleep_start; t <= sleep_end; ++t) {
        counts[static_cast<std::size_t>(t)] +=
            static_cast<Count>(whole) + (rng.bernoulli(cs - whole) ? 1 : 0);
    }
    const int L = spec.window_len;
    const double peak = cw * L / 2.0;
    for (int k = 1; k <= L; ++k) {
        counts[static_cast<std::size_t>(sleep_end + k)] += round_count(peak * k / L);
    }
    const int t2 = sleep_end + L;
    for (int t = t2 + 1; t < static_cast<int>(counts.size()); ++t) {
        counts[static_cast<std::size_t>(t)] += round_count(peak * std::pow(sb.post_decay, t - t2));
    }
}

CitationSeries make_series(const GenSpec& spec, SeriesKind kind, const std::string& id, Rng& rng,
                           const DensityGrid* grid) {
    CitationSeries out;
    out.paper_id = id;
    out.pub_year = spec.pub_year;
    out.counts.assign(static_cast<std::size_t>(spec.length_years), 0);
    switch (kind) {
        case SeriesKind::sg: add_smart_girl(out.counts, spec, rng); break;
        case SeriesKind::sb: add_sleeping_beauty(out.counts, spec, rng, grid); break;
        case SeriesKind::asb:
            add_smart_girl(out.counts, spec, rng);
            add_sleeping_beauty(out.counts, spec, rng, grid);
            break;
        case SeriesKind::normal: {
            const double level = rng.uniform(spec.normal.level.lo, spec.normal.level.hi);
            for (std::size_t t = 1; t < out.counts.size(); ++t) out.counts[t] += rng.poisson(level);
            break;
        }
    }
    if (spec.noise_mean > 0.0) {
        for (auto& c : out.counts) c += rng.poisson(spec.noise_mean);
    }
    if (!spec.categories.empty()) {
        const int pick = rng.uniform_int(0, static_cast<int>(spec.categories.size()) - 1);
        out.categories.push_back(spec.categories[static_cast<std::size_t>(pick)]);
    }
    return out;
}

SeriesKind draw_kind(const MixtureWeights& w, Rng& rng) {
    const double u = rng.uniform01();
    double acc = w.sg;
    if (u < acc) return SeriesKind::sg;
    acc += w.sb;
    if (u < acc) return SeriesKind::sb;
    acc += w.asb;
    if (u < acc) return SeriesKind::asb;
    return SeriesKind::normal;
}

void check_range(const RealRange& r, const char* name) {
    if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
        throw ConfigError(std::string(name) + " range is empty or not finite");
    }
}

void check_range(const IntRange& r, const char* name) {
    if (r.lo > r.hi) throw ConfigError(std::string(name) + " range is empty");
}

// --- spec file parsing ---------------------------------------------------

void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
            allowed.end()) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

double read_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    return v.get<double>();
}

int read_int(const json& v, const std::string& key) {
    const double d = read_number(v, key);
    if (std::trunc(d) != d || std::abs(d) > 1e9) throw ConfigError("'" + key + "' must be an integer");
    return static_cast<int>(d);
}

RealRange read_real_range(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>(), v.get<double>()};
    if (!v.is_array() || v.size() != 2) throw ConfigError("'" + key + "' must be [lo, hi] or a number");
    return {read_number(v[0], key), read_number(v[1], key)};
}

IntRange read_int_range(const json& v, const std::string& key) {
    if (v.is_number()) {
        const int x = read_int(v, key);
        return {x, x};
    }
    if (!v.is_array() || v.size() != 2) throw ConfigError("'" + key + "' must be [lo, hi] or an integer");
    return {read_int(v[0], key), read_int(v[1], key)};
}

}  // namespace

const char* to_string(SeriesKind kind) noexcept {
    switch (kind) {
        case SeriesKind::sg: return "sg";
        case SeriesKind::sb: return "sb";
        case SeriesKind::asb: return "asb";
        case SeriesKind::normal: return "normal";
    }
    return "normal";
}

SeriesKind series_kind_from_string(std::string_view name) {
    if (name == "sg") return SeriesKind::sg;
    if (name == "sb") return SeriesKind::sb;
    if (name == "asb") return SeriesKind::asb;
    if (name == "normal") return SeriesKind::normal;
    throw std::invalid_argument("unknown series kind '" + std::string(name) + "'");
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

int Rng::uniform_int(int lo, int hi) {
    const auto span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
    const int v = lo + static_cast<int>(std::floor(uniform01() * span));
    return std::min(v, hi);
}

bool Rng::bernoulli(double p) { return uniform01() < p; }

Count Rng::poisson(double mean) {
    // Knuth's product-of-uniforms method, in chunks so exp(-mean) stays representable.
    Count total = 0;
    while (mean > 0.0) {
        const double chunk = std::min(mean, kPoissonChunk);
        mean -= chunk;
        const double limit = std::exp(-chunk);
        double p = 1.0;
        Count k = -1;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        total += k;
    }
    return total;
}

std::uint64_t series_seed(std::uint64_t corpus_seed, std::uint64_t index) noexcept {
    std::uint64_t z = corpus_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void GenSpec::validate(std::optional<SeriesKind> only) const {
    if (length_years < 2) throw ConfigError("length_years must be >= 2");
    if (window_len < 1) throw ConfigError("window_len must be >= 1");
    if (dt_min < 1) throw ConfigError("dt_min must be >= 1");
    if (pub_year < kMinPubYear || pub_year > kMaxPubYear) throw ConfigError("pub_year out of range");
    if (!(noise_mean >= 0.0) || !std::isfinite(noise_mean)) throw ConfigError("noise_mean must be >= 0");
    if (!(cs_floor > 0.0)) throw ConfigError("cs_floor must be positive");

    const double ws[] = {weights.sg, weights.sb, weights.asb, weights.normal};
    double sum = 0.0;
    for (const double w : ws) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("mixture weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("mixture weights must sum to 1");

    check_range(sg.peak_year, "sg.peak_year");
    check_range(sg.peak_height, "sg.peak_height");
    check_range(sg.decay, "sg.decay");
    check_range(sb.sleep_len, "sb.sleep_len");
    check_range(sb.cs, "sb.cs");
    check_range(sb.cw, "sb.cw");
    check_range(normal.level, "normal.level");
    if (normal.level.lo < 0.0) throw ConfigError("normal.level must be >= 0");

    const auto weight_of = [this](SeriesKind k) {
        switch (k) {
            case SeriesKind::sg: return weights.sg;
            case SeriesKind::sb: return weights.sb;
            case SeriesKind::asb: return weights.asb;
            case SeriesKind::normal: return weights.normal;
        }
        return 0.0;
    };
    for (const auto k : {SeriesKind::sg, SeriesKind::sb, SeriesKind::asb, SeriesKind::normal}) {
        if (only ? *only == k : weight_of(k) > 0.0) validate_kind(k);
    }
}

void GenSpec::validate_kind(SeriesKind k) const {
    const int T = length_years - 1;
    const bool uses_sg = k == SeriesKind::sg || k == SeriesKind::asb;
    const bool uses_sb = k == SeriesKind::sb || k == SeriesKind::asb;
    if ((uses_sg || uses_sb) && length_years < 2 * dt_min) {
        throw ConfigError("length_years must be >= 2 * dt_min for sg/sb/asb series");
    }
    if (uses_sg) {
        if (sg.peak_year.lo < 1 || sg.peak_year.hi > T / 2) {
            throw ConfigError("sg.peak_year must lie in the early half [1, " + std::to_string(T / 2) + "]");
        }
        if (sg.peak_height.lo < 0.0) throw ConfigError("sg.peak_height must be >= 0");
        if (sg.decay.lo < 0.0 || sg.decay.hi >= 1.0) throw ConfigError("sg.decay must lie in [0, 1)");
    }
    if (uses_sb) {
        if (sb.sleep_start < 1) throw ConfigError("sb.sleep_start must be >= 1");
        if (sb.sleep_len.lo < 1) throw ConfigError("sb.sleep_len must be >= 1");
        if (sb.cs.lo < 0.0) throw ConfigError("sb.cs must be >= 0");
        if (sb.cw.lo < 0.0) throw ConfigError("sb.cw must be >= 0");
        if (sb.post_decay < 0.0 || sb.post_decay >= 1.0) throw ConfigError("sb.post_decay must lie in [0, 1)");
        const int last_peak = sb.sleep_start + sb.sleep_len.hi + window_len - 1;
        if (last_peak > T) {
            throw ConfigError("sb awakening peak (year " + std::to_string(last_peak) +
                              ") falls past the last year " + std::to_string(T));
        }
        if (density_sampling && std::floor(sb.cw.hi) < std::ceil(std::max(1.0, sb.cw.lo))) {
            throw ConfigError("density sampling needs an integer cw >= 1 inside sb.cw");
        }
    }
}

GenSpec parse_gen_spec(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed generator spec: ") + e.what());
    }
    expect_keys(doc,
                {"kind", "length_years", "seed", "pub_year", "window_len", "dt_min", "noise_mean", "sg",
                 "sb", "normal", "weights", "density_sampling", "cs_floor", "categories"},
                "generator spec");
    GenSpec spec;
    try {
        if (doc.contains("kind")) spec.kind = series_kind_from_string(doc["kind"].get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("kind: ") + e.what());
    }
    if (doc.contains("length_years")) spec.length_years = read_int(doc["length_years"], "length_years");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
        spec.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("pub_year")) spec.pub_year = read_int(doc["pub_year"], "pub_year");
    if (doc.contains("window_len")) spec.window_len = read_int(doc["window_len"], "window_len");
    if (doc.contains("dt_min")) spec.dt_min = read_int(doc["dt_min"], "dt_min");
    if (doc.contains("noise_mean")) spec.noise_mean = read_number(doc["noise_mean"], "noise_mean");
    if (doc.contains("cs_floor")) spec.cs_floor = read_number(doc["cs_floor"], "cs_floor");
    if (doc.contains("density_sampling")) {
        if (!doc["density_sampling"].is_boolean()) throw ConfigError("'density_sampling' must be a boolean");
        spec.density_sampling = doc["density_sampling"].get<bool>();
    }
    if (doc.contains("categories")) {
        const auto& cats = doc["categories"];
        if (!cats.is_array()) throw ConfigError("'categories' must be an array of strings");
        for (const auto& c : cats) {
            if (!c.is_string()) throw ConfigError("'categories' must be an array of strings");
            spec.categories.push_back(c.get<std::string>());
        }
    }
    if (doc.contains("sg")) {
        const auto& sg = doc["sg"];
        expect_keys(sg, {"peak_year", "peak_height", "decay"}, "sg");
        if (sg.contains("peak_year")) spec.sg.peak_year = read_int_range(sg["peak_year"], "sg.peak_year");
        if (sg.contains("peak_height")) spec.sg.peak_height = read_real_range(sg["peak_height"], "sg.peak_height");
        if (sg.contains("decay")) spec.sg.decay = read_real_range(sg["decay"], "sg.decay");
    }
    if (doc.contains("sb")) {
        const auto& sb = doc["sb"];
        expect_keys(sb, {"sleep_start", "sleep_len", "cs", "cw", "post_decay"}, "sb");
        if (sb.contains("sleep_start")) spec.sb.sleep_start = read_int(sb["sleep_start"], "sb.sleep_start");
        if (sb.contains("sleep_len")) spec.sb.sleep_len = read_int_range(sb["sleep_len"], "sb.sleep_len");
        if (sb.contains("cs")) spec.sb.cs = read_real_range(sb["cs"], "sb.cs");
        if (sb.contains("cw")) spec.sb.cw = read_real_range(sb["cw"], "sb.cw");
        if (sb.contains("post_decay")) spec.sb.post_decay = read_number(sb["post_decay"], "sb.post_decay");
    }
    if (doc.contains("normal")) {
        const auto& nm = doc["normal"];
        expect_keys(nm, {"level"}, "normal");
        if (nm.contains("level")) spec.normal.level = read_real_range(nm["level"], "normal.level");
    }
    if (doc.contains("weights")) {
        const auto& w = doc["weights"];
        expect_keys(w, {"sg", "sb", "asb", "normal"}, "weights");
        // A weights block replaces the defaults entirely; absent kinds weigh 0.
        spec.weights = {0.0, 0.0, 0.0, 0.0};
        if (w.contains("sg")) spec.weights.sg = read_number(w["sg"], "weights.sg");
        if (w.contains("sb")) spec.weights.sb = read_number(w["sb"], "weights.sb");
        if (w.contains("asb")) spec.weights.asb = read_number(w["asb"], "weights.asb");
        if (w.contains("normal")) spec.weights.normal = read_number(w["normal"], "weights.normal");
    }
    spec.validate();
    return spec;
}

GenSpec load_gen_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open generator spec '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_gen_spec(buf.str());
}

CitationSeries generate_series(const GenSpec& spec, const std::string& id) {
    spec.validate(spec.kind);
    Rng rng(spec.seed);
    std::optional<DensityGrid> grid;
    if (spec.density_sampling) grid.emplace(spec);
    return make_series(spec, spec.kind, id, rng, grid ? &*grid : nullptr);
}

GeneratedCorpus generate_corpus(const GenSpec& spec, std::size_t n, std::uint64_t seed, unsigned jobs) {
    if (n < 1) throw std::invalid_argument("corpus size must be >= 1");
    spec.validate();
    std::optional<DensityGrid> grid;
    if (spec.density_sampling) grid.emplace(spec);

    const auto width = std::to_string(n).size();
    std::vector<CitationSeries> series(n);
    std::vector<SeriesKind> kinds(n);
    detail::parallel_for(n, jobs == 0 ? detail::default_jobs() : jobs, [&](std::size_t i) {
        Rng rng(series_seed(seed, i));
        kinds[i] = draw_kind(spec.weights, rng);
        std::string id = std::to_string(i + 1);
        id.insert(0, width - id.size(), '0');
        series[i] = make_series(spec, kinds[i], "SYN" + id, rng, grid ? &*grid : nullptr);
    });

    GeneratedCorpus out;
    for (auto& s : series) out.corpus.add(std::move(s));
    out.planted = std::move(kinds);
    return out;
}

void write_planted(std::ostream& out, const GeneratedCorpus& generated) {
    out << "paper_id,kind\n";
    const auto series = generated.corpus.series();
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series[i].paper_id << ',' << to_string(generated.planted[i]) << '\n';
    }
}

}  // namespace citeangle
