#pragma once

#include "citeangle/series.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace citeangle {

enum class SeriesKind { sg, sb, asb, normal };

[[nodiscard]] const char* to_string(SeriesKind kind) noexcept;
/// Throws std::invalid_argument for an unknown name.
[[nodiscard]] SeriesKind series_kind_from_string(std::string_view name);

struct IntRange {
    int lo = 0;
    int hi = 0;
};

struct RealRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Early burst: peak of height h at t1, geometric decay on both sides.
struct SmartGirlParams {
    IntRange peak_year{1, 3};
    RealRange peak_height{25.0, 60.0};
    RealRange decay{0.2, 0.6};
};

/// Sleep of `sleep_len` years starting at `sleep_start` with mean depth cs,
/// then a window_len-year linear ramp to a peak of cw * window_len / 2, then
/// geometric decline by `post_decay` per year.
struct SleepingBeautyParams {
    int sleep_start = 1;
    IntRange sleep_len{24, 28};
    RealRange cs{0.0, 1.0};
    RealRange cw{6.0, 20.0};
    double post_decay = 0.7;
};

struct NormalParams {
    RealRange level{0.2, 2.0};  ///< Poisson mean per year
};

struct MixtureWeights {
    double sg = 0.03;
    double sb = 0.001;
    double asb = 0.0;
    double normal = 0.969;
};

struct GenSpec {
    SeriesKind kind = SeriesKind::normal;  ///< used by generate_series
    int length_years = 36;
    std::uint64_t seed = 0;  ///< used by generate_series
    int pub_year = 1980;
    int window_len = 4;
    int dt_min = 10;
    double noise_mean = 0.3;  ///< additive Poisson noise per year
    SmartGirlParams sg;
    SleepingBeautyParams sb;
    NormalParams normal;
    MixtureWeights weights;
    /// Draw (sleep_len, cs, cw) proportionally to the grand SB density over
    /// the grid spanned by the sb ranges instead of uniformly.
    bool density_sampling = false;
    double cs_floor = 0.5;
    /// When non-empty, each series gets one category drawn uniformly.
    std::vector<std::string> categories;

    /// Throws ConfigError when this GenSpec cannot produce valid series of the
    /// given kind, or of every kind with positive weight when none is given.
    void validate(std::optional<SeriesKind> only = std::nullopt) const;

private:
    void validate_kind(SeriesKind kind) const;
};

[[nodiscard]] GenSpec parse_gen_spec(std::string_view json_text);
[[nodiscard]] GenSpec load_gen_spec(const std::filesystem::path& path);

/// Portable random stream: mt19937_64 bits with library-independent
/// distributions, so a seed reproduces the same draws on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] double uniform01();  ///< [0, 1), 53-bit resolution
    [[nodiscard]] double uniform(double lo, double hi);
    [[nodiscard]] int uniform_int(int lo, int hi);  ///< inclusive
    [[nodiscard]] bool bernoulli(double p);
    [[nodiscard]] Count poisson(double mean);

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer of (corpus_seed, index): the per-series seed.
[[nodiscard]] std::uint64_t series_seed(std::uint64_t corpus_seed, std::uint64_t index) noexcept;

/// One series of spec.kind from spec.seed.
[[nodiscard]] CitationSeries generate_series(const GenSpec& spec, const std::string& id);

struct GeneratedCorpus {
    Corpus corpus;
    std::vector<SeriesKind> planted;  ///< planted[i] is the kind of corpus.series()[i]
};

/// n series with kinds drawn by spec.weights (jobs 0: all cores). Series i depends only on
/// (spec, seed, i), so the output is identical for any number of jobs.
[[nodiscard]] GeneratedCorpus generate_corpus(const GenSpec& spec, std::size_t n, std::uint64_t seed,
                                              unsigned jobs = 1);

/// `paper_id,kind` sidecar table.
void write_planted(std::ostream& out, const GeneratedCorpus& generated);

}  // namespace citeangle
