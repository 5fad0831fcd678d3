#include "cli.hpp"

#include <citeangle/report.hpp>
#include <citeangle/series_io.hpp>
#include <citeangle/synth.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

namespace citeangle::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, TableFormat> kFormats{
    {"auto", TableFormat::detect}, {"long", TableFormat::long_rows}, {"wide", TableFormat::wide}};

struct CorpusInput {
    std::string path;
    TableFormat format = TableFormat::detect;
    bool zero_fill = false;
    int zero_offset = 0;
};

void add_input_options(CLI::App& cmd, CorpusInput& in) {
    cmd.add_option("--input", in.path, "Citation table (CSV)")->required();
    cmd.add_option("--format", in.format, "Table layout")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
        ->default_str("auto");
    cmd.add_flag("--zero-fill", in.zero_fill, "Fill missing interior years with 0 (long format)");
    cmd.add_option("--zero-offset", in.zero_offset, "Years between publication and the zero point")
        ->check(CLI::IsMember({0, 1}))
        ->default_val(0);
}

Corpus read_input(const CorpusInput& in, std::ostream& err) {
    ParseOptions opts;
    opts.zero_fill = in.zero_fill;
    opts.on_warning = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };
    return load_corpus(in.path, in.format, opts);
}

CriteriaConfig read_config(const std::string& path) {
    return path.empty() ? CriteriaConfig{} : load_criteria(path);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw InputError("failed writing '" + path.string() + "'");
}

template <typename Fn>
void write_file_with(const fs::path& path, Fn&& fn) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path.string() + "'");
    fn(f);
    if (!f) throw InputError("failed writing '" + path.string() + "'");
}

fs::path planted_sidecar(const fs::path& out) {
    fs::path side = out;
    side.replace_filename(out.stem().string() + ".planted.csv");
    return side;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Citation angles, beauty coefficients and smart-girl / sleeping-beauty classification"};
    app.name("citeangle");
    app.require_subcommand(1);

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "Classify every series of a corpus");
    CorpusInput classify_in;
    std::string classify_config;
    std::string classify_out;
    unsigned classify_jobs = 0;
    int classify_min_years = kDefaultMinYears;
    std::string emit = "both";
    add_input_options(*classify_cmd, classify_in);
    classify_cmd->add_option("--config", classify_config, "Criteria file (flat JSON object)");
    classify_cmd->add_option("--out", classify_out, "Output directory (default: table to stdout)");
    classify_cmd->add_option("--jobs", classify_jobs, "Worker threads (0 = all cores)");
    classify_cmd->add_option("--min-years", classify_min_years, "Minimum T for a series to be classified")
        ->check(CLI::NonNegativeNumber);
    classify_cmd->add_option("--emit", emit, "Report files to write with --out")
        ->check(CLI::IsMember({"json", "table", "both"}))
        ->default_str("both");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Corpus tier totals and percentages");
    CorpusInput stats_in;
    std::string stats_config;
    bool by_category = false;
    unsigned stats_jobs = 0;
    int stats_min_years = kDefaultMinYears;
    add_input_options(*stats_cmd, stats_in);
    stats_cmd->add_option("--config", stats_config, "Criteria file (flat JSON object)");
    stats_cmd->add_flag("--by-category", by_category, "Add per-category percentages");
    stats_cmd->add_option("--jobs", stats_jobs, "Worker threads (0 = all cores)");
    stats_cmd->add_option("--min-years", stats_min_years, "Minimum T for a series to be classified")
        ->check(CLI::NonNegativeNumber);

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "Plot data for one paper");
    CorpusInput curve_in;
    std::string paper;
    std::string lines = "peaks";
    std::string curve_out;
    add_input_options(*curve_cmd, curve_in);
    curve_cmd->add_option("--paper", paper, "paper_id to export")->required();
    curve_cmd->add_option("--lines", lines, "Zero-point lines to emit")
        ->check(CLI::IsMember({"peaks", "all-peaks"}))
        ->default_str("peaks");
    curve_cmd->add_option("--out", curve_out, "Output CSV file")->required();

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Synthetic corpus with planted kinds");
    std::string spec_path;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string gen_out;
    unsigned gen_jobs = 1;
    std::string gen_format = "wide";
    gen_cmd->add_option("--spec", spec_path, "Generator spec (JSON)")->required();
    gen_cmd->add_option("--n", n, "Number of series")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", seed, "Corpus seed")->required();
    gen_cmd->add_option("--out", gen_out, "Output corpus file; <stem>.planted.csv is written beside it")
        ->required();
    gen_cmd->add_option("--jobs", gen_jobs, "Worker threads (0 = all cores)");
    gen_cmd->add_option("--format", gen_format, "Output layout")
        ->check(CLI::IsMember({"wide", "long"}))
        ->default_str("wide");

    std::vector<const char*> argv{"citeangle"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (*classify_cmd) {
            const auto config = read_config(classify_config);
            const auto corpus = read_input(classify_in, err);
            const auto report = classify_corpus(corpus, config,
                                                {classify_jobs, classify_min_years, classify_in.zero_offset});
            if (report.totals.short_series > 0) {
                err << "warning: " << report.totals.short_series << " series have T < 2*dt_min\n";
            }
            if (classify_out.empty()) {
                write_series_table(out, report);
            } else {
                const fs::path dir(classify_out);
                fs::create_directories(dir);
                if (emit != "table") write_file(dir / "report.json", report_to_json(report));
                if (emit != "json") {
                    write_file_with(dir / "report.csv", [&](std::ostream& f) { write_series_table(f, report); });
                }
                out << "classified " << report.totals.classified << " of " << report.totals.series
                    << " series (" << report.totals.skipped << " skipped) -> " << dir.string() << '\n';
            }
        } else if (*stats_cmd) {
            const auto config = read_config(stats_config);
            const auto corpus = read_input(stats_in, err);
            const auto report =
                classify_corpus(corpus, config, {stats_jobs, stats_min_years, stats_in.zero_offset});
            write_summary(out, report, by_category);
        } else if (*curve_cmd) {
            const auto corpus = read_input(curve_in, err);
            const auto* found = corpus.find(paper);
            if (!found) throw InputError("paper '" + paper + "' not in " + curve_in.path);
            const auto series = shift_origin(*found, curve_in.zero_offset);
            AngleProfile profile;
            try {
                profile = angle_profile(series.counts);
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string("paper '") + paper + "': " + e.what());
            }
            const auto table = emit_curve_data(series.counts, profile,
                                               lines == "all-peaks" ? CurveLines::all_peaks : CurveLines::peaks);
            write_file_with(curve_out, [&](std::ostream& f) { write_curve(f, table); });
        } else if (*gen_cmd) {
            const auto spec = load_gen_spec(spec_path);
            const auto generated = generate_corpus(spec, n, seed, gen_jobs);
            const fs::path path(gen_out);
            if (path.has_parent_path()) fs::create_directories(path.parent_path());
            write_file_with(path, [&](std::ostream& f) {
                if (gen_format == "long") write_long(f, generated.corpus);
                else write_wide(f, generated.corpus);
            });
            write_file_with(planted_sidecar(path), [&](std::ostream& f) { write_planted(f, generated); });
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace citeangle::cli
