// netstress command-line interface. Every subcommand is a thin wrapper over
// the shared-library C API; outputs are CSV files plus a JSON run manifest
// written next to each primary output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "netstress.h"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;

[[noreturn]] void fail(int code, const std::string& message) {
    std::fprintf(stderr, "netstress: error: %s\n", message.c_str());
    std::exit(code == NS_ERR_VALIDATION ? 3 : 4);
}

std::string take_string(char* s) {
    if (!s) return {};
    std::string out(s);
    ns_string_free(s);
    return out;
}

void check(int rc, char* errmsg) {
    if (rc == NS_OK) return;
    fail(rc, take_string(errmsg));
}

std::string file_digest(const std::string& path) {
    char* err = nullptr;
    char* hex = ns_file_sha256(path.c_str(), &err);
    if (!hex) fail(NS_ERR_RUNTIME, take_string(err));
    return take_string(hex);
}

struct DatasetHandle {
    ns_dataset_t* ptr = nullptr;
    ~DatasetHandle() { ns_dataset_close(ptr); }
};
struct LexiconHandle {
    ns_lexicon_t* ptr = nullptr;
    ~LexiconHandle() { ns_lexicon_close(ptr); }
};
struct ArchiveHandle {
    ns_archive_t* ptr = nullptr;
    ~ArchiveHandle() { ns_archive_close(ptr); }
};

const char* kDatasetFiles[] = {"messages.csv", "prices.csv", "trades.csv",
                               "vix.csv",      "industry.csv", "directory.csv"};

// Manifest: subcommand, effective configuration, input and output digests.
// Identical manifests imply identical outputs.
struct ManifestBuilder {
    json doc;

    ManifestBuilder(const std::string& subcommand, std::uint64_t seed) {
        doc["tool"] = "netstress";
        doc["version"] = ns_version();
        doc["subcommand"] = subcommand;
        doc["seed"] = seed;
        doc["config"] = json::object();
        doc["inputs"] = json::object();
        doc["outputs"] = json::object();
    }

    template <typename T>
    void config(const std::string& key, const T& value) {
        doc["config"][key] = value;
    }

    void input(const std::string& path) { doc["inputs"][path] = file_digest(path); }

    void input_dir(const std::string& dir) {
        for (const char* name : kDatasetFiles) {
            auto path = (std::filesystem::path(dir) / name).string();
            if (std::filesystem::exists(path)) input(path);
        }
    }

    void output(const std::string& path) { doc["outputs"][path] = file_digest(path); }

    void write(const std::string& primary_output) {
        std::ofstream out(primary_output + ".manifest.json", std::ios::binary);
        out << doc.dump(2) << "\n";
    }
};

struct GlobalOptions {
    std::uint64_t seed = 7;
    int jobs = 0;
    std::string config_path;
    std::map<std::string, std::string> config; // flat key -> value overrides
};

// Config-file fallbacks apply only to flags the user did not pass.
double cfg_double(const GlobalOptions& g, CLI::Option* opt, const std::string& key,
                  double value) {
    if (opt->count() > 0) return value;
    auto it = g.config.find(key);
    return it == g.config.end() ? value : std::stod(it->second);
}

int cfg_int(const GlobalOptions& g, CLI::Option* opt, const std::string& key, int value) {
    if (opt->count() > 0) return value;
    auto it = g.config.find(key);
    return it == g.config.end() ? value : std::stoi(it->second);
}

DatasetHandle open_dataset(const std::string& dir, bool print_warnings = true) {
    DatasetHandle ds;
    char* warnings = nullptr;
    char* err = nullptr;
    ds.ptr = ns_dataset_open(dir.c_str(), &warnings, &err);
    if (!ds.ptr) fail(NS_ERR_VALIDATION, take_string(err));
    std::string warn = take_string(warnings);
    if (print_warnings && !warn.empty())
        std::fprintf(stderr, "netstress: validation warnings:\n%s\n", warn.c_str());
    return ds;
}

LexiconHandle open_lexicon(const std::string& path) {
    LexiconHandle lex;
    char* err = nullptr;
    lex.ptr = ns_lexicon_open(path.c_str(), &err);
    if (!lex.ptr) fail(NS_ERR_VALIDATION, take_string(err));
    return lex;
}

ArchiveHandle build_archive(const DatasetHandle& ds, double alpha, int min_nodes,
                            const std::string& orientation) {
    if (orientation != "incidence" && orientation != "either_endpoint")
        fail(NS_ERR_VALIDATION, "orientation must be incidence or either_endpoint");
    ArchiveHandle archive;
    char* err = nullptr;
    archive.ptr = ns_archive_build(ds.ptr, alpha, min_nodes,
                                   orientation == "either_endpoint" ? 1 : 0, &err);
    if (!archive.ptr) fail(NS_ERR_VALIDATION, take_string(err));
    return archive;
}

bool parse_grid(const std::string& text, double& lo, double& hi, double& step) {
    // "<lo>:<hi>:<step>"
    auto p1 = text.find(':');
    auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) return false;
    try {
        lo = std::stod(text.substr(0, p1));
        hi = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
        step = std::stod(text.substr(p2 + 1));
    } catch (...) {
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reconstructs per-stock daily communication graphs from a message corpus and "
                 "runs the network/shock/content/trade analysis pipeline."};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Seed for all randomized stages")->capture_default_str();
    app.add_option("--jobs", global.jobs, "Worker threads (0 = hardware)")->capture_default_str();
    app.add_option("--config", global.config_path,
                   "TOML config supplying defaults for unset flags");

    // --- synth --------------------------------------------------------------
    // --config doubles as the generator configuration here
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
    std::string synth_out = "synthdata";
    synth->add_option("-o,--out", synth_out, "Output directory")->capture_default_str();

    // --- tag-mentions ---------------------------------------------------------
    auto* tag = app.add_subcommand("tag-mentions",
                                   "Fill the mentions column by exact ticker-token match");
    std::string tag_messages, tag_prices, tag_out;
    tag->add_option("--messages", tag_messages, "messages.csv to annotate")->required();
    tag->add_option("--prices", tag_prices, "prices.csv supplying the symbol universe")
        ->required();
    tag->add_option("-o,--out", tag_out, "Annotated messages.csv")->required();

    // --- common dataset/archive options --------------------------------------
    std::string data_dir;
    double alpha = 0.1;
    int min_nodes = 2;
    std::string orientation = "incidence";
    std::string lexicon_path;
    std::vector<CLI::Option*> alpha_opts, min_nodes_opts;

    auto add_data_options = [&](CLI::App* cmd, bool with_archive) {
        cmd->add_option("--data", data_dir, "Dataset directory")->required();
        if (with_archive) {
            alpha_opts.push_back(
                cmd->add_option("--alpha", alpha, "Tie-strength fraction")->capture_default_str());
            min_nodes_opts.push_back(cmd->add_option("--min-nodes", min_nodes,
                                                     "Minimum graph size kept")
                                         ->capture_default_str());
            cmd->add_option("--orientation", orientation,
                            "Tie-strength counting: incidence|either_endpoint")
                ->capture_default_str();
        }
    };

    // --- metrics --------------------------------------------------------------
    auto* metrics = app.add_subcommand("metrics", "Per-(stock, day) graph features");
    std::string metrics_out = "features.csv";
    add_data_options(metrics, true);
    metrics->add_option("-o,--out", metrics_out, "Output CSV")->capture_default_str();

    // --- shocks ---------------------------------------------------------------
    auto* shocks = app.add_subcommand("shocks", "Detect x-shocks");
    double shock_x = 0.05;
    std::string shocks_out = "shocks.csv";
    add_data_options(shocks, false);
    auto* shock_x_opt =
        shocks->add_option("--x", shock_x, "Shock threshold")->capture_default_str();
    shocks->add_option("-o,--out", shocks_out, "Output CSV")->capture_default_str();

    // --- curve ------------------------------------------------------------------
    auto* curve = app.add_subcommand("curve", "Price-conditioned aggregation curve");
    std::string curve_feature = "clustering";
    std::string curve_grid = "-0.1:0.1:0.01";
    std::string curve_out = "curve.csv";
    add_data_options(curve, true);
    curve->add_option("--feature", curve_feature,
                      "Graph feature or wordpct:<category>")->capture_default_str();
    curve->add_option("--grid", curve_grid, "Grid as lo:hi:step (must span 0)")
        ->capture_default_str();
    curve->add_option("--lexicon", lexicon_path, "Lexicon CSV (for wordpct curves)");
    curve->add_option("-o,--out", curve_out, "Output CSV")->capture_default_str();

    // --- response ---------------------------------------------------------------
    auto* response = app.add_subcommand("response", "Post-shock feature trajectory");
    std::string response_feature = "clustering";
    int horizon = 7;
    double band = 0.25;
    double response_x = 0.05;
    std::string response_out = "response.csv";
    add_data_options(response, true);
    response->add_option("--feature", response_feature, "Graph feature")->capture_default_str();
    auto* horizon_opt =
        response->add_option("--horizon", horizon, "Days after the shock")->capture_default_str();
    auto* band_opt = response->add_option("--band", band, "Recovery band in grand-sd units")
                         ->capture_default_str();
    auto* response_x_opt =
        response->add_option("--x", response_x, "Shock threshold")->capture_default_str();
    response->add_option("-o,--out", response_out, "Output CSV")->capture_default_str();

    // --- lexicon ----------------------------------------------------------------
    auto* lexicon_cmd = app.add_subcommand("lexicon", "Category conformance per (stock, day)");
    std::string conformance_out = "conformance.csv";
    add_data_options(lexicon_cmd, false);
    lexicon_cmd->add_option("--lexicon", lexicon_path, "Lexicon CSV")->required();
    lexicon_cmd->add_option("-o,--out", conformance_out, "Output CSV")->capture_default_str();

    // --- regress -------------------------------------------------------------------
    auto* regress = app.add_subcommand("regress", "Fixed-effects OLS panel");
    std::string fe = "stock";
    std::string regress_feature = "clustering";
    std::string regress_out = "fit.csv";
    add_data_options(regress, true);
    regress->add_option("--fe", fe, "Fixed effects: stock|industry")->capture_default_str();
    regress->add_option("--feature", regress_feature, "Dependent feature")
        ->capture_default_str();
    regress->add_option("-o,--out", regress_out, "Output CSV")->capture_default_str();

    // --- trades ----------------------------------------------------------------------
    auto* trades = app.add_subcommand("trades", "Trade optimality analyses");
    trades->require_subcommand(1);
    auto* trades_label = trades->add_subcommand("label", "Local optimality labels");
    auto* trades_baseline = trades->add_subcommand("baseline", "Random-day baseline trades");
    auto* trades_loss = trades->add_subcommand("loss", "Loss accounting vs baseline");
    std::string labels_out = "labels.csv";
    std::string baseline_out = "baseline.csv";
    std::string loss_out = "loss.csv";
    std::string next_price = "close";
    add_data_options(trades_label, false);
    trades_label->add_option("-o,--out", labels_out, "Output CSV")->capture_default_str();
    add_data_options(trades_baseline, false);
    trades_baseline->add_option("-o,--out", baseline_out, "Output CSV")->capture_default_str();
    add_data_options(trades_loss, false);
    trades_loss->add_option("--next-price", next_price, "Loss reference: close|open")
        ->capture_default_str();
    trades_loss->add_option("-o,--out", loss_out, "Output CSV")->capture_default_str();

    // --- predict ---------------------------------------------------------------------
    auto* predict = app.add_subcommand("predict", "Time-binned balanced classification");
    std::string task = "conformance";
    std::string feature_sets;
    std::string categories;
    std::string k_range = "0..6";
    int bin_size = 100;
    double lambda = 1e-3;
    std::string predict_out = "report.csv";
    add_data_options(predict, true);
    predict->add_option("--task", task, "conformance|optimality|sudden")->capture_default_str();
    predict->add_option("--features", feature_sets,
                        "Comma-separated feature sets (default: task-specific)");
    predict->add_option("--category", categories,
                        "Comma-separated lexicon categories (conformance)");
    predict->add_option("--k", k_range, "k or k range lo..hi (optimality/sudden)")
        ->capture_default_str();
    auto* bin_opt =
        predict->add_option("--bin", bin_size, "Trading days per bin")->capture_default_str();
    auto* lambda_opt =
        predict->add_option("--lambda", lambda, "L2 penalty")->capture_default_str();
    predict->add_option("--lexicon", lexicon_path, "Lexicon CSV (conformance)");
    predict->add_option("-o,--out", predict_out, "Output CSV")->capture_default_str();

    // --- report -----------------------------------------------------------------------
    auto* report = app.add_subcommand("report", "Run the full pipeline with defaults");
    std::string report_out = "report_out";
    add_data_options(report, true);
    report->add_option("-o,--out", report_out, "Output directory")->capture_default_str();
    auto* report_x_opt =
        report->add_option("--x", shock_x, "Shock threshold")->capture_default_str();
    auto* report_bin_opt =
        report->add_option("--bin", bin_size, "Trading days per bin")->capture_default_str();

    // global flags remain usable after the subcommand name
    for (CLI::App* sub : app.get_subcommands(
             [](const CLI::App*) { return true; })) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands([](const CLI::App*) { return true; }))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (!global.config_path.empty()) {
        // Flat TOML: every key supplies a default for the matching flag.
        std::ifstream in(global.config_path);
        if (!in) fail(NS_ERR_VALIDATION, "cannot open config file: " + global.config_path);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                s.erase(0, s.find_first_not_of(" \t\r"));
                auto end = s.find_last_not_of(" \t\r");
                s.erase(end == std::string::npos ? 0 : end + 1);
                return s;
            };
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (!value.empty() && value.front() == '"' && value.back() == '"')
                value = value.substr(1, value.size() - 2);
            if (!key.empty() && !value.empty() && key.front() != '[')
                global.config[key] = value;
        }
    }

    try {
        if (app.got_subcommand(synth)) {
            std::uint64_t seed = global.seed;
            char* err = nullptr;
            const std::string& synth_config = global.config_path;
            check(ns_synth_generate(synth_config.empty() ? nullptr : synth_config.c_str(), seed,
                                    synth_out.c_str(), &err),
                  err);
            ManifestBuilder manifest("synth", seed);
            manifest.config("out", synth_out);
            if (!synth_config.empty()) {
                manifest.config("config", synth_config);
                manifest.input(synth_config);
            }
            for (const char* name : kDatasetFiles)
                manifest.output((std::filesystem::path(synth_out) / name).string());
            manifest.output((std::filesystem::path(synth_out) / "lexicon.csv").string());
            manifest.write((std::filesystem::path(synth_out) / "synth").string());
            return 0;
        }

        if (app.got_subcommand(tag)) {
            char* err = nullptr;
            check(ns_tag_mentions(tag_messages.c_str(), tag_prices.c_str(), tag_out.c_str(),
                                  &err),
                  err);
            ManifestBuilder manifest("tag-mentions", global.seed);
            manifest.input(tag_messages);
            manifest.input(tag_prices);
            manifest.output(tag_out);
            manifest.write(tag_out);
            return 0;
        }

        // Config-file fallbacks for shared archive options.
        bool alpha_given = false, min_nodes_given = false;
        for (auto* opt : alpha_opts) alpha_given = alpha_given || opt->count() > 0;
        for (auto* opt : min_nodes_opts) min_nodes_given = min_nodes_given || opt->count() > 0;
        if (!alpha_given && global.config.count("alpha"))
            alpha = std::stod(global.config.at("alpha"));
        if (!min_nodes_given && global.config.count("min_nodes"))
            min_nodes = std::stoi(global.config.at("min_nodes"));

        if (app.got_subcommand(metrics)) {
            DatasetHandle ds = open_dataset(data_dir);
            ArchiveHandle archive = build_archive(ds, alpha, min_nodes, orientation);
            char* err = nullptr;
            check(ns_metrics_write(ds.ptr, archive.ptr, metrics_out.c_str(), &err), err);
            ManifestBuilder manifest("metrics", global.seed);
            manifest.config("alpha", alpha);
            manifest.config("min_nodes", min_nodes);
            manifest.config("orientation", orientation);
            manifest.input_dir(data_dir);
            manifest.output(metrics_out);
            manifest.write(metrics_out);
            return 0;
        }

        if (app.got_subcommand(shocks)) {
            shock_x = cfg_double(global, shock_x_opt, "x", shock_x);
            DatasetHandle ds = open_dataset(data_dir);
            char* err = nullptr;
            check(ns_shocks_write(ds.ptr, shock_x, shocks_out.c_str(), &err), err);
            ManifestBuilder manifest("shocks", global.seed);
            manifest.config("x", shock_x);
            manifest.input_dir(data_dir);
            manifest.output(shocks_out);
            manifest.write(shocks_out);
            return 0;
        }

        if (app.got_subcommand(curve)) {
            double lo, hi, step;
            if (!parse_grid(curve_grid, lo, hi, step))
                fail(NS_ERR_VALIDATION, "grid must be lo:hi:step");
            DatasetHandle ds = open_dataset(data_dir);
            ArchiveHandle archive = build_archive(ds, alpha, min_nodes, orientation);
            LexiconHandle lexicon;
            if (!lexicon_path.empty()) lexicon = open_lexicon(lexicon_path);
            char* err = nullptr;
            check(ns_curve_write(ds.ptr, archive.ptr, lexicon.ptr, curve_feature.c_str(), lo, hi,
                                 step, curve_out.c_str(), &err),
                  err);
            ManifestBuilder manifest("curve", global.seed);
            manifest.config("feature", curve_feature);
            manifest.config("grid", curve_grid);
            manifest.config("alpha", alpha);
            manifest.config("min_nodes", min_nodes);
            manifest.input_dir(data_dir);
            if (!lexicon_path.empty()) manifest.input(lexicon_path);
            manifest.output(curve_out);
            manifest.write(curve_out);
            return 0;
        }

        if (app.got_subcommand(response)) {
            response_x = cfg_double(global, response_x_opt, "x", response_x);
            horizon = cfg_int(global, horizon_opt, "horizon", horizon);
            band = cfg_double(global, band_opt, "band", band);
            DatasetHandle ds = open_dataset(data_dir);
            ArchiveHandle archive = build_archive(ds, alpha, min_nodes, orientation);
            char* err = nullptr;
            check(ns_response_write(ds.ptr, archive.ptr, response_feature.c_str(), response_x,
                                    horizon, band, response_out.c_str(), &err),
                  err);
            ManifestBuilder manifest("response", global.seed);
            manifest.config("feature", response_feature);
            manifest.config("x", response_x);
            manifest.config("horizon", horizon);
            manifest.config("band", band);
            manifest.config("alpha", alpha);
            manifest.input_dir(data_dir);
            manifest.output(response_out);
            manifest.write(response_out);
            return 0;
        }

        if (app.got_subcommand(lexicon_cmd)) {
            DatasetHandle ds = open_dataset(data_dir);
            LexiconHandle lexicon = open_lexicon(lexicon_path);
            char* err = nullptr;
            check(ns_conformance_write(ds.ptr, lexicon.ptr, conformance_out.c_str(), &err), err);
            ManifestBuilder manifest("lexicon", global.seed);
            manifest.config("lexicon", lexicon_path);
            manifest.input_dir(data_dir);
            manifest.input(lexicon_path);
            manifest.output(conformance_out);
            manifest.write(conformance_out);
            return 0;
        }

        if (app.got_subcommand(regress)) {
            DatasetHandle ds = open_dataset(data_dir);
            ArchiveHandle archive = build_archive(ds, alpha, min_nodes, orientation);
            char* err = nullptr;
            check(ns_regress_write(ds.ptr, archive.ptr, fe.c_str(), regress_feature.c_str(),
                                   regress_out.c_str(), &err),
                  err);
            ManifestBuilder manifest("regress", global.seed);
            manifest.config("fe", fe);
            manifest.config("feature", regress_feature);
            manifest.config("alpha", alpha);
            manifest.config("min_nodes", min_nodes);
            manifest.input_dir(data_dir);
            manifest.output(regress_out);
            manifest.write(regress_out);
            return 0;
        }

        if (app.got_subcommand(trades)) {
            DatasetHandle ds = open_dataset(data_dir);
            char* err = nullptr;
            if (trades->got_subcommand(trades_label)) {
                check(ns_trades_label_write(ds.ptr, labels_out.c_str(), &err), err);
                ManifestBuilder manifest("trades label", global.seed);
                manifest.input_dir(data_dir);
                manifest.output(labels_out);
                manifest.write(labels_out);
            } else if (trades->got_subcommand(trades_baseline)) {
                check(ns_trades_baseline_write(ds.ptr, global.seed, baseline_out.c_str(), &err),
                      err);
                ManifestBuilder manifest("trades baseline", global.seed);
                manifest.input_dir(data_dir);
                manifest.output(baseline_out);
                manifest.write(baseline_out);
            } else {
                check(ns_trades_loss_write(ds.ptr, global.seed, next_price.c_str(),
                                           loss_out.c_str(), &err),
                      err);
                ManifestBuilder manifest("trades loss", global.seed);
                manifest.config("next_price", next_price);
                manifest.input_dir(data_dir);
                manifest.output(loss_out);
                manifest.write(loss_out);
            }
            return 0;
        }

        if (app.got_subcommand(predict)) {
            bin_size = cfg_int(global, bin_opt, "bin", bin_size);
            lambda = cfg_double(global, lambda_opt, "lambda", lambda);
            int k_min = 0, k_max = 6;
            auto dots = k_range.find("..");
            try {
                if (dots == std::string::npos) {
                    k_min = k_max = std::stoi(k_range);
                } else {
                    k_min = std::stoi(k_range.substr(0, dots));
                    k_max = std::stoi(k_range.substr(dots + 2));
                }
            } catch (...) {
                fail(NS_ERR_VALIDATION, "--k expects an integer or lo..hi");
            }
            DatasetHandle ds = open_dataset(data_dir);
            ArchiveHandle archive = build_archive(ds, alpha, min_nodes, orientation);
            LexiconHandle lexicon;
            if (!lexicon_path.empty()) lexicon = open_lexicon(lexicon_path);
            char* err = nullptr;
            check(ns_predict_write(ds.ptr, archive.ptr, lexicon.ptr, task.c_str(),
                                   feature_sets.empty() ? nullptr : feature_sets.c_str(),
                                   categories.empty() ? nullptr : categories.c_str(), k_min,
                                   k_max, global.seed, bin_size, lambda, global.jobs,
                                   predict_out.c_str(), &err),
                  err);
            ManifestBuilder manifest("predict", global.seed);
            manifest.config("task", task);
            manifest.config("features", feature_sets);
            manifest.config("categories", categories);
            manifest.config("k", k_range);
            manifest.config("bin", bin_size);
            manifest.config("lambda", lambda);
            manifest.config("alpha", alpha);
            manifest.input_dir(data_dir);
            if (!lexicon_path.empty()) manifest.input(lexicon_path);
            manifest.output(predict_out);
            manifest.write(predict_out);
            return 0;
        }

        if (app.got_subcommand(report)) {
            shock_x = cfg_double(global, report_x_opt, "x", shock_x);
            bin_size = cfg_int(global, report_bin_opt, "bin", bin_size);
            char* files = nullptr;
            char* err = nullptr;
            check(ns_report_run(data_dir.c_str(), report_out.c_str(), alpha, min_nodes, shock_x,
                                7, 0.25, global.seed, bin_size, 1e-3, global.jobs, &files, &err),
                  err);
            std::string file_list = take_string(files);
            ManifestBuilder manifest("report", global.seed);
            manifest.config("alpha", alpha);
            manifest.config("min_nodes", min_nodes);
            manifest.config("x", shock_x);
            manifest.config("bin", bin_size);
            manifest.input_dir(data_dir);
            auto lex_path = (std::filesystem::path(data_dir) / "lexicon.csv").string();
            if (std::filesystem::exists(lex_path)) manifest.input(lex_path);
            std::istringstream lines(file_list);
            std::string name;
            while (std::getline(lines, name))
                if (!name.empty())
                    manifest.output((std::filesystem::path(report_out) / name).string());
            manifest.write((std::filesystem::path(report_out) / "report").string());
            std::printf("%s\n", file_list.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        fail(NS_ERR_RUNTIME, e.what());
    }

    return kExitUsage;
}
