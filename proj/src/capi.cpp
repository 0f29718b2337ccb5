#include "netstress.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "netstress/dataset.hpp"
#include "netstress/digest.hpp"
#include "netstress/error.hpp"
#include "netstress/graphs.hpp"
#include "netstress/stages.hpp"
#include "netstress/synth.hpp"

namespace {

constexpr const char* kVersion = "netstress 1.0.0";

struct ns_dataset_wrap {
    netstress::Dataset ds;
};
struct ns_lexicon_wrap {
    netstress::Lexicon lex;
};
struct ns_archive_wrap {
    netstress::FeatureArchive archive;
};

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** errmsg, const std::string& message) {
    if (errmsg) *errmsg = dup_string(message);
}

// Translates C++ exceptions into status codes at the boundary.
template <typename Fn>
int guarded(char** errmsg, Fn&& fn) {
    try {
        fn();
        return NS_OK;
    } catch (const netstress::ValidationError& e) {
        set_error(errmsg, e.what());
        return NS_ERR_VALIDATION;
    } catch (const netstress::RuntimeFailure& e) {
        set_error(errmsg, e.what());
        return NS_ERR_RUNTIME;
    } catch (const std::exception& e) {
        set_error(errmsg, e.what());
        return NS_ERR_RUNTIME;
    } catch (...) {
        set_error(errmsg, "unknown failure");
        return NS_ERR_RUNTIME;
    }
}

const netstress::Dataset& get(const ns_dataset_t* ds) {
    return reinterpret_cast<const ns_dataset_wrap*>(ds)->ds;
}
const netstress::Lexicon& get(const ns_lexicon_t* lex) {
    return reinterpret_cast<const ns_lexicon_wrap*>(lex)->lex;
}
const netstress::FeatureArchive& get(const ns_archive_t* a) {
    return reinterpret_cast<const ns_archive_wrap*>(a)->archive;
}

std::vector<std::string> split_csv_list(const char* text) {
    std::vector<std::string> out;
    if (!text) return out;
    std::string s(text);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!part.empty()) out.push_back(part);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

extern "C" {

const char* ns_version(void) { return kVersion; }

void ns_string_free(char* s) { std::free(s); }

ns_dataset_t* ns_dataset_open(const char* dir, char** warnings, char** errmsg) {
    ns_dataset_wrap* wrap = nullptr;
    int rc = guarded(errmsg, [&] {
        auto owned = std::make_unique<ns_dataset_wrap>();
        owned->ds = netstress::parse_dataset(netstress::DatasetPaths::in_dir(dir));
        if (warnings) {
            std::string joined;
            for (const auto& w : owned->ds.report.warnings) {
                if (!joined.empty()) joined += '\n';
                joined += w;
            }
            *warnings = joined.empty() ? nullptr : dup_string(joined);
        }
        wrap = owned.release();
    });
    (void)rc;
    return reinterpret_cast<ns_dataset_t*>(wrap);
}

void ns_dataset_close(ns_dataset_t* ds) {
    delete reinterpret_cast<ns_dataset_wrap*>(ds);
}

ns_lexicon_t* ns_lexicon_open(const char* path, char** errmsg) {
    ns_lexicon_wrap* wrap = nullptr;
    guarded(errmsg, [&] {
        auto owned = std::make_unique<ns_lexicon_wrap>();
        owned->lex = netstress::parse_lexicon(path);
        wrap = owned.release();
    });
    return reinterpret_cast<ns_lexicon_t*>(wrap);
}

void ns_lexicon_close(ns_lexicon_t* lex) {
    delete reinterpret_cast<ns_lexicon_wrap*>(lex);
}

ns_archive_t* ns_archive_build(const ns_dataset_t* ds, double alpha, int min_nodes,
                               int orientation, char** errmsg) {
    ns_archive_wrap* wrap = nullptr;
    guarded(errmsg, [&] {
        netstress::ArchiveOptions options;
        options.alpha = alpha;
        options.min_nodes = min_nodes;
        options.orientation = orientation ? netstress::TieOrientation::either_endpoint
                                          : netstress::TieOrientation::incidence;
        auto owned = std::make_unique<ns_archive_wrap>();
        owned->archive = netstress::compute_archive(get(ds), options);
        wrap = owned.release();
    });
    return reinterpret_cast<ns_archive_t*>(wrap);
}

void ns_archive_close(ns_archive_t* archive) {
    delete reinterpret_cast<ns_archive_wrap*>(archive);
}

int ns_metrics_write(const ns_dataset_t* ds, const ns_archive_t* archive, const char* path,
                     char** errmsg) {
    return guarded(errmsg, [&] { netstress::write_metrics_csv(get(ds), get(archive), path); });
}

int ns_shocks_write(const ns_dataset_t* ds, double x, const char* path, char** errmsg) {
    return guarded(errmsg, [&] { netstress::write_shocks_csv(get(ds), x, path); });
}

int ns_curve_write(const ns_dataset_t* ds, const ns_archive_t* archive,
                   const ns_lexicon_t* lexicon_or_null, const char* feature, double grid_lo,
                   double grid_hi, double grid_step, const char* path, char** errmsg) {
    return guarded(errmsg, [&] {
        netstress::write_curve_csv(get(ds), get(archive),
                                   lexicon_or_null ? &get(lexicon_or_null) : nullptr, feature,
                                   grid_lo, grid_hi, grid_step, path);
    });
}

int ns_response_write(const ns_dataset_t* ds, const ns_archive_t* archive, const char* feature,
                      double x, int horizon, double band, const char* path, char** errmsg) {
    return guarded(errmsg, [&] {
        netstress::write_response_csv(get(ds), get(archive), feature, x, horizon, band, path);
    });
}

int ns_conformance_write(const ns_dataset_t* ds, const ns_lexicon_t* lexicon, const char* path,
                         char** errmsg) {
    return guarded(errmsg, [&] {
        netstress::write_conformance_csv(get(ds), get(lexicon), path);
    });
}

int ns_regress_write(const ns_dataset_t* ds, const ns_archive_t* archive,
                     const char* fixed_effects, const char* feature, const char* path,
                     char** errmsg) {
    return guarded(errmsg, [&] {
        std::string fe(fixed_effects ? fixed_effects : "");
        if (fe != "stock" && fe != "industry")
            throw netstress::ValidationError("fixed effects must be 'stock' or 'industry'");
        netstress::write_regress_csv(get(ds), get(archive),
                                     fe == "stock" ? netstress::FixedEffects::stock
                                                   : netstress::FixedEffects::industry,
                                     feature, path);
    });
}

int ns_trades_label_write(const ns_dataset_t* ds, const char* path, char** errmsg) {
    return guarded(errmsg, [&] { netstress::write_trade_labels_csv(get(ds), path); });
}

int ns_trades_baseline_write(const ns_dataset_t* ds, uint64_t seed, const char* path,
                             char** errmsg) {
    return guarded(errmsg, [&] { netstress::write_trade_baseline_csv(get(ds), seed, path); });
}

int ns_trades_loss_write(const ns_dataset_t* ds, uint64_t seed, const char* next_price,
                         const char* path, char** errmsg) {
    return guarded(errmsg, [&] {
        std::string which(next_price ? next_price : "close");
        if (which != "close" && which != "open")
            throw netstress::ValidationError("next-day price must be 'close' or 'open'");
        netstress::write_trade_loss_csv(get(ds), seed,
                                        which == "close" ? netstress::NextDayPrice::close
                                                         : netstress::NextDayPrice::open,
                                        path);
    });
}

int ns_predict_write(const ns_dataset_t* ds, const ns_archive_t* archive,
                     const ns_lexicon_t* lexicon_or_null, const char* task,
                     const char* feature_sets, const char* categories, int k_min, int k_max,
                     uint64_t seed, int bin_size, double lambda, int jobs, const char* path,
                     char** errmsg) {
    return guarded(errmsg, [&] {
        auto parsed_task = netstress::task_from_name(task ? task : "");
        if (!parsed_task)
            throw netstress::ValidationError("unknown task '" + std::string(task ? task : "") +
                                             "'");
        netstress::PredictRequest req;
        req.task = *parsed_task;
        req.feature_sets = split_csv_list(feature_sets);
        req.categories = split_csv_list(categories);
        req.k_min = k_min;
        req.k_max = k_max;
        req.options.seed = seed;
        req.options.bin_size = bin_size;
        req.options.logistic.lambda = lambda;
        req.options.jobs = jobs;
        auto reports = netstress::run_predict(get(ds), get(archive),
                                              lexicon_or_null ? &get(lexicon_or_null) : nullptr,
                                              req);
        netstress::write_predict_csv(reports, path);
    });
}

int ns_synth_generate(const char* config_path, uint64_t seed, const char* outdir,
                      char** errmsg) {
    return guarded(errmsg, [&] {
        netstress::SynthConfig config;
        if (config_path && *config_path)
            config = netstress::SynthConfig::from_toml(netstress::TomlConfig::parse_file(config_path));
        config.seed = seed;
        netstress::synth_generate(config, outdir);
    });
}

int ns_tag_mentions(const char* messages_csv, const char* prices_csv, const char* out_csv,
                    char** errmsg) {
    return guarded(errmsg, [&] {
        netstress::tag_mentions(messages_csv, prices_csv, out_csv);
    });
}

int ns_report_run(const char* datadir, const char* outdir, double alpha, int min_nodes,
                  double x, int horizon, double band, uint64_t seed, int bin_size,
                  double lambda, int jobs, char** files, char** errmsg) {
    return guarded(errmsg, [&] {
        netstress::ReportOptions options;
        options.alpha = alpha;
        options.min_nodes = min_nodes;
        options.x = x;
        options.horizon = horizon;
        options.band = band;
        options.seed = seed;
        options.bin_size = bin_size;
        options.lambda = lambda;
        options.jobs = jobs;
        auto written = netstress::run_report(datadir, outdir, options);
        if (files) {
            std::string joined;
            for (const auto& f : written) {
                if (!joined.empty()) joined += '\n';
                joined += f;
            }
            *files = dup_string(joined);
        }
    });
}

char* ns_file_sha256(const char* path, char** errmsg) {
    char* out = nullptr;
    guarded(errmsg, [&] { out = dup_string(netstress::sha256_file_hex(path)); });
    return out;
}

} // extern "C"
