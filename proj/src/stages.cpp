#include "netstress/stages.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "netstress/csv.hpp"
#include "netstress/error.hpp"
#include "netstress/jobs.hpp"

namespace netstress {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot open output file: " + path);
    return out;
}

std::string opt_str(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

Feature require_feature(const std::string& name) {
    auto f = feature_from_name(name);
    if (!f) throw ValidationError("unknown feature '" + name + "'");
    return *f;
}

} // namespace

void write_metrics_csv(const Dataset& ds, const FeatureArchive& archive,
                       const std::string& path) {
    auto out = open_out(path);
    out << "symbol,day,nodes,edges,clustering,largest_frac,components90,strength,border_frac,"
           "nbar,nu_edges,nu_clustering,eps_clustering\n";
    for (const ArchiveRow& r : archive.rows)
        write_csv_row(out, std::vector<std::string>{
                               ds.symbols.symbols[r.symbol], format_date(r.day),
                               std::to_string(r.nodes), std::to_string(r.edges),
                               format_double(r.clustering), format_double(r.largest_frac),
                               std::to_string(r.components90), format_double(r.strength),
                               format_double(r.border_frac), opt_str(r.nbar),
                               opt_str(r.nu_edges), opt_str(r.nu_clustering),
                               opt_str(r.eps_clustering)});
}

void write_shocks_csv(const Dataset& ds, double x, const std::string& path) {
    auto shocks = detect_shocks(ds, x);
    auto out = open_out(path);
    out << "symbol,day,delta,threshold\n";
    for (const ShockEvent& ev : shocks)
        write_csv_row(out, std::vector<std::string>{ds.symbols.symbols[ev.symbol],
                                                    format_date(ev.day), format_double(ev.delta),
                                                    format_double(x)});
}

namespace {

std::vector<std::pair<double, double>> wordpct_samples(const Dataset& ds, const Lexicon& lexicon,
                                                       const std::string& category) {
    auto cat = lexicon.category_index(category);
    if (!cat) throw ValidationError("unknown lexicon category '" + category + "'");
    std::vector<std::pair<double, double>> samples;
    for (const CategoryScore& cs : conformance(ds, lexicon)) {
        if (cs.category != *cat) continue;
        auto pc = price_change(ds, cs.symbol, cs.day);
        if (!pc) continue;
        samples.emplace_back(pc->delta, cs.word_pct);
    }
    return samples;
}

} // namespace

void write_curve_csv(const Dataset& ds, const FeatureArchive& archive, const Lexicon* lexicon,
                     const std::string& feature, double grid_lo, double grid_hi,
                     double grid_step, const std::string& path) {
    std::vector<std::pair<double, double>> samples;
    if (feature.rfind("wordpct:", 0) == 0) {
        if (!lexicon)
            throw ValidationError("word-percentage curves need --lexicon");
        samples = wordpct_samples(ds, *lexicon, feature.substr(8));
    } else {
        samples = feature_delta_samples(ds, archive, require_feature(feature));
    }
    auto grid = make_grid(grid_lo, grid_hi, grid_step);
    auto curve = aggregation_curve(samples, grid);
    auto out = open_out(path);
    out << "feature,grid,mean,ci_lo,ci_hi,n\n";
    for (const CurvePoint& pt : curve)
        write_csv_row(out, std::vector<std::string>{feature, format_double(pt.grid),
                                                    opt_str(pt.mean), opt_str(pt.ci_lo),
                                                    opt_str(pt.ci_hi), std::to_string(pt.n)});
}

void write_response_csv(const Dataset& ds, const FeatureArchive& archive,
                        const std::string& feature, double x, int horizon, double band,
                        const std::string& path) {
    Feature f = require_feature(feature);
    auto shocks = detect_shocks(ds, x);
    ResponseReport rep = shock_response(ds, archive, shocks, f, horizon, band);
    auto out = open_out(path);
    out << "feature,record,offset,value,ci_lo,ci_hi,n\n";
    auto row = [&](const std::string& record, const std::string& offset, const std::string& value,
                   const MeanCi* ci) {
        write_csv_row(out, std::vector<std::string>{
                               feature, record, offset, value,
                               ci ? opt_str(ci->ci_lo) : std::string(),
                               ci ? opt_str(ci->ci_hi) : std::string(),
                               ci ? std::to_string(ci->n) : std::string()});
    };
    for (std::size_t t = 0; t < rep.offsets.size(); ++t)
        row("offset", std::to_string(t), opt_str(rep.offsets[t].mean), &rep.offsets[t]);
    row("shock_days", "", opt_str(rep.shock_days.mean), &rep.shock_days);
    row("nonshock_days", "", opt_str(rep.nonshock_days.mean), &rep.nonshock_days);
    row("grand_mean", "", format_double(rep.grand_mean), nullptr);
    row("grand_sd", "", format_double(rep.grand_sd), nullptr);
    row("band", "", format_double(rep.band), nullptr);
    row("recovery_day", "", rep.recovery_day ? std::to_string(*rep.recovery_day) : std::string(),
        nullptr);
}

void write_conformance_csv(const Dataset& ds, const Lexicon& lexicon, const std::string& path) {
    auto scores = conformance(ds, lexicon);
    auto out = open_out(path);
    out << "symbol,day,category,msg_frac,word_pct,baseline,conforms\n";
    for (const CategoryScore& cs : scores)
        write_csv_row(out, std::vector<std::string>{
                               ds.symbols.symbols[cs.symbol], format_date(cs.day),
                               lexicon.categories[cs.category], format_double(cs.msg_frac),
                               format_double(cs.word_pct), format_double(cs.baseline),
                               cs.conforms ? "1" : "0"});
}

void write_regress_csv(const Dataset& ds, const FeatureArchive& archive, FixedEffects fe,
                       const std::string& feature, const std::string& path) {
    Feature f = require_feature(feature);
    PanelDesign design = build_design(ds, archive, f, fe);
    OlsFit fit = ols_fit(design.X, design.y, design.names);
    DwSummary dw = durbin_watson_panel(ds, archive, f);

    auto out = open_out(path);
    out << "record,term,estimate,std_error,t_stat,p_value,signif\n";
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
        long long col = (long long)(j);
        write_csv_row(out, std::vector<std::string>{
                               "coef", fit.names[j], format_double(fit.beta[col]),
                               format_double(fit.std_error[col]), format_double(fit.t_stat[col]),
                               format_double(fit.p_value[col]),
                               fit.p_value[col] < 1e-4 ? "***" : ""});
    }
    auto stat = [&](const std::string& term, const std::string& value) {
        write_csv_row(out, std::vector<std::string>{"stat", term, value, "", "", "", ""});
    };
    stat("r_squared", format_double(fit.r_squared));
    stat("n_rows", std::to_string(fit.n_rows));
    stat("dropped_rows", std::to_string(design.dropped_rows));
    stat("fixed_effects", fe == FixedEffects::stock ? "stock" : "industry");
    auto dwrow = [&](const std::string& term, const std::string& value) {
        write_csv_row(out, std::vector<std::string>{"dw", term, value, "", "", "", ""});
    };
    dwrow("tested_stocks", std::to_string(dw.stocks.size()));
    dwrow("skipped_stocks", std::to_string(dw.skipped));
    dwrow("frac_no_positive", format_double(dw.frac_no_positive));
    dwrow("frac_no_negative", format_double(dw.frac_no_negative));
    dwrow("inconclusive_positive", std::to_string(dw.inconclusive_positive));
    dwrow("inconclusive_negative", std::to_string(dw.inconclusive_negative));
}

void write_trade_labels_csv(const Dataset& ds, const std::string& path) {
    LabelSummary summary = label_optimality(ds);
    auto out = open_out(path);
    out << "symbol,day,side,price,shares,optimal,counterfactual\n";
    for (const TradeLabel& label : summary.labels) {
        const Trade& t = ds.trades[label.trade_index];
        write_csv_row(out, std::vector<std::string>{
                               ds.symbols.symbols[t.symbol], format_date(t.day),
                               side_name(t.side), format_double(t.price),
                               std::to_string(t.shares), label.optimal ? "1" : "0",
                               format_double(label.counterfactual)});
    }
}

void write_trade_baseline_csv(const Dataset& ds, std::uint64_t seed, const std::string& path) {
    std::vector<Trade> baseline = random_baseline(ds, seed);
    auto out = open_out(path);
    out << "symbol,day,side,price,shares\n";
    for (const Trade& t : baseline)
        write_csv_row(out, std::vector<std::string>{ds.symbols.symbols[t.symbol],
                                                    format_date(t.day), side_name(t.side),
                                                    format_double(t.price),
                                                    std::to_string(t.shares)});
}

void write_trade_loss_csv(const Dataset& ds, std::uint64_t seed, NextDayPrice which,
                          const std::string& path) {
    LabelSummary actual = label_optimality(ds);
    LossReport actual_loss = trade_loss(ds, ds.trades, actual, which);
    std::vector<Trade> baseline = random_baseline(ds, seed);
    LabelSummary base = label_trades(ds, baseline);
    LossReport base_loss = trade_loss(ds, baseline, base, which);

    auto out = open_out(path);
    out << "record,n_labeled,n_suboptimal,suboptimal_rate,total_loss\n";
    auto section = [&](const std::string& prefix, const LabelSummary& s, const LossReport& l) {
        auto row = [&](const std::string& name, long long n, long long k,
                       std::optional<double> loss) {
            write_csv_row(out, std::vector<std::string>{
                                   prefix + "_" + name, std::to_string(n), std::to_string(k),
                                   n ? format_double(double(k) / double(n)) : "",
                                   loss ? format_double(*loss) : ""});
        };
        row("buy", s.labeled_buys, s.suboptimal_buys, std::nullopt);
        row("sell", s.labeled_sells, s.suboptimal_sells, std::nullopt);
        row("total", s.labeled_buys + s.labeled_sells, s.suboptimal_buys + s.suboptimal_sells,
            l.total);
        write_csv_row(out, std::vector<std::string>{prefix + "_dropped",
                                                    std::to_string(s.dropped), "", "", ""});
    };
    section("actual", actual, actual_loss);
    section("baseline", base, base_loss);

    auto rate = [](const LabelSummary& s) {
        long long n = s.labeled_buys + s.labeled_sells;
        long long k = s.suboptimal_buys + s.suboptimal_sells;
        return n ? double(k) / double(n) : 0.0;
    };
    double ra = rate(actual), rb = rate(base);
    write_csv_row(out, std::vector<std::string>{"diff_suboptimal_pp", "", "",
                                                format_double(rb - ra), ""});
    write_csv_row(out, std::vector<std::string>{
                           "diff_suboptimal_rel", "", "",
                           ra > 0 ? format_double((rb - ra) / ra) : "", ""});
    write_csv_row(out, std::vector<std::string>{"diff_loss", "", "", "",
                                                format_double(base_loss.total -
                                                              actual_loss.total)});
}

std::vector<EvalReport> run_predict(const Dataset& ds, const FeatureArchive& archive,
                                    const Lexicon* lexicon, const PredictRequest& request) {
    std::vector<std::string> set_names = request.feature_sets;
    if (set_names.empty()) {
        if (request.task == Task::sudden)
            set_names = {"history", "price+history", "network+history", "all"};
        else
            set_names = {"network", "price", "network+price"};
    }
    std::vector<FeatureSet> sets;
    for (const auto& name : set_names) sets.push_back(parse_feature_set(name, request.task));

    // One job per target; the assembled rows are shared across feature sets.
    struct Target {
        std::string category;
        int k = 0;
    };
    std::vector<Target> targets;
    std::optional<std::vector<CategoryScore>> scores;
    std::optional<LabelSummary> trade_labels;
    if (request.task == Task::conformance) {
        if (!lexicon) throw ValidationError("conformance prediction needs --lexicon");
        scores = conformance(ds, *lexicon);
        std::vector<std::string> cats = request.categories;
        if (cats.empty()) cats = lexicon->categories;
        for (const auto& cat : cats) targets.push_back(Target{cat, 0});
    } else {
        if (request.k_min < 0 || request.k_max < request.k_min)
            throw ValidationError("invalid k range");
        if (request.task == Task::optimality) trade_labels = label_optimality(ds);
        for (int k = request.k_min; k <= request.k_max; ++k) targets.push_back(Target{"", k});
    }

    AssembleInputs inputs;
    inputs.dataset = &ds;
    inputs.archive = &archive;
    inputs.lexicon = lexicon;
    inputs.scores = scores ? &*scores : nullptr;
    inputs.trade_labels = trade_labels ? &*trade_labels : nullptr;

    std::vector<std::vector<EvalReport>> slots(targets.size());
    parallel_for(targets.size(), request.options.jobs, [&](std::size_t i) {
        TaskRows rows = assemble(request.task, inputs, targets[i].category, targets[i].k);
        for (const FeatureSet& set : sets)
            slots[i].push_back(evaluate_task(rows, ds, set, request.options));
    });

    std::vector<EvalReport> out;
    for (auto& chunk : slots)
        for (auto& rep : chunk) out.push_back(std::move(rep));
    return out;
}

void write_predict_csv(const std::vector<EvalReport>& reports, const std::string& path) {
    auto out = open_out(path);
    out << "task,target,feature_set,split,test_bin,bin_start,accuracy,n_train,n_test,converged,"
           "note\n";
    for (const EvalReport& rep : reports) {
        for (const SplitResult& split : rep.splits) {
            if (split.skipped) {
                write_csv_row(out, std::vector<std::string>{
                                       task_name(rep.task), rep.target, rep.feature_set, "split",
                                       std::to_string(split.test_bin), format_date(split.bin_start),
                                       "", "", "", "", split.skip_reason});
            } else {
                write_csv_row(out, std::vector<std::string>{
                                       task_name(rep.task), rep.target, rep.feature_set, "split",
                                       std::to_string(split.test_bin), format_date(split.bin_start),
                                       format_double(split.accuracy),
                                       std::to_string(split.n_train),
                                       std::to_string(split.n_test),
                                       split.converged ? "1" : "0", ""});
            }
        }
        write_csv_row(out, std::vector<std::string>{task_name(rep.task), rep.target,
                                                    rep.feature_set, "pooled", "", "",
                                                    format_double(rep.pooled_accuracy), "",
                                                    std::to_string(rep.pooled_n), "", ""});
    }
}

void tag_mentions(const std::string& messages_in, const std::string& prices,
                  const std::string& out_path) {
    std::map<std::string, std::string> upper_to_symbol;
    {
        std::ifstream in(prices);
        if (!in) throw ValidationError("cannot open input file: " + prices);
        CsvReader reader(in);
        std::vector<std::string> fields;
        bool header = true;
        while (reader.next(fields)) {
            if (header) {
                header = false;
                continue;
            }
            if (fields.empty() || fields[0].empty()) continue;
            std::string upper = fields[0];
            for (char& c : upper) c = char(std::toupper(static_cast<unsigned char>(c)));
            upper_to_symbol.emplace(upper, fields[0]);
        }
    }

    std::ifstream in(messages_in);
    if (!in) throw ValidationError("cannot open input file: " + messages_in);
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields) || fields.size() != 6)
        throw ValidationError(messages_in + ": expected 6-column messages header");
    auto out = open_out(out_path);
    out << "msg_id,timestamp,sender,receiver,tokens,mentions\n";
    while (reader.next(fields)) {
        if (fields.size() != 6)
            throw ValidationError(messages_in + ":" + std::to_string(reader.record_line()) +
                                  ": expected 6 columns");
        std::set<std::string> mentions;
        for (const std::string& tok : tokenize(fields[4])) {
            std::string upper = tok;
            for (char& c : upper) c = char(std::toupper(static_cast<unsigned char>(c)));
            auto it = upper_to_symbol.find(upper);
            if (it != upper_to_symbol.end()) mentions.insert(it->second);
        }
        std::string joined;
        for (const auto& m : mentions) {
            if (!joined.empty()) joined += ' ';
            joined += m;
        }
        fields[5] = joined;
        write_csv_row(out, fields);
    }
}

std::vector<std::string> run_report(const std::string& datadir, const std::string& outdir,
                                    const ReportOptions& options) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    Dataset ds = parse_dataset(DatasetPaths::in_dir(datadir));
    Lexicon lexicon = parse_lexicon((fs::path(datadir) / "lexicon.csv").string());

    ArchiveOptions archive_options;
    archive_options.alpha = options.alpha;
    archive_options.min_nodes = options.min_nodes;
    archive_options.orientation = options.orientation;
    FeatureArchive archive = compute_archive(ds, archive_options);

    std::vector<std::string> files;
    auto path_of = [&](const std::string& name) {
        files.push_back(name);
        return (fs::path(outdir) / name).string();
    };

    write_metrics_csv(ds, archive, path_of("features.csv"));
    write_shocks_csv(ds, options.x, path_of("shocks.csv"));
    for (const char* feat : {"clustering", "strength", "border_frac"}) {
        write_curve_csv(ds, archive, &lexicon, feat, -0.1, 0.1, 0.01,
                        path_of(std::string("curve_") + feat + ".csv"));
        write_response_csv(ds, archive, feat, options.x, options.horizon, options.band,
                           path_of(std::string("response_") + feat + ".csv"));
    }
    write_curve_csv(ds, archive, &lexicon, "wordpct:posemo", -0.1, 0.1, 0.01,
                    path_of("curve_wordpct_posemo.csv"));
    write_curve_csv(ds, archive, &lexicon, "wordpct:negemo", -0.1, 0.1, 0.01,
                    path_of("curve_wordpct_negemo.csv"));
    write_conformance_csv(ds, lexicon, path_of("conformance.csv"));

    struct RegressJob {
        const char* feature;
        FixedEffects fe;
        std::string file;
    };
    std::vector<RegressJob> regressions;
    for (const char* feat : {"nodes", "clustering", "border_frac", "strength"})
        for (FixedEffects fe : {FixedEffects::stock, FixedEffects::industry})
            regressions.push_back(RegressJob{
                feat, fe,
                std::string("regress_") + feat + "_" +
                    (fe == FixedEffects::stock ? "stock" : "industry") + ".csv"});
    for (const auto& job : regressions) files.push_back(job.file);
    parallel_for(regressions.size(), options.jobs, [&](std::size_t i) {
        const RegressJob& job = regressions[i];
        write_regress_csv(ds, archive, job.fe, job.feature,
                          (fs::path(outdir) / job.file).string());
    });

    write_trade_labels_csv(ds, path_of("trade_labels.csv"));
    write_trade_baseline_csv(ds, options.seed, path_of("trade_baseline.csv"));
    write_trade_loss_csv(ds, options.seed, options.next_price, path_of("trade_loss.csv"));

    EvalOptions eval;
    eval.seed = options.seed;
    eval.bin_size = options.bin_size;
    eval.logistic.lambda = options.lambda;
    eval.jobs = options.jobs;

    {
        PredictRequest req;
        req.task = Task::conformance;
        req.options = eval;
        write_predict_csv(run_predict(ds, archive, &lexicon, req),
                          path_of("predict_conformance.csv"));
    }
    {
        PredictRequest req;
        req.task = Task::optimality;
        req.k_min = 0;
        req.k_max = 6;
        req.options = eval;
        write_predict_csv(run_predict(ds, archive, &lexicon, req),
                          path_of("predict_optimality.csv"));
    }
    {
        PredictRequest req;
        req.task = Task::sudden;
        req.k_min = 0;
        req.k_max = 3;
        req.options = eval;
        write_predict_csv(run_predict(ds, archive, &lexicon, req),
                          path_of("predict_sudden.csv"));
    }

    std::sort(files.begin(), files.end());
    return files;
}

} // namespace netstress
