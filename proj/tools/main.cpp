#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cli_helpers.hpp"
#include "vaxtag/assets.hpp"
#include "vaxtag/csv.hpp"
#include "vaxtag/dataset.hpp"
#include "vaxtag/errors.hpp"
#include "vaxtag/manifest.hpp"
#include "vaxtag/metrics.hpp"
#include "vaxtag/model_bundle.hpp"
#include "vaxtag/multilabel.hpp"
#include "vaxtag/runfile.hpp"

namespace fs = std::filesystem;
using namespace vaxtag;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string asset_dir;
};

KvConfig effective_config(const GlobalOpts& g) {
    if (g.config_path.empty()) return KvConfig{};
    return KvConfig::parse_file(g.config_path);
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

template <typename Fn>
void parallel_for(size_t n, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> workers;
    const unsigned count = std::min<size_t>(jobs, n);
    for (unsigned w = 0; w < count; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<std::vector<std::string>> preprocess_all(const Dataset& ds,
                                                     const PipelineConfig& prep,
                                                     const PrepTables& tables,
                                                     unsigned jobs) {
    std::vector<std::vector<std::string>> tokens(ds.size());
    parallel_for(ds.size(), jobs, [&](size_t i) {
        tokens[i] = preprocess(ds.records[i].text, prep, tables);
    });
    return tokens;
}

// ------------------------------------------------------------------ commands

int cmd_eda(const GlobalOpts& g, const std::string& data_path, bool unlabeled,
            bool terms_only, size_t top_k, bool top_k_given, const std::string& out_dir) {
    KvConfig cfg = effective_config(g);
    if (!top_k_given) top_k = size_t(cfg.get_uint("eda", "top_k", top_k));
    const std::string assets = resolve_asset_dir(g.asset_dir);
    PipelineConfig prep = cli::pipeline_from_config(cfg);
    PrepTables tables = PrepTables::load(assets, prep);

    std::vector<std::string> warnings;
    Dataset ds = load_dataset(data_path,
                              unlabeled ? DatasetFormat::Unlabeled : DatasetFormat::Labeled,
                              &warnings);
    print_warnings(warnings);
    fs::create_directories(out_dir);

    if (!terms_only && !unlabeled) {
        std::ofstream out(fs::path(out_dir) / "label_distribution.csv", std::ios::binary);
        if (!out) throw DataError("cannot write label_distribution.csv under " + out_dir);
        write_csv_row(out, {"label", "count"});
        for (const auto& [label, count] : label_distribution(ds)) {
            write_csv_row(out, {std::string(label_name(label)), std::to_string(count)});
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "top_terms.csv", std::ios::binary);
        if (!out) throw DataError("cannot write top_terms.csv under " + out_dir);
        write_csv_row(out, {"term", "count"});
        for (const auto& [term, count] : top_terms(ds, top_k, prep, tables)) {
            write_csv_row(out, {term, std::to_string(count)});
        }
    }
    std::cout << "eda: wrote " << (terms_only || unlabeled ? "top_terms.csv" :
                                   "label_distribution.csv and top_terms.csv")
              << " to " << out_dir << '\n';
    return 0;
}

int cmd_split(const std::string& data_path, bool unlabeled, double ratio, uint64_t seed,
              const std::string& out_dir) {
    std::vector<std::string> warnings;
    Dataset ds = load_dataset(data_path,
                              unlabeled ? DatasetFormat::Unlabeled : DatasetFormat::Labeled,
                              &warnings);
    print_warnings(warnings);
    auto [train, valid] = split_train_validation(ds, ratio, seed);
    fs::create_directories(out_dir);
    const std::string train_path = (fs::path(out_dir) / "train.csv").string();
    const std::string valid_path = (fs::path(out_dir) / "valid.csv").string();
    save_dataset(train, train_path);
    save_dataset(valid, valid_path);
    std::cout << "split: " << train.size() << " -> " << train_path << ", " << valid.size()
              << " -> " << valid_path << '\n';
    return 0;
}

int cmd_train(const GlobalOpts& g, const std::string& data_path, const std::string& method,
              std::string base_name, uint64_t seed_override, bool seed_given,
              const std::string& out_path, std::string run_name) {
    KvConfig cfg = effective_config(g);
    const std::string assets = resolve_asset_dir(g.asset_dir);
    PipelineConfig prep = cli::pipeline_from_config(cfg);
    PrepTables tables = PrepTables::load(assets, prep);
    TrainConfig train_cfg = cli::train_from_config(cfg);
    if (seed_given) train_cfg.seed = seed_override;

    std::vector<std::string> warnings;
    Dataset ds = load_dataset(data_path, DatasetFormat::Labeled, &warnings);

    auto tokens = preprocess_all(ds, prep, tables, 1);
    TfidfModel tfidf =
        fit_vocabulary(tokens, cli::min_df_from_config(cfg), cli::tfidf_mode_from_config(cfg));

    BaseLearner base;
    bool chain = false;
    if (method == "mnb" || method == "svm" || method == "rf") {
        base = parse_base_learner(method);
    } else if (method == "br") {
        base = parse_base_learner(base_name.empty() ? "svm" : base_name);
    } else if (method == "cc") {
        chain = true;
        base = parse_base_learner(base_name.empty()
                                      ? cfg.get("chain", "base", "svm")
                                      : base_name);
    } else {
        throw ConfigError("unknown method '" + method + "' (want mnb|svm|rf|br|cc)");
    }

    const bool counts = base == BaseLearner::Mnb;
    std::vector<SparseVector> X(ds.size());
    std::vector<LabelSet> Y(ds.size());
    for (size_t i = 0; i < ds.size(); ++i) {
        X[i] = counts ? count_vector(tokens[i], tfidf) : transform(tokens[i], tfidf);
        Y[i] = *ds.records[i].gold;
    }

    ModelBundle bundle;
    bundle.method = method;
    bundle.seed = train_cfg.seed;
    bundle.prep = prep;
    bundle.tfidf = std::move(tfidf);
    if (chain) {
        const std::string order_spec = cfg.get("chain", "order", "frequency");
        ChainOrder order = ChainOrder::frequency_descending(Y);
        if (order_spec == "random") order = ChainOrder::seeded_random(train_cfg.seed);
        else if (order_spec != "frequency") {
            std::vector<ConcernLabel> labels;
            std::istringstream in(order_spec);
            std::string piece;
            while (std::getline(in, piece, ',')) {
                auto label = parse_label(piece);
                if (!label) throw ConfigError("chain.order has unknown label: " + piece);
                labels.push_back(*label);
            }
            order = ChainOrder(std::move(labels));
        }
        bundle.model = fit_classifier_chain(X, Y, order, base, train_cfg, &warnings);
    } else {
        bundle.model = fit_binary_relevance(X, Y, base, train_cfg, &warnings);
    }
    print_warnings(warnings);

    save_bundle(bundle, out_path);

    RunManifest manifest;
    manifest.run_name = run_name.empty() ? fs::path(out_path).filename().string() : run_name;
    manifest.method = method;
    manifest.config_snapshot = cli::snapshot_config(cfg);
    manifest.seed = train_cfg.seed;
    manifest.dataset_digests[data_path] = file_digest(data_path);
    write_manifest(manifest, out_path + ".manifest.json");

    std::cout << "train: " << method << " model over " << ds.size() << " records ("
              << bundle.tfidf.vocab.size() << " features) -> " << out_path << '\n';
    return 0;
}

int cmd_predict(const GlobalOpts& g, const std::string& model_path,
                const std::string& data_path, bool unlabeled, const std::string& out_path,
                unsigned jobs) {
    KvConfig cfg = effective_config(g);
    const std::string assets = resolve_asset_dir(g.asset_dir);
    ModelBundle bundle = load_bundle(model_path);
    PrepTables tables = PrepTables::load(assets, bundle.prep);

    std::vector<std::string> warnings;
    Dataset ds = load_dataset(data_path,
                              unlabeled ? DatasetFormat::Unlabeled : DatasetFormat::Labeled,
                              &warnings);
    print_warnings(warnings);

    std::vector<RunRow> rows(ds.size());
    parallel_for(ds.size(), jobs, [&](size_t i) {
        auto tokens = preprocess(ds.records[i].text, bundle.prep, tables);
        rows[i] = RunRow{ds.records[i].id, bundle.model->predict(featurize(bundle, tokens))};
    });
    write_run_file(out_path, rows);

    RunManifest manifest;
    manifest.run_name = fs::path(out_path).filename().string();
    manifest.method = bundle.method;
    manifest.config_snapshot = cli::snapshot_config(cfg);
    manifest.seed = bundle.seed;
    manifest.dataset_digests[data_path] = file_digest(data_path);
    manifest.dataset_digests[model_path] = file_digest(model_path);
    write_manifest(manifest, out_path + ".manifest.json");

    std::cout << "predict: " << rows.size() << " rows -> " << out_path << '\n';
    return 0;
}

int cmd_eval(const std::string& run_path, const std::string& gold_path,
             const std::string& report_path, const std::string& jaccard_mode) {
    std::vector<std::string> warnings;
    auto rows = read_run_file(run_path, &warnings);
    Dataset gold_ds = load_dataset(gold_path, DatasetFormat::Labeled, &warnings);
    print_warnings(warnings);

    std::unordered_map<std::string, LabelSet> by_id;
    for (const auto& row : rows) by_id[row.id] = row.labels;
    if (by_id.size() != gold_ds.size()) {
        throw DataError("run file has " + std::to_string(by_id.size()) + " rows, gold has " +
                        std::to_string(gold_ds.size()));
    }
    std::vector<LabelSet> gold, pred;
    gold.reserve(gold_ds.size());
    pred.reserve(gold_ds.size());
    for (const auto& rec : gold_ds.records) {
        auto it = by_id.find(rec.id);
        if (it == by_id.end()) {
            throw DataError("run file is missing id '" + rec.id + "'");
        }
        gold.push_back(*rec.gold);
        pred.push_back(it->second);
    }

    EvalPolicy policy;
    if (jaccard_mode == "macro") {
        policy.jaccard_averaging = EvalPolicy::JaccardAveraging::MacroLabels;
    } else if (jaccard_mode != "samples") {
        throw ConfigError("--jaccard must be samples or macro");
    }
    MetricsReport report = evaluate(gold, pred, policy);
    print_report(report, std::cout);
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw DataError("cannot write report: " + report_path);
        write_report_csv(report, out);
    }
    return 0;
}

int cmd_llm_run(const GlobalOpts& g, const std::string& data_path, bool unlabeled,
                const std::string& train_path, const std::string& backend_name,
                const std::string& mock_table, const std::string& cache_path,
                size_t exemplar_count, bool exemplars_given, uint64_t seed,
                const std::string& out_path, std::string sidecar_path, unsigned jobs,
                bool send_raw) {
    KvConfig cfg = effective_config(g);
    if (!exemplars_given) {
        exemplar_count = size_t(cfg.get_uint("llm", "exemplars", exemplar_count));
    }
    const std::string assets = resolve_asset_dir(g.asset_dir);
    PipelineConfig prep = cli::pipeline_from_config(cfg);
    PrepTables tables = PrepTables::load(assets, prep);
    PromptAssets prompt_assets = PromptAssets::load(assets);
    LlmParams params = cli::llm_params_from_config(cfg);
    RetryPolicy policy = cli::retry_policy_from_config(cfg);

    // backend configuration problems should surface before any data is read
    std::unique_ptr<CompletionBackend> backend;
    if (backend_name == "mock") {
        if (mock_table.empty()) throw ConfigError("--backend mock needs --mock-table");
        auto mock = std::make_unique<MockBackend>();
        mock->load_table_file(mock_table);
        backend = std::move(mock);
    } else if (backend_name == "http") {
        backend = std::make_unique<HttpBackend>(cli::http_config_from_config(cfg));
    } else {
        throw ConfigError("--backend must be mock or http");
    }

    std::unique_ptr<ResponseCache> cache;
    if (!cache_path.empty()) cache = std::make_unique<ResponseCache>(cache_path);

    std::vector<std::string> warnings;
    Dataset ds = load_dataset(data_path,
                              unlabeled ? DatasetFormat::Unlabeled : DatasetFormat::Labeled,
                              &warnings);
    Dataset pool = load_dataset(train_path, DatasetFormat::Labeled, &warnings);
    print_warnings(warnings);

    // exemplars render as cleaned text, like the tweets we send
    Dataset cleaned_pool = pool;
    if (!send_raw) {
        for (auto& rec : cleaned_pool.records) rec.text = clean(rec.text, prep, tables);
    }
    ExemplarSet exemplars = select_exemplars(cleaned_pool, exemplar_count, seed);

    std::vector<RunRow> rows(ds.size());
    std::vector<ReasoningRow> reasons(ds.size());
    std::atomic<size_t> cache_hits{0}, failures{0};
    parallel_for(ds.size(), jobs, [&](size_t i) {
        const auto& rec = ds.records[i];
        const std::string text = send_raw ? rec.text : clean(rec.text, prep, tables);
        LlmResult result = classify_llm(text, *backend, prompt_assets, exemplars, params,
                                        policy, cache.get());
        if (result.provenance.cache_hit) cache_hits.fetch_add(1);
        if (result.provenance.failed) failures.fetch_add(1);
        rows[i] = RunRow{rec.id, result.labels};
        std::string notes;
        for (const auto& w : result.warnings) {
            if (!notes.empty()) notes += "; ";
            notes += w;
        }
        for (const auto& n : result.provenance.notes) {
            if (!notes.empty()) notes += "; ";
            notes += n;
        }
        reasons[i] = ReasoningRow{rec.id, result.reasoning, notes};
    });

    write_run_file(out_path, rows);
    if (sidecar_path.empty()) {
        fs::path p(out_path);
        p.replace_extension(".reasoning.csv");
        sidecar_path = p.string();
    }
    write_reasoning_sidecar(sidecar_path, reasons);

    RunManifest manifest;
    manifest.run_name = fs::path(out_path).filename().string();
    manifest.method = "llm";
    manifest.config_snapshot = cli::snapshot_config(cfg);
    manifest.seed = seed;
    manifest.dataset_digests[data_path] = file_digest(data_path);
    manifest.dataset_digests[train_path] = file_digest(train_path);
    write_manifest(manifest, out_path + ".manifest.json");

    std::cout << "llm-run: n=" << ds.size() << " backend_calls=" << backend->call_count()
              << " cache_hits=" << cache_hits.load() << " failures=" << failures.load()
              << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vaxtag: multi-label vaccine-concern tagging over tweets"};
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--config", global.config_path, "key = value config file")
        ->envname("VAXTAG_CONFIG");
    app.add_option("--assets", global.asset_dir, "asset directory override");

    // eda
    auto* eda = app.add_subcommand("eda", "label distribution and top-terms report");
    std::string eda_data, eda_out = "eda";
    bool eda_unlabeled = false, eda_terms_only = false, eda_k_given = false;
    size_t eda_k = 100;
    eda->add_option("--data", eda_data, "dataset csv")->required();
    eda->add_flag("--unlabeled", eda_unlabeled, "dataset has no labels column");
    eda->add_flag("--terms-only", eda_terms_only, "skip the label distribution");
    eda->add_option("--k", eda_k, "how many terms to keep (default 100)")
        ->each([&](const std::string&) { eda_k_given = true; });
    eda->add_option("--out", eda_out, "output directory");

    // split
    auto* split = app.add_subcommand("split", "materialize a train/validation split");
    std::string split_data, split_out = "split";
    bool split_unlabeled = false;
    double split_ratio = 0.8;
    uint64_t split_seed = 0;
    split->add_option("--data", split_data, "dataset csv")->required();
    split->add_flag("--unlabeled", split_unlabeled, "dataset has no labels column");
    split->add_option("--ratio", split_ratio, "train fraction (default 0.8)");
    split->add_option("--seed", split_seed, "shuffle seed");
    split->add_option("--out", split_out, "output directory");

    // train
    auto* train = app.add_subcommand("train", "fit a classical multi-label model");
    std::string train_data, train_method, train_base, train_out = "model.vxm", train_name;
    uint64_t train_seed = 0;
    bool train_seed_given = false;
    train->add_option("--data", train_data, "labeled training csv")->required();
    train->add_option("--method", train_method, "mnb | svm | rf | br | cc")->required();
    train->add_option("--base", train_base, "base learner for br/cc (default svm)");
    train->add_option("--seed", train_seed, "training seed")
        ->each([&](const std::string&) { train_seed_given = true; });
    train->add_option("--out", train_out, "model bundle path");
    train->add_option("--run-name", train_name, "manifest run name");

    // predict
    auto* predict = app.add_subcommand("predict", "emit a run file for a dataset");
    std::string pred_model, pred_data, pred_out = "run.csv";
    bool pred_unlabeled = false;
    unsigned pred_jobs = 1;
    predict->add_option("--model", pred_model, "model bundle")->required();
    predict->add_option("--data", pred_data, "dataset csv")->required();
    predict->add_flag("--unlabeled", pred_unlabeled, "dataset has no labels column");
    predict->add_option("--out", pred_out, "run file path");
    predict->add_option("--jobs", pred_jobs, "worker threads");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "score a run file against gold labels");
    std::string eval_run, eval_gold, eval_report, eval_jaccard = "samples";
    eval_cmd->add_option("--run", eval_run, "run file")->required();
    eval_cmd->add_option("--gold", eval_gold, "labeled dataset csv")->required();
    eval_cmd->add_option("--out", eval_report, "also write the report csv here");
    eval_cmd->add_option("--jaccard", eval_jaccard, "samples | macro");

    // llm-run
    auto* llm = app.add_subcommand("llm-run", "prompt a completion backend over a dataset");
    std::string llm_data, llm_train, llm_backend = "mock", llm_mock, llm_cache,
                llm_out = "llm_run.csv", llm_sidecar;
    bool llm_unlabeled = false, llm_raw = false, llm_exemplars_given = false;
    size_t llm_exemplars = 58;
    uint64_t llm_seed = 0;
    unsigned llm_jobs = 4;
    llm->add_option("--data", llm_data, "dataset csv to classify")->required();
    llm->add_flag("--unlabeled", llm_unlabeled, "dataset has no labels column");
    llm->add_option("--train", llm_train, "labeled exemplar pool csv")->required();
    llm->add_option("--backend", llm_backend, "mock | http");
    llm->add_option("--mock-table", llm_mock, "mock completion table (tsv)");
    llm->add_option("--cache", llm_cache, "response cache file (jsonl)");
    llm->add_option("--exemplars", llm_exemplars, "exemplar count (default 58)")
        ->each([&](const std::string&) { llm_exemplars_given = true; });
    llm->add_option("--seed", llm_seed, "exemplar selection seed");
    llm->add_option("--out", llm_out, "run file path");
    llm->add_option("--reasoning", llm_sidecar, "reasoning sidecar path");
    llm->add_option("--jobs", llm_jobs, "in-flight request bound (default 4)");
    llm->add_flag("--raw", llm_raw, "send raw tweet text instead of cleaned");

    try {
        app.parse(argc, argv);
        if (*eda) {
            return cmd_eda(global, eda_data, eda_unlabeled, eda_terms_only, eda_k,
                           eda_k_given, eda_out);
        }
        if (*split) {
            return cmd_split(split_data, split_unlabeled, split_ratio, split_seed, split_out);
        }
        if (*train) {
            return cmd_train(global, train_data, train_method, train_base, train_seed,
                             train_seed_given, train_out, train_name);
        }
        if (*predict) {
            return cmd_predict(global, pred_model, pred_data, pred_unlabeled, pred_out,
                               pred_jobs);
        }
        if (*eval_cmd) {
            return cmd_eval(eval_run, eval_gold, eval_report, eval_jaccard);
        }
        if (*llm) {
            return cmd_llm_run(global, llm_data, llm_unlabeled, llm_train, llm_backend,
                               llm_mock, llm_cache, llm_exemplars, llm_exemplars_given,
                               llm_seed, llm_out, llm_sidecar, llm_jobs, llm_raw);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "error[usage]: " << e.what() << '\n';
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error[config]: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error[data]: " << e.what() << '\n';
        return 2;
    } catch (const BackendError& e) {
        std::cerr << "error[backend]: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return 1;
    }
}
