// cwemap: map CWE weaknesses onto software requirements through a shared
// latent space, train classifiers on the result, and predict weakness
// categories for new requirement documents.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwemap/bundle.hpp"
#include "cwemap/catalog.hpp"
#include "cwemap/classifiers.hpp"
#include "cwemap/eval.hpp"
#include "cwemap/hash.hpp"
#include "cwemap/mapper.hpp"

namespace fs = std::filesystem;
using namespace cwemap;

namespace {

struct global_options {
    std::string output_dir = "out";
    std::uint64_t seed = 42;
    bool force = false;
};

struct text_options {
    std::size_t k = 100;
    std::size_t min_df = 1;
    std::string weighting = "raw_counts";
    std::string stopword_file;
};

column_map parse_columns(const std::string& spec) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : spec) {
        if (c == ',') { parts.push_back(current); current.clear(); }
        else current += c;
    }
    parts.push_back(current);
    if (parts.size() != 3)
        fail(errc::invalid_argument, "--columns needs three comma-separated names, got '" + spec + "'");
    return column_map{trim(parts[0]), trim(parts[1]), trim(parts[2])};
}

std::set<std::string> resolve_stopwords(const std::string& flag_path, const std::string& bundle_dir) {
    if (!flag_path.empty()) return load_stopwords(flag_path);
    if (!bundle_dir.empty() && fs::exists(bundle_dir + "/stopwords.txt"))
        return load_stopwords(bundle_dir + "/stopwords.txt");
    return default_stopwords();
}

void refuse_existing(const std::vector<std::string>& paths, bool force) {
    if (force) return;
    for (const auto& p : paths)
        if (fs::exists(p))
            fail(errc::refuse_overwrite, p + " already exists (use --force to overwrite)");
}

std::vector<algorithm> parse_algorithms(const std::vector<std::string>& names) {
    std::vector<algorithm> out;
    for (const auto& name : names) {
        if (name == "all")
            return {algorithm::gaussian_nb, algorithm::multinomial_nb, algorithm::linear_svm,
                    algorithm::decision_tree, algorithm::mlp};
        out.push_back(algorithm_from_name(name));
    }
    return out;
}

// ---------------------------------------------------------------- map ----

struct map_options {
    std::string weakness_file;
    std::string category_file;
    std::string requirements_file;
    std::string columns = "ProjectID,RequirementText,Class";
    text_options text;
};

int run_map(const global_options& global, const map_options& opt) {
    const std::string out_dir = global.output_dir;
    const std::string training_csv = out_dir + "/training_set.csv";
    const std::string flags_csv = out_dir + "/low_similarity.csv";
    const std::string provenance_json = out_dir + "/provenance.json";
    const std::string bundle_dir = out_dir + "/bundle";
    refuse_existing({training_csv, flags_csv, provenance_json, bundle_dir}, global.force);

    cwe_catalog catalog = load_cwe_catalog(opt.weakness_file, opt.category_file);
    std::vector<requirement> reqs = load_requirements(opt.requirements_file, parse_columns(opt.columns));

    pipeline_params params;
    params.k = opt.text.k;
    params.seed = global.seed;
    params.weight = weighting_from_name(opt.text.weighting);
    params.min_df = opt.text.min_df;
    params.stopwords = resolve_stopwords(opt.text.stopword_file, "");

    joint_space space;
    labeled_dataset ds = build_training_set(catalog, reqs, params, &space);
    ds.provenance["weakness_file_hash"] = hash_file_hex(opt.weakness_file);
    ds.provenance["category_file_hash"] = hash_file_hex(opt.category_file);
    ds.provenance["requirements_file_hash"] = hash_file_hex(opt.requirements_file);
    ds.provenance["stopword_source"] = opt.text.stopword_file.empty() ? "builtin" : opt.text.stopword_file;

    fs::create_directories(out_dir);
    export_training_set(ds, training_csv);
    export_flag_report(ds, flags_csv);
    save_provenance(ds.provenance, provenance_json);

    prediction_bundle bundle;
    bundle.vocab = space.vocab;
    bundle.stopwords = params.stopwords;
    bundle.lsa = space.model;
    for (const auto& [id, cat] : catalog.categories) bundle.category_names[id] = cat.name;
    bundle.provenance = ds.provenance;
    save_bundle(bundle, bundle_dir);

    std::size_t flagged = 0;
    for (const auto& ex : ds.examples)
        if (ex.similarity < low_similarity_threshold) ++flagged;
    std::cout << "mapped " << ds.examples.size() << " requirements onto " << catalog.weaknesses.size()
              << " weaknesses (" << catalog.categories.size() << " categories), k=" << space.effective_k
              << ", " << flagged << " low-similarity rows flagged\n";
    std::cout << "wrote " << training_csv << ", " << flags_csv << ", " << provenance_json << ", "
              << bundle_dir << "/\n";
    return 0;
}

// --------------------------------------------------------- experiment ----

struct experiment_options {
    std::string training_csv;
    std::vector<std::string> algorithms = {"gaussian_nb", "linear_svm", "decision_tree", "mlp"};
    std::vector<double> fractions = {0.8, 0.7, 0.6};
    std::vector<std::uint64_t> seeds;
    std::string features = "latent";
    bool no_stratify = false;
    text_options text;
    std::size_t svm_epochs = 50;
    double svm_lambda = 1e-4;
    std::size_t tree_max_depth = 16;
    std::size_t tree_min_leaf = 1;
    std::size_t mlp_batch_size = 32;
    std::size_t mlp_epochs = 10;
    std::vector<std::size_t> mlp_hidden = {128};
    double mlp_learning_rate = 0.01;
    double mlp_momentum = 0.9;
    std::string save_model_name;
};

// Features through the bundle the map stage wrote: the requirement texts are
// re-vectorized against the shared vocabulary and projected with the stored
// latent model, reproducing the mapping-time coordinates.
featurization featurize_via_bundle(const labeled_dataset& ds, const std::string& bundle_dir,
                                   feature_kind kind) {
    prediction_bundle bundle = load_bundle(bundle_dir);
    featurization out;
    out.vocab = bundle.vocab;
    for (const auto& ex : ds.examples) out.labels.labels.push_back(ex.category_id);

    std::vector<std::vector<std::string>> docs;
    for (const auto& ex : ds.examples) docs.push_back(tokenize(ex.requirement_text, bundle.stopwords));
    if (kind == feature_kind::latent) {
        out.effective_k = bundle.lsa.k;
        std::vector<latent_vector> vecs;
        for (const auto& doc : docs)
            vecs.push_back(latent_feature_row(bundle.lsa, vectorize(doc, bundle.vocab)));
        out.features = latent_features(vecs);
    } else {
        out.features = bow_features(docs, bundle.vocab, kind);
    }
    return out;
}

int run_experiment(const global_options& global, const experiment_options& opt,
                   const std::set<std::string>& flag_overrides) {
    const std::string training_csv =
        opt.training_csv.empty() ? global.output_dir + "/training_set.csv" : opt.training_csv;
    if (!fs::exists(training_csv)) fail(errc::missing_file, "training set not found: " + training_csv);

    const std::string report_csv = global.output_dir + "/report.csv";
    const std::string report_txt = global.output_dir + "/report_summary.txt";
    refuse_existing({report_csv, report_txt}, global.force);

    labeled_dataset ds = import_training_set(training_csv);

    // Text/LSA parameters follow the mapping provenance when present;
    // explicit flags win.
    const std::string dataset_dir = fs::path(training_csv).parent_path().string();
    pipeline_params params;
    params.seed = global.seed;
    std::map<std::string, std::string> mapping_prov;
    if (fs::exists(dataset_dir + "/provenance.json")) {
        mapping_prov = load_provenance(dataset_dir + "/provenance.json");
        if (auto it = mapping_prov.find("k_requested"); it != mapping_prov.end())
            params.k = std::stoul(it->second);
        if (auto it = mapping_prov.find("min_df"); it != mapping_prov.end())
            params.min_df = std::stoul(it->second);
        if (auto it = mapping_prov.find("weighting"); it != mapping_prov.end())
            params.weight = weighting_from_name(it->second);
        if (auto it = mapping_prov.find("seed"); it != mapping_prov.end())
            params.seed = std::stoull(it->second);
    }
    if (flag_overrides.count("--k")) params.k = opt.text.k;
    if (flag_overrides.count("--min-df")) params.min_df = opt.text.min_df;
    if (flag_overrides.count("--weighting")) params.weight = weighting_from_name(opt.text.weighting);
    params.stopwords = resolve_stopwords(opt.text.stopword_file, dataset_dir + "/bundle");

    feature_kind kind = feature_kind_from_name(opt.features);
    const std::string bundle_dir = dataset_dir + "/bundle";
    const bool bundle_usable = flag_overrides.empty() && opt.text.stopword_file.empty() &&
                               fs::exists(bundle_dir + "/vocabulary.bin") &&
                               fs::exists(bundle_dir + "/lsa.bin");
    featurization feats =
        bundle_usable ? featurize_via_bundle(ds, bundle_dir, kind) : featurize_dataset(ds, kind, params);

    experiment_config config;
    config.algorithms = parse_algorithms(opt.algorithms);
    config.fractions = opt.fractions;
    config.seeds = opt.seeds.empty() ? std::vector<std::uint64_t>{global.seed} : opt.seeds;
    config.stratified = !opt.no_stratify;
    config.options.svm_epochs = opt.svm_epochs;
    config.options.svm_lambda = opt.svm_lambda;
    config.options.tree_max_depth = opt.tree_max_depth;
    config.options.tree_min_leaf = opt.tree_min_leaf;
    config.options.mlp.batch_size = opt.mlp_batch_size;
    config.options.mlp.epochs = opt.mlp_epochs;
    config.options.mlp.hidden_sizes = opt.mlp_hidden;
    config.options.mlp.learning_rate = opt.mlp_learning_rate;
    config.options.mlp.momentum = opt.mlp_momentum;

    eval_report report = run_experiment(feats.features, feats.labels, config);
    report.provenance["tool_version"] = tool_version;
    report.provenance["dataset_hash"] = hash_file_hex(training_csv);
    report.provenance["vocab_hash"] = feats.vocab.content_hash();
    report.provenance["stopword_hash"] = stopword_hash(params.stopwords);
    report.provenance["features"] = feature_kind_name(kind);
    report.provenance["k_effective"] = std::to_string(feats.effective_k);
    report.provenance["lsa_seed"] = std::to_string(params.seed);
    if (auto it = mapping_prov.find("catalog_hash"); it != mapping_prov.end())
        report.provenance["catalog_hash"] = it->second;

    fs::create_directories(global.output_dir);
    export_report_csv(report, report_csv);
    export_report_summary(report, report_txt);

    for (const auto& cell : report.cells) {
        std::cout << cell.algorithm << " fraction=" << cell.train_fraction << " seed=" << cell.seed;
        if (cell.failed) std::cout << " FAILED(" << cell.failure_reason << ")";
        else std::cout << " accuracy=" << detail::format_fixed(cell.test_accuracy, 4);
        std::cout << " [" << detail::format_fixed(cell.wall_ms, 1) << " ms]\n";
    }
    std::cout << "wrote " << report_csv << ", " << report_txt << '\n';

    if (!opt.save_model_name.empty()) {
        std::string chosen = opt.save_model_name;
        if (chosen == "best") {
            std::map<std::string, std::pair<double, std::size_t>> sums;
            for (const auto& cell : report.cells)
                if (!cell.failed) {
                    sums[cell.algorithm].first += cell.test_accuracy;
                    ++sums[cell.algorithm].second;
                }
            if (sums.empty()) fail(errc::degenerate_labels, "no algorithm trained successfully");
            double best = -1.0;
            for (const auto& [name, acc] : sums) {
                double mean = acc.first / static_cast<double>(acc.second);
                if (mean > best) { best = mean; chosen = name; }
            }
        }
        algorithm algo = algorithm_from_name(chosen);

        if (!fs::exists(bundle_dir + "/vocabulary.bin"))
            fail(errc::missing_file, bundle_dir + "/vocabulary.bin not found (run `cwemap map` first)");
        vocabulary bundle_vocab = load_vocabulary(bundle_dir + "/vocabulary.bin");
        if (bundle_vocab.content_hash() != feats.vocab.content_hash())
            fail(errc::version_mismatch,
                 "bundle vocabulary does not match the experiment feature space; "
                 "rerun with matching text parameters");

        std::uint64_t model_seed = config.seeds.front();
        trained_model model = train(algo, feats.features, feats.labels, model_seed, config.options);
        model_meta meta;
        meta.features = kind;
        meta.vocab_hash = feats.vocab.content_hash();
        meta.lsa_k = static_cast<std::uint32_t>(feats.effective_k);
        const std::string model_path =
            bundle_dir + "/" + algorithm_name(algo) + "-" + std::to_string(model_seed) + ".model";
        refuse_existing({model_path}, global.force);
        save_model(model, model_path, meta);
        std::cout << "saved " << model_path << '\n';
    }
    return 0;
}

// ------------------------------------------------------------ predict ----

struct predict_options {
    std::string bundle_dir;
    std::string model_name;
    std::string input_file;
    std::string output_file;
    std::string columns = "ProjectID,RequirementText,Class";
};

std::vector<std::pair<std::size_t, std::string>> read_prediction_input(const std::string& path,
                                                                       const column_map& columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();

    // Requirements-CSV schema when the header carries the text column;
    // plain one-requirement-per-line otherwise.
    try {
        auto records = parse_csv(content);
        if (!records.empty()) {
            bool has_text_column = false;
            for (const auto& f : records[0].fields)
                if (trim(f) == columns.text) has_text_column = true;
            if (has_text_column) {
                std::size_t col = detail::find_column(records[0], columns.text);
                std::vector<std::pair<std::size_t, std::string>> rows;
                for (std::size_t r = 1; r < records.size(); ++r) {
                    if (records[r].fields.size() <= col)
                        fail(errc::malformed_row,
                             "line " + std::to_string(records[r].line) + ": missing text column");
                    rows.emplace_back(records[r].line, trim(records[r].fields[col]));
                }
                return rows;
            }
        }
    } catch (const error&) {
        // not CSV-shaped; fall through to plain-line mode
    }

    std::vector<std::pair<std::size_t, std::string>> rows;
    std::size_t line = 0;
    std::string text;
    std::istringstream lines(content);
    while (std::getline(lines, text)) {
        ++line;
        std::string t = trim(text);
        if (!t.empty()) rows.emplace_back(line, t);
    }
    return rows;
}

int run_predict(const predict_options& opt) {
    prediction_bundle bundle = load_bundle(opt.bundle_dir);

    std::string model_path;
    if (!opt.model_name.empty()) {
        model_path = opt.bundle_dir + "/" + opt.model_name;
        if (!fs::exists(model_path)) fail(errc::missing_file, "no such model file: " + model_path);
    } else {
        std::vector<std::string> candidates;
        for (const auto& entry : fs::directory_iterator(opt.bundle_dir))
            if (entry.path().extension() == ".model") candidates.push_back(entry.path().string());
        std::sort(candidates.begin(), candidates.end());
        if (candidates.empty())
            fail(errc::missing_file, "no .model file in " + opt.bundle_dir +
                                         " (run `cwemap experiment --save-model ...` first)");
        if (candidates.size() > 1) {
            std::string all;
            for (const auto& c : candidates) all += " " + fs::path(c).filename().string();
            fail(errc::invalid_argument, "multiple models in bundle, pick one with --model:" + all);
        }
        model_path = candidates[0];
    }
    loaded_model loaded = load_model(model_path);

    if (loaded.meta.vocab_hash != bundle.vocab.content_hash())
        fail(errc::version_mismatch, "model was trained against vocabulary " + loaded.meta.vocab_hash +
                                         " but the bundle holds " + bundle.vocab.content_hash());
    if (loaded.meta.features == feature_kind::latent && loaded.meta.lsa_k != bundle.lsa.k)
        fail(errc::version_mismatch, "model expects k=" + std::to_string(loaded.meta.lsa_k) +
                                         " but the bundle LSA model has k=" + std::to_string(bundle.lsa.k));

    auto rows = read_prediction_input(opt.input_file, parse_columns(opt.columns));

    std::ofstream out(opt.output_file, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + opt.output_file);
    out << "line_number,requirement_text,predicted_category_id,category_name\n";
    const double n_docs = static_cast<double>(bundle.vocab.total_docs);
    for (const auto& [line, text] : rows) {
        sparse_vector bow = vectorize(tokenize(text, bundle.stopwords), bundle.vocab);
        std::vector<double> features;
        if (loaded.meta.features == feature_kind::latent) {
            features = latent_feature_row(bundle.lsa, bow);
        } else {
            features.assign(bundle.vocab.size(), 0.0);
            for (const auto& [idx, val] : bow.entries) {
                double v = val;
                if (loaded.meta.features == feature_kind::tfidf)
                    v *= std::log(n_docs / static_cast<double>(bundle.vocab.doc_freq[idx]));
                features[idx] = v;
            }
        }
        int category = predict(loaded.model, features);
        std::string name;
        if (auto it = bundle.category_names.find(category); it != bundle.category_names.end())
            name = it->second;
        out << csv_join({std::to_string(line), text, std::to_string(category), name});
    }
    if (!out) fail(errc::io_error, "write failed: " + opt.output_file);
    std::cout << "wrote " << rows.size() << " predictions to " << opt.output_file << '\n';
    return 0;
}

// ------------------------------------------------------------ inspect ----

void inspect_file(const std::string& path) {
    const std::string name = fs::path(path).filename().string();
    if (name == "provenance.json") {
        for (const auto& [key, value] : load_provenance(path)) std::cout << key << ": " << value << '\n';
        return;
    }
    if (fs::path(path).extension() == ".model") {
        loaded_model loaded = load_model(path);
        std::cout << "kind: " << algorithm_name(model_kind(loaded.model)) << '\n';
        std::cout << "classes: " << model_classes(loaded.model).size() << '\n';
        std::cout << "features: " << feature_kind_name(loaded.meta.features) << '\n';
        std::cout << "vocab_hash: " << loaded.meta.vocab_hash << '\n';
        std::cout << "lsa_k: " << loaded.meta.lsa_k << '\n';
        return;
    }
    if (name == "lsa.bin") {
        latent_model model = load_lsa_model(path);
        std::cout << "k: " << model.k << "\nseed: " << model.seed
                  << "\nvocabulary: " << model.vocab_dimension() << "\ndocuments: " << model.doc_count()
                  << '\n';
        return;
    }
    if (name == "vocabulary.bin") {
        vocabulary vocab = load_vocabulary(path);
        std::cout << "terms: " << vocab.size() << "\ntotal_docs: " << vocab.total_docs
                  << "\nvocab_hash: " << vocab.content_hash() << '\n';
        return;
    }
    if (fs::path(path).extension() == ".csv") {
        auto records = read_csv_file(path);
        if (!records.empty() && records[0].fields == training_set_columns) {
            std::cout << "artifact: training_set\nrows: " << records.size() - 1 << '\n';
            std::string sibling = (fs::path(path).parent_path() / "provenance.json").string();
            if (fs::exists(sibling))
                for (const auto& [key, value] : load_provenance(sibling))
                    std::cout << key << ": " << value << '\n';
            return;
        }
        if (!records.empty() && !records[0].fields.empty() && records[0].fields[0] == "row_kind") {
            std::cout << "artifact: experiment_report\nrows: " << records.size() - 1 << '\n';
            return;
        }
        std::cout << "artifact: csv\nrows: " << (records.empty() ? 0 : records.size() - 1) << '\n';
        return;
    }
    fail(errc::invalid_argument, "don't know how to inspect " + path);
}

int run_inspect(const std::string& path) {
    if (!fs::exists(path)) fail(errc::missing_file, "no such path: " + path);
    if (fs::is_directory(path)) {
        std::vector<std::string> entries;
        for (const auto& entry : fs::directory_iterator(path)) entries.push_back(entry.path().string());
        std::sort(entries.begin(), entries.end());
        bool any = false;
        for (const auto& entry : entries) {
            if (fs::is_directory(entry)) continue;
            std::cout << "-- " << fs::path(entry).filename().string() << " --\n";
            try {
                inspect_file(entry);
                any = true;
            } catch (const error&) {
                std::cout << "(unrecognized)\n";
            }
        }
        if (!any) fail(errc::invalid_argument, "nothing inspectable in " + path);
        return 0;
    }
    inspect_file(path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cwemap: predict software weakness categories from requirement specifications"};
    app.require_subcommand(1);
    app.set_config("--config");

    global_options global;
    app.add_option("--output-dir", global.output_dir, "Directory for emitted artifacts")
        ->capture_default_str();
    app.add_option("--seed", global.seed, "Base seed for all randomized stages")->capture_default_str();
    app.add_flag("--force", global.force, "Overwrite existing output files");

    map_options map_opt;
    auto* map_cmd =
        app.add_subcommand("map", "Build the labeled training set from a CWE catalog and requirements");
    map_cmd->fallthrough();
    map_cmd->add_option("--cwe-weaknesses", map_opt.weakness_file, "Weakness CSV (ID,Name,Description)")
        ->required();
    map_cmd->add_option("--cwe-categories", map_opt.category_file,
                        "Category CSV (CategoryID,CategoryName,MemberID)")
        ->required();
    map_cmd->add_option("--requirements", map_opt.requirements_file, "Requirements CSV")->required();
    map_cmd->add_option("--columns", map_opt.columns, "Requirements column names: project,text,class")
        ->capture_default_str();
    map_cmd->add_option("--k", map_opt.text.k, "Latent space rank (capped at min(docs,terms)-1)")
        ->capture_default_str();
    map_cmd->add_option("--min-df", map_opt.text.min_df, "Minimum document frequency")->capture_default_str();
    map_cmd->add_option("--weighting", map_opt.text.weighting, "raw_counts or tfidf")->capture_default_str();
    map_cmd->add_option("--stopwords", map_opt.text.stopword_file, "Stopword file (one word per line)");

    experiment_options exp_opt;
    auto* exp_cmd = app.add_subcommand("experiment", "Train and evaluate classifiers on a training set");
    exp_cmd->fallthrough();
    exp_cmd->add_option("--training-set", exp_opt.training_csv,
                        "Training-set CSV (default: <output-dir>/training_set.csv)");
    exp_cmd->add_option("--algorithms", exp_opt.algorithms,
                        "Algorithms to run (gaussian_nb, multinomial_nb, linear_svm, decision_tree, mlp, all)")
        ->delimiter(',')
        ->capture_default_str();
    exp_cmd->add_option("--fractions", exp_opt.fractions, "Training fractions")
        ->delimiter(',')
        ->capture_default_str();
    exp_cmd->add_option("--seeds", exp_opt.seeds, "Seed list (default: the global --seed)")->delimiter(',');
    exp_cmd->add_option("--features", exp_opt.features, "latent, counts or tfidf")->capture_default_str();
    exp_cmd->add_flag("--no-stratify", exp_opt.no_stratify, "Plain shuffled splits");
    exp_cmd->add_option("--k", exp_opt.text.k, "Latent rank override");
    exp_cmd->add_option("--min-df", exp_opt.text.min_df, "Minimum document frequency override");
    exp_cmd->add_option("--weighting", exp_opt.text.weighting, "Weighting override");
    exp_cmd->add_option("--stopwords", exp_opt.text.stopword_file, "Stopword file override");
    exp_cmd->add_option("--svm-epochs", exp_opt.svm_epochs, "SVM epochs")->capture_default_str();
    exp_cmd->add_option("--svm-lambda", exp_opt.svm_lambda, "SVM L2 regularization")->capture_default_str();
    exp_cmd->add_option("--tree-max-depth", exp_opt.tree_max_depth, "Decision tree depth cap")
        ->capture_default_str();
    exp_cmd->add_option("--tree-min-leaf", exp_opt.tree_min_leaf, "Decision tree leaf minimum")
        ->capture_default_str();
    exp_cmd->add_option("--mlp-batch-size", exp_opt.mlp_batch_size, "MLP minibatch size")
        ->capture_default_str();
    exp_cmd->add_option("--mlp-epochs", exp_opt.mlp_epochs, "MLP epochs")->capture_default_str();
    exp_cmd->add_option("--mlp-hidden", exp_opt.mlp_hidden, "MLP hidden layer sizes")
        ->delimiter(',')
        ->capture_default_str();
    exp_cmd->add_option("--mlp-learning-rate", exp_opt.mlp_learning_rate, "MLP learning rate")
        ->capture_default_str();
    exp_cmd->add_option("--mlp-momentum", exp_opt.mlp_momentum, "MLP momentum")->capture_default_str();
    exp_cmd->add_option("--save-model", exp_opt.save_model_name,
                        "Train this algorithm (or 'best') on the full dataset and save it into the bundle");

    predict_options pred_opt;
    auto* pred_cmd = app.add_subcommand("predict", "Predict weakness categories for new requirements");
    pred_cmd->fallthrough();
    pred_cmd->add_option("--bundle", pred_opt.bundle_dir, "Bundle directory written by map/experiment")
        ->required();
    pred_cmd->add_option("--model", pred_opt.model_name, "Model file name inside the bundle");
    pred_cmd->add_option("--input", pred_opt.input_file,
                         "Requirements CSV or plain text, one requirement per line")
        ->required();
    pred_cmd->add_option("--output", pred_opt.output_file, "Prediction CSV to write")->required();
    pred_cmd->add_option("--columns", pred_opt.columns, "Requirements column names: project,text,class")
        ->capture_default_str();

    std::string inspect_path;
    auto* inspect_cmd = app.add_subcommand("inspect", "Print the provenance of an artifact");
    inspect_cmd->fallthrough();
    inspect_cmd->add_option("path", inspect_path, "Artifact file or directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*map_cmd) return run_map(global, map_opt);
        if (*exp_cmd) {
            std::set<std::string> overrides;
            for (const char* flag : {"--k", "--min-df", "--weighting"})
                if (exp_cmd->count(flag)) overrides.insert(flag);
            return run_experiment(global, exp_opt, overrides);
        }
        if (*pred_cmd) return run_predict(pred_opt);
        if (*inspect_cmd) return run_inspect(inspect_path);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
