#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cwemap/classifiers.hpp"
#include "cwemap/csv.hpp"
#include "cwemap/rng.hpp"

namespace cwemap {

struct split_spec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct split_result {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Seeded disjoint partition of 0..N-1. Under stratification each class is
// apportioned by largest remainder against round(fraction*N); classes with
// at least two members always keep a test member, singleton classes go to
// the training side.
inline split_result split(const std::vector<int>& labels, const split_spec& spec) {
    const std::size_t n = labels.size();
    if (n < 2) fail(errc::too_few_examples, "need at least 2 examples to split");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        fail(errc::invalid_argument, "train_fraction must lie in (0, 1)");

    std::size_t target_train = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(n)));
    target_train = std::min(std::max<std::size_t>(target_train, 1), n - 1);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng gen(spec.seed);
    gen.shuffle(order);

    split_result out;
    if (!spec.stratified) {
        out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(target_train));
        out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(target_train), order.end());
    } else {
        std::map<int, std::vector<std::size_t>> by_class; // shuffled order within class
        for (std::size_t i : order) by_class[labels[i]].push_back(i);

        // Largest-remainder apportionment of the train quota.
        std::vector<int> class_ids;
        std::vector<std::size_t> quota;
        std::vector<double> remainder;
        std::size_t assigned = 0;
        for (const auto& [label, members] : by_class) {
            double exact = spec.train_fraction * static_cast<double>(members.size());
            std::size_t q = static_cast<std::size_t>(std::floor(exact));
            class_ids.push_back(label);
            quota.push_back(q);
            remainder.push_back(exact - std::floor(exact));
            assigned += q;
        }
        std::vector<std::size_t> idx(class_ids.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return remainder[a] > remainder[b];
        });
        for (std::size_t i = 0; assigned < target_train && i < idx.size(); ++i) {
            std::size_t c = idx[i];
            if (quota[c] < by_class[class_ids[c]].size()) { ++quota[c]; ++assigned; }
        }
        for (std::size_t c = 0; c < class_ids.size(); ++c) {
            std::size_t members = by_class[class_ids[c]].size();
            if (members == 1) quota[c] = 1;                       // singletons train
            else if (quota[c] >= members) quota[c] = members - 1; // keep a test member
        }
        for (std::size_t c = 0; c < class_ids.size(); ++c) {
            const auto& members = by_class[class_ids[c]];
            for (std::size_t i = 0; i < members.size(); ++i)
                (i < quota[c] ? out.train : out.test).push_back(members[i]);
        }
        // All-singleton datasets would otherwise leave the test side empty.
        if (out.test.empty()) {
            std::sort(out.train.begin(), out.train.end());
            out.test.push_back(out.train.back());
            out.train.pop_back();
        }
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

inline double accuracy(const std::vector<int>& predictions, const std::vector<int>& truth) {
    if (predictions.size() != truth.size())
        fail(errc::length_mismatch, std::to_string(predictions.size()) + " predictions vs " +
                                        std::to_string(truth.size()) + " truths");
    if (predictions.empty()) fail(errc::empty_input, "nothing to score");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

// Row = true class, column = predicted class, indexed by position in class_set.
inline std::vector<std::size_t> confusion_matrix(const std::vector<int>& class_set,
                                                 const std::vector<int>& truth,
                                                 const std::vector<int>& predictions) {
    const std::size_t c = class_set.size();
    std::vector<std::size_t> conf(c * c, 0);
    auto index_of = [&](int label) {
        auto it = std::lower_bound(class_set.begin(), class_set.end(), label);
        if (it == class_set.end() || *it != label) fail(errc::invalid_argument, "label outside class set");
        return static_cast<std::size_t>(it - class_set.begin());
    };
    for (std::size_t i = 0; i < truth.size(); ++i)
        ++conf[index_of(truth[i]) * c + index_of(predictions[i])];
    return conf;
}

struct eval_cell {
    std::string algorithm;
    double train_fraction = 0.0;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string failure_reason;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    double test_accuracy = 0.0;
    std::vector<std::size_t> confusion; // C x C over the dataset class set
    double wall_ms = 0.0;               // diagnostic only, never written to files
};

struct eval_report {
    std::vector<int> class_set;
    std::vector<eval_cell> cells; // ordered by (algorithm, fraction, seed) as configured
    std::map<std::string, std::string> provenance;
};

struct experiment_config {
    std::vector<algorithm> algorithms = {algorithm::gaussian_nb, algorithm::linear_svm,
                                         algorithm::decision_tree, algorithm::mlp};
    std::vector<double> fractions = {0.8, 0.7, 0.6};
    std::vector<std::uint64_t> seeds = {42};
    bool stratified = true;
    training_options options;
};

// Trains every (algorithm, fraction, seed) cell and scores it on the held-out
// indices. A cell whose trainer rejects the features (multinomial NB on
// latent vectors) is recorded as FAILED, not raised.
inline eval_report run_experiment(const feature_matrix& x, const label_vector& y,
                                  const experiment_config& config) {
    if (x.rows == 0) fail(errc::empty_input, "empty feature matrix");
    if (config.algorithms.empty() || config.fractions.empty() || config.seeds.empty())
        fail(errc::invalid_argument, "need at least one algorithm, fraction and seed");

    eval_report report;
    report.class_set = y.class_set();
    for (algorithm algo : config.algorithms) {
        for (double fraction : config.fractions) {
            for (std::uint64_t seed : config.seeds) {
                eval_cell cell;
                cell.algorithm = algorithm_name(algo);
                cell.train_fraction = fraction;
                cell.seed = seed;
                auto t0 = std::chrono::steady_clock::now();
                try {
                    split_result parts = split(y.labels, {fraction, seed, config.stratified});
                    feature_matrix xtr{parts.train.size(), x.cols, {}, x.kind};
                    label_vector ytr;
                    for (std::size_t i : parts.train) {
                        auto row = x.row(i);
                        xtr.values.insert(xtr.values.end(), row.begin(), row.end());
                        ytr.labels.push_back(y.labels[i]);
                    }
                    trained_model model = train(algo, xtr, ytr, seed, config.options);
                    std::vector<int> predictions, truth;
                    for (std::size_t i : parts.test) {
                        predictions.push_back(predict(model, x.row(i)));
                        truth.push_back(y.labels[i]);
                    }
                    cell.train_size = parts.train.size();
                    cell.test_size = parts.test.size();
                    cell.test_accuracy = accuracy(predictions, truth);
                    cell.confusion = confusion_matrix(report.class_set, truth, predictions);
                } catch (const error& e) {
                    cell.failed = true;
                    cell.failure_reason = errc_name(e.code());
                }
                cell.wall_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
                report.cells.push_back(std::move(cell));
            }
        }
    }
    return report;
}

namespace detail {

inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

inline std::string format_fraction(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct class_prf {
    std::vector<double> precision;
    std::vector<double> recall;
};

inline class_prf precision_recall(const std::vector<std::size_t>& conf, std::size_t c) {
    class_prf out;
    out.precision.resize(c, 0.0);
    out.recall.resize(c, 0.0);
    for (std::size_t i = 0; i < c; ++i) {
        std::size_t col = 0, row = 0;
        for (std::size_t j = 0; j < c; ++j) {
            col += conf[j * c + i];
            row += conf[i * c + j];
        }
        out.precision[i] = col ? static_cast<double>(conf[i * c + i]) / static_cast<double>(col) : 0.0;
        out.recall[i] = row ? static_cast<double>(conf[i * c + i]) / static_cast<double>(row) : 0.0;
    }
    return out;
}

} // namespace detail

// One CSV row per cell, then per-(algorithm, seed) means over the fractions,
// then per-algorithm overall means. Wall time is deliberately not written:
// emitted files must be byte-identical across reruns.
inline void export_report_csv(const eval_report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);

    const std::size_t c = report.class_set.size();
    std::vector<std::string> header = {"row_kind", "algorithm", "train_fraction", "seed",
                                       "status",   "train_size", "test_size",     "accuracy"};
    for (int label : report.class_set) header.push_back("precision_" + std::to_string(label));
    for (int label : report.class_set) header.push_back("recall_" + std::to_string(label));
    header.push_back("confusion");
    header.push_back("dataset_hash");
    out << csv_join(header);

    std::string dataset_hash;
    if (auto it = report.provenance.find("dataset_hash"); it != report.provenance.end())
        dataset_hash = it->second;

    for (const auto& cell : report.cells) {
        std::vector<std::string> row = {"cell",
                                        cell.algorithm,
                                        detail::format_fraction(cell.train_fraction),
                                        std::to_string(cell.seed),
                                        cell.failed ? "FAILED(" + cell.failure_reason + ")" : "OK",
                                        std::to_string(cell.train_size),
                                        std::to_string(cell.test_size),
                                        cell.failed ? "" : detail::format_fixed(cell.test_accuracy, 6)};
        if (cell.failed) {
            row.insert(row.end(), 2 * c, "");
            row.push_back("");
        } else {
            auto prf = detail::precision_recall(cell.confusion, c);
            for (double p : prf.precision) row.push_back(detail::format_fixed(p, 6));
            for (double r : prf.recall) row.push_back(detail::format_fixed(r, 6));
            std::string conf;
            for (std::size_t i = 0; i < c; ++i) {
                if (i) conf += ';';
                for (std::size_t j = 0; j < c; ++j) {
                    if (j) conf += '|';
                    conf += std::to_string(cell.confusion[i * c + j]);
                }
            }
            row.push_back(conf);
        }
        row.push_back(dataset_hash);
        out << csv_join(row);
    }

    // Mean rows. Failed cells carry no accuracy, so a mean covers the
    // successful cells only; an all-failed group stays FAILED.
    auto emit_mean = [&](const std::string& kind, const std::string& algo, const std::string& seed,
                         const std::vector<const eval_cell*>& group) {
        std::size_t ok = 0;
        double sum = 0.0;
        std::string reason;
        for (const eval_cell* cell : group) {
            if (cell->failed) reason = cell->failure_reason;
            else { ++ok; sum += cell->test_accuracy; }
        }
        std::vector<std::string> row = {kind,
                                        algo,
                                        "",
                                        seed,
                                        ok ? "OK" : "FAILED(" + reason + ")",
                                        "",
                                        "",
                                        ok ? detail::format_fixed(sum / static_cast<double>(ok), 6) : ""};
        row.insert(row.end(), 2 * c, "");
        row.push_back("");
        row.push_back(dataset_hash);
        out << csv_join(row);
    };

    std::vector<std::string> algo_order;
    for (const auto& cell : report.cells)
        if (std::find(algo_order.begin(), algo_order.end(), cell.algorithm) == algo_order.end())
            algo_order.push_back(cell.algorithm);

    for (const auto& algo : algo_order) {
        std::vector<std::uint64_t> seed_order;
        for (const auto& cell : report.cells)
            if (cell.algorithm == algo &&
                std::find(seed_order.begin(), seed_order.end(), cell.seed) == seed_order.end())
                seed_order.push_back(cell.seed);
        for (std::uint64_t seed : seed_order) {
            std::vector<const eval_cell*> group;
            for (const auto& cell : report.cells)
                if (cell.algorithm == algo && cell.seed == seed) group.push_back(&cell);
            emit_mean("split_mean", algo, std::to_string(seed), group);
        }
        std::vector<const eval_cell*> group;
        for (const auto& cell : report.cells)
            if (cell.algorithm == algo) group.push_back(&cell);
        emit_mean("algorithm_mean", algo, "", group);
    }
    if (!out) fail(errc::io_error, "write failed: " + path);
}

// Plain-text companion for humans; same determinism rule as the CSV.
inline void export_report_summary(const eval_report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out << "experiment summary\n==================\n\n";
    for (const auto& [key, value] : report.provenance) out << key << ": " << value << '\n';
    out << '\n';
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %-10s %-8s %-10s %s\n", "algorithm", "fraction", "seed",
                  "accuracy", "status");
    out << line;
    for (const auto& cell : report.cells) {
        std::snprintf(line, sizeof(line), "%-16s %-10s %-8llu %-10s %s\n", cell.algorithm.c_str(),
                      detail::format_fraction(cell.train_fraction).c_str(),
                      static_cast<unsigned long long>(cell.seed),
                      cell.failed ? "-" : detail::format_fixed(cell.test_accuracy, 4).c_str(),
                      cell.failed ? ("FAILED(" + cell.failure_reason + ")").c_str() : "OK");
        out << line;
    }
    if (!out) fail(errc::io_error, "write failed: " + path);
}

} // namespace cwemap
