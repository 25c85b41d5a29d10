#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "cwemap/eval.hpp"
#include "cwemap/rng.hpp"
#include "helpers.hpp"

using namespace cwemap;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    throw std::logic_error("expected a cwemap::error");
}

void check_partition(const split_result& parts, std::size_t n) {
    std::set<std::size_t> seen;
    for (std::size_t i : parts.train) seen.insert(i);
    for (std::size_t i : parts.test) REQUIRE(seen.insert(i).second);
    REQUIRE(seen.size() == n);
    REQUIRE(*seen.rbegin() == n - 1);
}

} // namespace

TEST_CASE("split sizes follow the fraction") {
    std::vector<int> labels(100, 1);
    for (std::size_t i = 0; i < 50; ++i) labels[i] = 2;
    auto parts = split(labels, {0.8, 1, false});
    REQUIRE(parts.train.size() == 80);
    REQUIRE(parts.test.size() == 20);
    check_partition(parts, 100);
}

TEST_CASE("stratified split keeps per-class proportions") {
    std::vector<int> labels;
    for (int i = 0; i < 50; ++i) labels.push_back(1);
    for (int i = 0; i < 50; ++i) labels.push_back(2);
    auto parts = split(labels, {0.8, 5, true});
    REQUIRE(parts.train.size() == 80);
    REQUIRE(parts.test.size() == 20);
    std::size_t train_a = 0, test_a = 0;
    for (std::size_t i : parts.train)
        if (labels[i] == 1) ++train_a;
    for (std::size_t i : parts.test)
        if (labels[i] == 1) ++test_a;
    REQUIRE(train_a == 40);
    REQUIRE(test_a == 10);
}

TEST_CASE("split is deterministic and partitions for arbitrary specs") {
    rng gen(3);
    for (int round = 0; round < 30; ++round) {
        std::vector<int> labels;
        std::size_t n = 2 + gen.next_below(60);
        for (std::size_t i = 0; i < n; ++i) labels.push_back(1 + static_cast<int>(gen.next_below(4)));
        split_spec spec{0.1 + 0.8 * gen.next_unit(), gen.next_u64(), gen.next_unit() < 0.5};
        auto p1 = split(labels, spec);
        auto p2 = split(labels, spec);
        REQUIRE(p1.train == p2.train);
        REQUIRE(p1.test == p2.test);
        check_partition(p1, n);
        REQUIRE(!p1.train.empty());
        REQUIRE(!p1.test.empty());
    }
}

TEST_CASE("stratified split keeps a test member for classes of two or more") {
    std::vector<int> labels = {1, 1, 1, 1, 1, 1, 1, 1, 2, 2};
    auto parts = split(labels, {0.9, 7, true});
    std::size_t test_b = 0;
    for (std::size_t i : parts.test)
        if (labels[i] == 2) ++test_b;
    REQUIRE(test_b >= 1);

    // singleton classes always train
    std::vector<int> with_single = {1, 1, 1, 1, 3};
    auto parts2 = split(with_single, {0.5, 9, true});
    bool three_in_train = false;
    for (std::size_t i : parts2.train)
        if (with_single[i] == 3) three_in_train = true;
    REQUIRE(three_in_train);
}

TEST_CASE("split guards") {
    REQUIRE(code_of([] { split({1}, {0.8, 0, true}); }) == errc::too_few_examples);
    REQUIRE(code_of([] { split({1, 2}, {1.5, 0, true}); }) == errc::invalid_argument);
}

TEST_CASE("accuracy arithmetic") {
    REQUIRE(accuracy({1, 2, 3}, {1, 2, 3}) == 1.0);
    REQUIRE(accuracy({1, 2, 1, 2}, {1, 2, 2, 1}) == 0.5);
    REQUIRE(code_of([] { accuracy({1}, {1, 2}); }) == errc::length_mismatch);
    REQUIRE(code_of([] { accuracy({}, {}); }) == errc::empty_input);
}

TEST_CASE("experiment on a separable dataset yields a perfect cell") {
    rng gen(8);
    feature_matrix x;
    x.kind = feature_kind::latent;
    x.cols = 2;
    label_vector y;
    for (int i = 0; i < 30; ++i) {
        double cls = i % 2 ? 1.0 : -1.0;
        x.values.push_back(cls * 5.0 + gen.next_real(-1, 1));
        x.values.push_back(cls * 5.0 + gen.next_real(-1, 1));
        y.labels.push_back(i % 2 ? 2 : 1);
        ++x.rows;
    }
    experiment_config config;
    config.algorithms = {algorithm::decision_tree};
    config.fractions = {0.8};
    config.seeds = {4};
    auto report = run_experiment(x, y, config);
    REQUIRE(report.cells.size() == 1);
    REQUIRE_FALSE(report.cells[0].failed);
    REQUIRE(report.cells[0].test_accuracy == 1.0);
    REQUIRE(report.cells[0].train_size + report.cells[0].test_size == 30);
}

TEST_CASE("multinomial nb on latent features is a FAILED cell, not a crash") {
    rng gen(12);
    feature_matrix x;
    x.kind = feature_kind::latent;
    x.cols = 3;
    label_vector y;
    for (int i = 0; i < 24; ++i) {
        for (int j = 0; j < 3; ++j) x.values.push_back(gen.next_real(-1, 1));
        y.labels.push_back(1 + i % 2);
        ++x.rows;
    }
    experiment_config config;
    config.algorithms = {algorithm::multinomial_nb, algorithm::gaussian_nb};
    config.fractions = {0.8, 0.7};
    config.seeds = {1};
    auto report = run_experiment(x, y, config);
    REQUIRE(report.cells.size() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
        REQUIRE(report.cells[i].failed);
        REQUIRE(report.cells[i].failure_reason == "NegativeOrNonCountFeatures");
    }
    for (std::size_t i = 2; i < 4; ++i) REQUIRE_FALSE(report.cells[i].failed);
}

TEST_CASE("report accuracy is recomputable from its confusion matrix") {
    rng gen(20);
    feature_matrix x;
    x.kind = feature_kind::latent;
    x.cols = 2;
    label_vector y;
    for (int i = 0; i < 60; ++i) {
        x.values.push_back(gen.next_real(-2, 2));
        x.values.push_back(gen.next_real(-2, 2));
        y.labels.push_back(1 + static_cast<int>(gen.next_below(3)));
        ++x.rows;
    }
    experiment_config config;
    config.algorithms = {algorithm::gaussian_nb, algorithm::decision_tree};
    config.fractions = {0.8, 0.6};
    config.seeds = {2, 3};
    auto report = run_experiment(x, y, config);
    REQUIRE(report.cells.size() == 8);
    const std::size_t c = report.class_set.size();
    for (const auto& cell : report.cells) {
        REQUIRE_FALSE(cell.failed);
        std::size_t diag = 0, total = 0;
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                total += cell.confusion[i * c + j];
                if (i == j) diag += cell.confusion[i * c + j];
            }
        REQUIRE(total == cell.test_size);
        REQUIRE(cell.test_accuracy ==
                Catch::Approx(static_cast<double>(diag) / static_cast<double>(total)).margin(1e-15));
    }
}

TEST_CASE("mean of per-split accuracies equals the arithmetic average") {
    rng gen(33);
    feature_matrix x;
    x.kind = feature_kind::latent;
    x.cols = 2;
    label_vector y;
    for (int i = 0; i < 40; ++i) {
        double cls = i % 2 ? 2.0 : -2.0;
        x.values.push_back(cls + gen.next_real(-2.0, 2.0));
        x.values.push_back(cls + gen.next_real(-2.0, 2.0));
        y.labels.push_back(i % 2 ? 1 : 2);
        ++x.rows;
    }
    experiment_config config;
    config.algorithms = {algorithm::gaussian_nb};
    config.seeds = {9};
    auto report = run_experiment(x, y, config);
    REQUIRE(report.cells.size() == 3);
    double sum = 0.0;
    for (const auto& cell : report.cells) sum += cell.test_accuracy;

    testutil::temp_dir dir("report");
    export_report_csv(report, dir.file("report.csv"));
    std::string text = testutil::read_file(dir.file("report.csv"));
    char expect[64];
    std::snprintf(expect, sizeof(expect), "%.6f", sum / 3.0);
    REQUIRE(text.find(std::string("split_mean,gaussian_nb,,9,OK,,,") + expect) != std::string::npos);
}

TEST_CASE("report files are byte-identical across reruns") {
    rng gen(44);
    feature_matrix x;
    x.kind = feature_kind::latent;
    x.cols = 2;
    label_vector y;
    for (int i = 0; i < 30; ++i) {
        x.values.push_back(gen.next_real(-1, 1));
        x.values.push_back(gen.next_real(-1, 1));
        y.labels.push_back(1 + i % 3);
        ++x.rows;
    }
    experiment_config config;
    config.seeds = {5, 6};
    auto r1 = run_experiment(x, y, config);
    auto r2 = run_experiment(x, y, config);
    testutil::temp_dir dir("report");
    export_report_csv(r1, dir.file("a.csv"));
    export_report_csv(r2, dir.file("b.csv"));
    export_report_summary(r1, dir.file("a.txt"));
    export_report_summary(r2, dir.file("b.txt"));
    REQUIRE(testutil::read_file(dir.file("a.csv")) == testutil::read_file(dir.file("b.csv")));
    REQUIRE(testutil::read_file(dir.file("a.txt")) == testutil::read_file(dir.file("b.txt")));
}
