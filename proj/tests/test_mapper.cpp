#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "cwemap/mapper.hpp"
#include "fixtures.hpp"
#include "helpers.hpp"

using namespace cwemap;
using testutil::make_synthetic_corpus;

namespace {

cwe_catalog tiny_catalog() {
    cwe_catalog catalog;
    cwe_weakness w79{79, "XSS", "improper neutralization of script markup during web page generation", {137}};
    cwe_weakness w89{89, "SQL Injection", "improper neutralization of special elements in sql commands", {137}};
    catalog.weaknesses.emplace(79, w79);
    catalog.weaknesses.emplace(89, w89);
    cwe_category cat{137, "Data Neutralization Issues", {79, 89}};
    catalog.categories.emplace(137, cat);
    return catalog;
}

std::vector<requirement> reqs_from_texts(const std::vector<std::string>& texts) {
    std::vector<requirement> reqs;
    for (std::size_t i = 0; i < texts.size(); ++i) reqs.push_back({i, "p", texts[i], "F"});
    return reqs;
}

} // namespace

TEST_CASE("joint space stacks weaknesses before requirements") {
    auto catalog = tiny_catalog();
    auto reqs = reqs_from_texts({"sanitize sql commands before execution",
                                 "encode markup in generated web page output",
                                 "log every failed login attempt"});
    pipeline_params params;
    params.k = 4;
    auto space = build_joint_space(catalog, reqs, params);

    REQUIRE(space.model.doc_count() == 5);
    REQUIRE(space.weakness_ids == std::vector<int>{79, 89});
    REQUIRE(space.weakness_vecs.size() == 2);
    REQUIRE(space.requirement_vecs.size() == 3);
    REQUIRE(space.effective_k == 4);

    // identical requirement texts project identically
    auto dup = reqs_from_texts({"cache cleared daily", "cache cleared daily"});
    auto space2 = build_joint_space(catalog, dup, params);
    REQUIRE(space2.requirement_vecs[0] == space2.requirement_vecs[1]);
}

TEST_CASE("requirement equal to a weakness description maps to it with similarity 1") {
    auto catalog = tiny_catalog();
    auto reqs = reqs_from_texts({"improper neutralization of special elements in sql commands",
                                 "the product shall export weekly reports"});
    pipeline_params params;
    params.k = 3;
    auto space = build_joint_space(catalog, reqs, params);
    auto match = map_requirement(space.requirement_vecs[0], space.weakness_vecs, space.weakness_ids, catalog);
    REQUIRE(match.cwe_id == 89);
    REQUIRE(match.category_id == 137);
    REQUIRE(match.similarity == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("hand-built latent vectors: argmax cosine with brute-force check") {
    auto catalog = tiny_catalog();
    // third candidate is exactly parallel to the query
    std::vector<latent_vector> weakness_vecs = {{1.0, 0.0}, {0.0, 1.0}, {0.6, 0.8}};
    std::vector<int> ids = {79, 89, 90};
    cwe_weakness w90{90, "Third", "placeholder text", {137}};
    catalog.weaknesses.emplace(90, w90);
    catalog.categories.at(137).member_ids.insert(90);

    latent_vector query = {0.6, 0.8};
    double best = -2.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < weakness_vecs.size(); ++i) {
        double s = cosine(query, weakness_vecs[i]);
        if (s > best) { best = s; best_idx = i; }
    }
    REQUIRE(best_idx == 2);

    auto match = map_requirement(query, weakness_vecs, ids, catalog);
    REQUIRE(match.cwe_id == 90);
    REQUIRE(match.similarity == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("equal similarity breaks to the smaller cwe id") {
    auto catalog = tiny_catalog();
    std::vector<latent_vector> vecs = {{1.0, 0.0}, {1.0, 0.0}};
    auto match = map_requirement({2.0, 0.0}, vecs, {79, 89}, catalog);
    REQUIRE(match.cwe_id == 79);
}

TEST_CASE("zero-norm requirement maps to the smallest id with similarity 0") {
    auto catalog = tiny_catalog();
    std::vector<latent_vector> vecs = {{1.0, 0.0}, {0.0, 1.0}};
    auto match = map_requirement({0.0, 0.0}, vecs, {79, 89}, catalog);
    REQUIRE(match.cwe_id == 79);
    REQUIRE(match.similarity == 0.0);
}

TEST_CASE("training set export, flag report and reimport") {
    auto catalog = tiny_catalog();
    auto reqs = reqs_from_texts({"sanitize sql commands before execution",
                                 "encode markup in generated page output",
                                 "the meaning of unrelated words entirely",
                                 "neutralization of special elements in commands",
                                 "place navigation controls on the left side",
                                 "improper neutralization of script markup on page",
                                 "archive data monthly for compliance",
                                 "validate special characters in sql statements",
                                 "render markup free of script content",
                                 "special elements never reach sql commands"});
    pipeline_params params;
    params.k = 6;
    auto ds = build_training_set(catalog, reqs, params);
    REQUIRE(ds.examples.size() == 10);
    for (std::size_t i = 0; i < reqs.size(); ++i) REQUIRE(ds.examples[i].requirement_text == reqs[i].text);
    for (const auto& ex : ds.examples)
        REQUIRE(ex.category_id == resolve_category(catalog, ex.matched_cwe_id));

    testutil::temp_dir dir("mapper");
    export_training_set(ds, dir.file("train.csv"));
    auto back = import_training_set(dir.file("train.csv"));
    REQUIRE(back.examples.size() == ds.examples.size());
    for (std::size_t i = 0; i < ds.examples.size(); ++i) {
        REQUIRE(back.examples[i].requirement_text == ds.examples[i].requirement_text);
        REQUIRE(back.examples[i].matched_description == ds.examples[i].matched_description);
        REQUIRE(back.examples[i].matched_cwe_id == ds.examples[i].matched_cwe_id);
        REQUIRE(back.examples[i].category_id == ds.examples[i].category_id);
        REQUIRE(back.examples[i].similarity == Catch::Approx(ds.examples[i].similarity).margin(1e-9));
    }

    // byte-identical re-export
    export_training_set(ds, dir.file("again.csv"));
    REQUIRE(testutil::read_file(dir.file("train.csv")) == testutil::read_file(dir.file("again.csv")));

    // flag report lists exactly the sub-threshold rows
    export_flag_report(ds, dir.file("flags.csv"));
    std::string flags = testutil::read_file(dir.file("flags.csv"));
    for (std::size_t i = 0; i < ds.examples.size(); ++i) {
        bool listed = flags.find("\n" + std::to_string(i) + ",") != std::string::npos;
        REQUIRE(listed == (ds.examples[i].similarity < low_similarity_threshold));
    }

    // header line: exactly the contracted columns
    std::string text = testutil::read_file(dir.file("train.csv"));
    REQUIRE(text.rfind("requirement_text,cwe_description,cwe_id,category_id,similarity\n", 0) == 0);
}

TEST_CASE("import rejects a missing column") {
    testutil::temp_dir dir("mapper");
    testutil::write_file(dir.file("bad.csv"),
                         "requirement_text,cwe_description,category_id,similarity\na,b,1,0.5\n");
    try {
        import_training_set(dir.file("bad.csv"));
        FAIL("expected schema_mismatch");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::schema_mismatch);
    }

    testutil::write_file(dir.file("renamed.csv"),
                         "requirement_text,cwe_description,weakness,category_id,similarity\na,b,1,2,0.5\n");
    try {
        import_training_set(dir.file("renamed.csv"));
        FAIL("expected schema_mismatch");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::schema_mismatch);
        REQUIRE(std::string(e.what()).find("cwe_id") != std::string::npos);
    }
}

TEST_CASE("synthetic corpus: mapping recovers at least 95 percent of categories") {
    auto corpus = make_synthetic_corpus(2024);
    pipeline_params params;
    params.k = 8;
    auto ds = build_training_set(corpus.catalog, corpus.requirements, params);

    std::size_t hits = 0;
    for (std::size_t i = 0; i < ds.examples.size(); ++i)
        if (ds.examples[i].category_id == corpus.true_category[i]) ++hits;
    REQUIRE(ds.examples.size() == 80);
    REQUIRE(static_cast<double>(hits) / static_cast<double>(ds.examples.size()) >= 0.95);
}

TEST_CASE("scaling requirement vectors never changes the matched weakness") {
    auto corpus = make_synthetic_corpus(77);
    pipeline_params params;
    params.k = 8;
    auto space = build_joint_space(corpus.catalog, corpus.requirements, params);
    for (std::size_t i = 0; i < space.requirement_vecs.size(); i += 7) {
        auto match = map_requirement(space.requirement_vecs[i], space.weakness_vecs, space.weakness_ids,
                                     corpus.catalog);
        for (double alpha : {0.001, 0.5, 3.0, 1000.0}) {
            latent_vector scaled = space.requirement_vecs[i];
            for (double& v : scaled) v *= alpha;
            auto match2 = map_requirement(scaled, space.weakness_vecs, space.weakness_ids, corpus.catalog);
            REQUIRE(match2.cwe_id == match.cwe_id);
        }
    }
}

TEST_CASE("rerun with the same parameters exports byte-identical csv") {
    auto corpus = make_synthetic_corpus(11);
    pipeline_params params;
    params.k = 8;
    auto d1 = build_training_set(corpus.catalog, corpus.requirements, params);
    auto d2 = build_training_set(corpus.catalog, corpus.requirements, params);
    testutil::temp_dir dir("mapper");
    export_training_set(d1, dir.file("a.csv"));
    export_training_set(d2, dir.file("b.csv"));
    REQUIRE(testutil::read_file(dir.file("a.csv")) == testutil::read_file(dir.file("b.csv")));
    REQUIRE(d1.provenance == d2.provenance);

    pipeline_params other = params;
    other.k = 12;
    auto d3 = build_training_set(corpus.catalog, corpus.requirements, other);
    REQUIRE(d3.provenance.at("k_effective") != d1.provenance.at("k_effective"));
}
