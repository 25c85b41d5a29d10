#pragma once

#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cwemap/catalog.hpp"
#include "cwemap/classifiers/types.hpp"
#include "cwemap/csv.hpp"
#include "cwemap/hash.hpp"
#include "cwemap/lsa.hpp"
#include "cwemap/text.hpp"

namespace cwemap {

inline constexpr const char* tool_version = "0.1.0";

// Rows whose best match scores below this go to the side report.
inline constexpr double low_similarity_threshold = 0.1;

struct pipeline_params {
    std::size_t k = 100;
    std::uint64_t seed = 42;
    weighting weight = weighting::raw_counts;
    std::size_t min_df = 1;
    std::set<std::string> stopwords = default_stopwords();
};

struct labeled_example {
    std::string requirement_text;
    int matched_cwe_id = 0;
    std::string matched_description;
    int category_id = 0;
    double similarity = 0.0;
};

struct labeled_dataset {
    std::vector<labeled_example> examples; // requirement row order
    std::map<std::string, std::string> provenance;
};

// One vocabulary and one latent space fitted on the union corpus: weakness
// descriptions (ascending CWE id) followed by requirement texts (row order).
// Cosine across two independently fitted spaces would be meaningless.
struct joint_space {
    vocabulary vocab;
    latent_model model;
    std::vector<int> weakness_ids;           // ascending
    std::vector<latent_vector> weakness_vecs; // aligned with weakness_ids
    std::vector<latent_vector> requirement_vecs;
    std::size_t effective_k = 0;
};

inline joint_space build_joint_space(const cwe_catalog& catalog, const std::vector<requirement>& reqs,
                                     const pipeline_params& params) {
    if (catalog.weaknesses.empty()) fail(errc::empty_corpus, "catalog has no weaknesses");
    if (reqs.empty()) fail(errc::empty_corpus, "no requirements");

    std::vector<std::vector<std::string>> docs;
    docs.reserve(catalog.weaknesses.size() + reqs.size());
    joint_space space;
    for (const auto& [id, w] : catalog.weaknesses) {
        space.weakness_ids.push_back(id);
        docs.push_back(tokenize(w.description, params.stopwords));
    }
    for (const auto& r : reqs) docs.push_back(tokenize(r.text, params.stopwords));

    space.vocab = build_vocabulary(docs, params.min_df);
    term_doc_matrix m = build_matrix(docs, space.vocab, params.weight);

    // Default rank, capped so the factorization stays strictly truncated.
    std::size_t cap = std::min(m.rows, m.cols) > 1 ? std::min(m.rows, m.cols) - 1 : 1;
    space.effective_k = std::min(params.k, cap);
    space.model = fit_lsa(m, space.effective_k, params.seed);

    const std::size_t n_weak = space.weakness_ids.size();
    for (std::size_t i = 0; i < n_weak; ++i) {
        latent_vector v(space.effective_k);
        for (std::size_t j = 0; j < space.effective_k; ++j) v[j] = space.model.doc_factors(i, j);
        space.weakness_vecs.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        latent_vector v(space.effective_k);
        for (std::size_t j = 0; j < space.effective_k; ++j) v[j] = space.model.doc_factors(n_weak + i, j);
        space.requirement_vecs.push_back(std::move(v));
    }
    return space;
}

struct match_result {
    int cwe_id = 0;
    int category_id = 0;
    double similarity = 0.0;
};

// Argmax-cosine weakness, ties to the smallest CWE id. A zero-norm
// requirement scores 0 against everything and lands on the smallest id.
inline match_result map_requirement(const latent_vector& req_vec, const std::vector<latent_vector>& weakness_vecs,
                                    const std::vector<int>& weakness_ids, const cwe_catalog& catalog) {
    if (weakness_vecs.empty()) fail(errc::empty_corpus, "no weakness vectors");
    std::size_t best = 0;
    double best_sim = cosine(req_vec, weakness_vecs[0]);
    for (std::size_t i = 1; i < weakness_vecs.size(); ++i) {
        double sim = cosine(req_vec, weakness_vecs[i]);
        if (sim > best_sim) { best_sim = sim; best = i; }
    }
    match_result r;
    r.cwe_id = weakness_ids[best];
    r.category_id = resolve_category(catalog, r.cwe_id);
    r.similarity = best_sim;
    return r;
}

inline labeled_dataset build_training_set(const cwe_catalog& catalog, const std::vector<requirement>& reqs,
                                          const pipeline_params& params, joint_space* space_out = nullptr) {
    joint_space space = build_joint_space(catalog, reqs, params);

    labeled_dataset ds;
    ds.examples.reserve(reqs.size());
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        match_result m = map_requirement(space.requirement_vecs[i], space.weakness_vecs,
                                         space.weakness_ids, catalog);
        labeled_example ex;
        ex.requirement_text = reqs[i].text;
        ex.matched_cwe_id = m.cwe_id;
        ex.matched_description = catalog.weaknesses.at(m.cwe_id).description;
        ex.category_id = m.category_id;
        ex.similarity = m.similarity;
        ds.examples.push_back(std::move(ex));
    }

    fnv1a catalog_hash;
    for (const auto& [id, w] : catalog.weaknesses) {
        catalog_hash.update_u64(static_cast<std::uint64_t>(id));
        catalog_hash.update(w.name);
        catalog_hash.update(w.description);
        for (int c : w.category_ids) catalog_hash.update_u64(static_cast<std::uint64_t>(c));
    }
    fnv1a req_hash;
    for (const auto& r : reqs) req_hash.update(r.text).update("\n");

    ds.provenance["tool_version"] = tool_version;
    ds.provenance["vocab_hash"] = space.vocab.content_hash();
    ds.provenance["stopword_hash"] = stopword_hash(params.stopwords);
    ds.provenance["k_requested"] = std::to_string(params.k);
    ds.provenance["k_effective"] = std::to_string(space.effective_k);
    ds.provenance["seed"] = std::to_string(params.seed);
    ds.provenance["weighting"] = weighting_name(params.weight);
    ds.provenance["min_df"] = std::to_string(params.min_df);
    ds.provenance["catalog_hash"] = catalog_hash.hex();
    ds.provenance["catalog_weaknesses"] = std::to_string(catalog.weaknesses.size());
    ds.provenance["catalog_categories"] = std::to_string(catalog.categories.size());
    ds.provenance["requirements"] = std::to_string(reqs.size());
    ds.provenance["requirements_hash"] = req_hash.hex();
    if (space_out) *space_out = std::move(space);
    return ds;
}

namespace detail {

inline std::string format_similarity(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

} // namespace detail

inline const std::vector<std::string> training_set_columns = {
    "requirement_text", "cwe_description", "cwe_id", "category_id", "similarity"};

inline void export_training_set(const labeled_dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out << csv_join(training_set_columns);
    for (const auto& ex : ds.examples)
        out << csv_join({ex.requirement_text, ex.matched_description, std::to_string(ex.matched_cwe_id),
                         std::to_string(ex.category_id), detail::format_similarity(ex.similarity)});
    if (!out) fail(errc::io_error, "write failed: " + path);
}

inline labeled_dataset import_training_set(const std::string& path) {
    auto records = read_csv_file(path);
    if (records.empty()) fail(errc::schema_mismatch, path + ": empty file");
    const auto& header = records[0].fields;
    if (header.size() != training_set_columns.size())
        fail(errc::schema_mismatch, path + ": expected " + std::to_string(training_set_columns.size()) +
                                        " columns, found " + std::to_string(header.size()));
    for (std::size_t i = 0; i < training_set_columns.size(); ++i)
        if (trim(header[i]) != training_set_columns[i])
            fail(errc::schema_mismatch, path + ": column " + std::to_string(i) + " must be '" +
                                            training_set_columns[i] + "', found '" + header[i] + "'");
    labeled_dataset ds;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& f = records[r].fields;
        if (f.size() != training_set_columns.size())
            fail(errc::malformed_row, "line " + std::to_string(records[r].line) + ": wrong field count");
        labeled_example ex;
        ex.requirement_text = f[0];
        ex.matched_description = f[1];
        ex.matched_cwe_id = detail::parse_positive_int(f[2], records[r].line, "cwe id");
        ex.category_id = detail::parse_positive_int(f[3], records[r].line, "category id");
        try {
            ex.similarity = std::stod(f[4]);
        } catch (const std::exception&) {
            fail(errc::malformed_row, "line " + std::to_string(records[r].line) + ": bad similarity '" + f[4] + "'");
        }
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

// Side report of dubious labels: rows whose best similarity is below 0.1.
inline void export_flag_report(const labeled_dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out << "row_index,similarity\n";
    for (std::size_t i = 0; i < ds.examples.size(); ++i)
        if (ds.examples[i].similarity < low_similarity_threshold)
            out << i << ',' << detail::format_similarity(ds.examples[i].similarity) << '\n';
}

// Feature extraction for the classifier stage. Latent classifier features
// are the singular-value-scaled document coordinates (term_factors^T * x,
// the usual LSA transform); the mapper's cosine space stays unscaled.
inline latent_vector latent_feature_row(const latent_model& model, const sparse_vector& v) {
    if (v.dimension != model.vocab_dimension())
        fail(errc::dimension_mismatch, "vector dimension " + std::to_string(v.dimension) +
                                           " != vocabulary size " + std::to_string(model.vocab_dimension()));
    latent_vector coords(model.k, 0.0);
    for (const auto& [idx, val] : v.entries)
        for (std::size_t j = 0; j < model.k; ++j) coords[j] += val * model.term_factors(idx, j);
    return coords;
}

inline feature_matrix latent_features(const std::vector<latent_vector>& vecs) {
    feature_matrix x;
    x.kind = feature_kind::latent;
    x.rows = vecs.size();
    x.cols = vecs.empty() ? 0 : vecs[0].size();
    x.values.reserve(x.rows * x.cols);
    for (const auto& v : vecs) x.values.insert(x.values.end(), v.begin(), v.end());
    return x;
}

struct featurization {
    feature_matrix features; // one row per example
    label_vector labels;     // category ids
    vocabulary vocab;        // joint vocabulary the features came from
    std::size_t effective_k = 0;
};

inline feature_matrix bow_features(const std::vector<std::vector<std::string>>& docs, const vocabulary& vocab,
                                   feature_kind kind) {
    if (kind == feature_kind::latent) fail(errc::invalid_argument, "latent features need an LSA model");
    term_doc_matrix m = build_matrix(docs, vocab,
                                     kind == feature_kind::tfidf ? weighting::tfidf : weighting::raw_counts);
    feature_matrix x;
    x.kind = kind;
    x.rows = m.rows;
    x.cols = m.cols;
    x.values.assign(m.rows * m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.data[i].entries) x.values[i * m.cols + j] = v;
    return x;
}

// Rebuilds the feature space from an exported training set: the joint corpus
// is the distinct matched weakness descriptions (ascending CWE id) followed
// by the requirement texts in row order, mirroring build_joint_space.
inline featurization featurize_dataset(const labeled_dataset& ds, feature_kind kind,
                                       const pipeline_params& params) {
    if (ds.examples.empty()) fail(errc::empty_input, "dataset has no examples");

    std::map<int, std::string> descriptions;
    for (const auto& ex : ds.examples) descriptions.emplace(ex.matched_cwe_id, ex.matched_description);

    std::vector<std::vector<std::string>> joint_docs;
    for (const auto& [id, desc] : descriptions) joint_docs.push_back(tokenize(desc, params.stopwords));
    std::vector<std::vector<std::string>> req_docs;
    for (const auto& ex : ds.examples) {
        req_docs.push_back(tokenize(ex.requirement_text, params.stopwords));
        joint_docs.push_back(req_docs.back());
    }

    featurization out;
    out.vocab = build_vocabulary(joint_docs, params.min_df);
    for (const auto& ex : ds.examples) out.labels.labels.push_back(ex.category_id);

    if (kind == feature_kind::latent) {
        term_doc_matrix m = build_matrix(joint_docs, out.vocab, params.weight);
        std::size_t cap = std::min(m.rows, m.cols) > 1 ? std::min(m.rows, m.cols) - 1 : 1;
        out.effective_k = std::min(params.k, cap);
        latent_model model = fit_lsa(m, out.effective_k, params.seed);
        std::vector<latent_vector> vecs;
        const std::size_t offset = descriptions.size();
        for (std::size_t i = 0; i < ds.examples.size(); ++i)
            vecs.push_back(latent_feature_row(model, m.data[offset + i]));
        out.features = latent_features(vecs);
    } else {
        out.features = bow_features(req_docs, out.vocab, kind);
    }
    return out;
}

} // namespace cwemap
