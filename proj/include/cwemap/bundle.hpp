#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "cwemap/binio.hpp"
#include "cwemap/catalog.hpp"
#include "cwemap/lsa.hpp"
#include "cwemap/text.hpp"

#include <json.hpp>

namespace cwemap {

inline constexpr char vocab_magic[9] = "CWEMVOC\0";
inline constexpr std::uint8_t vocab_format_version = 1;

inline void save_vocabulary(const vocabulary& vocab, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out.write(vocab_magic, 8);
    write_u8(out, vocab_format_version);
    write_u64(out, vocab.total_docs);
    write_u32(out, static_cast<std::uint32_t>(vocab.term_to_index.size()));
    for (const auto& [term, idx] : vocab.term_to_index) {
        write_str(out, term);
        write_u32(out, static_cast<std::uint32_t>(idx));
        write_u64(out, vocab.doc_freq[idx]);
    }
    if (!out) fail(errc::io_error, "write failed: " + path);
}

inline vocabulary load_vocabulary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    expect_magic(in, vocab_magic, vocab_format_version, "vocabulary");
    vocabulary vocab;
    vocab.total_docs = read_u64(in);
    std::uint32_t count = read_u32(in);
    vocab.doc_freq.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::string term = read_str(in);
        std::uint32_t idx = read_u32(in);
        std::uint64_t df = read_u64(in);
        if (idx >= count) fail(errc::io_error, path + ": index out of range");
        vocab.term_to_index.emplace(std::move(term), idx);
        vocab.doc_freq[idx] = df;
    }
    if (vocab.term_to_index.size() != count) fail(errc::io_error, path + ": duplicate terms");
    return vocab;
}

inline void save_provenance(const std::map<std::string, std::string>& provenance, const std::string& path) {
    nlohmann::json j(provenance);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out << j.dump(2) << '\n';
}

inline std::map<std::string, std::string> load_provenance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::malformed_row, path + ": " + e.what());
    }
    std::map<std::string, std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    return out;
}

// Everything cmd_predict needs to reproduce the feature space: vocabulary,
// stopword list, latent model and the category id -> name table.
struct prediction_bundle {
    vocabulary vocab;
    std::set<std::string> stopwords;
    latent_model lsa;
    std::map<int, std::string> category_names;
    std::map<std::string, std::string> provenance;
};

inline void save_bundle(const prediction_bundle& bundle, const std::string& dir) {
    std::filesystem::create_directories(dir);
    save_vocabulary(bundle.vocab, dir + "/vocabulary.bin");
    save_lsa_model(bundle.lsa, dir + "/lsa.bin");
    {
        std::ofstream out(dir + "/stopwords.txt", std::ios::binary);
        if (!out) fail(errc::io_error, "cannot write " + dir + "/stopwords.txt");
        for (const auto& w : bundle.stopwords) out << w << '\n';
    }
    {
        std::ofstream out(dir + "/categories.csv", std::ios::binary);
        if (!out) fail(errc::io_error, "cannot write " + dir + "/categories.csv");
        out << "CategoryID,CategoryName\n";
        for (const auto& [id, name] : bundle.category_names)
            out << csv_join({std::to_string(id), name});
    }
    save_provenance(bundle.provenance, dir + "/provenance.json");
}

inline prediction_bundle load_bundle(const std::string& dir) {
    prediction_bundle bundle;
    bundle.vocab = load_vocabulary(dir + "/vocabulary.bin");
    bundle.lsa = load_lsa_model(dir + "/lsa.bin");
    bundle.stopwords = load_stopwords(dir + "/stopwords.txt");
    auto records = read_csv_file(dir + "/categories.csv");
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& f = records[r].fields;
        if (f.size() < 2) fail(errc::malformed_row, dir + "/categories.csv: wrong field count");
        bundle.category_names[detail::parse_positive_int(f[0], records[r].line, "category id")] = f[1];
    }
    bundle.provenance = load_provenance(dir + "/provenance.json");
    return bundle;
}

} // namespace cwemap
