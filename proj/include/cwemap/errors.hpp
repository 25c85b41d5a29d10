#pragma once

#include <stdexcept>
#include <string>

namespace cwemap {

// Every failure the library can signal. Codes are stable identifiers:
// tests and the CLI match on them, messages are for humans.
enum class errc {
    missing_file,
    malformed_row,
    duplicate_id,
    dangling_membership,
    missing_column,
    empty_text,
    unknown_cwe_id,
    uncategorized,
    empty_corpus,
    empty_vocabulary,
    rank_too_large,
    zero_matrix,
    dimension_mismatch,
    degenerate_labels,
    negative_or_non_count_features,
    length_mismatch,
    empty_input,
    too_few_examples,
    io_error,
    schema_mismatch,
    version_mismatch,
    refuse_overwrite,
    unknown_algorithm,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::missing_file: return "MissingFile";
    case errc::malformed_row: return "MalformedRow";
    case errc::duplicate_id: return "DuplicateId";
    case errc::dangling_membership: return "DanglingMembership";
    case errc::missing_column: return "MissingColumn";
    case errc::empty_text: return "EmptyText";
    case errc::unknown_cwe_id: return "UnknownCweId";
    case errc::uncategorized: return "Uncategorized";
    case errc::empty_corpus: return "EmptyCorpus";
    case errc::empty_vocabulary: return "EmptyVocabulary";
    case errc::rank_too_large: return "RankTooLarge";
    case errc::zero_matrix: return "ZeroMatrix";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::degenerate_labels: return "DegenerateLabels";
    case errc::negative_or_non_count_features: return "NegativeOrNonCountFeatures";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::empty_input: return "EmptyInput";
    case errc::too_few_examples: return "TooFewExamples";
    case errc::io_error: return "IoError";
    case errc::schema_mismatch: return "SchemaMismatch";
    case errc::version_mismatch: return "VersionMismatch";
    case errc::refuse_overwrite: return "RefuseOverwrite";
    case errc::unknown_algorithm: return "UnknownAlgorithm";
    case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace cwemap
