#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cwemap/csv.hpp"
#include "cwemap/errors.hpp"

namespace cwemap {

struct cwe_weakness {
    int id = 0;
    std::string name;
    std::string description;
    std::set<int> category_ids;

    bool operator==(const cwe_weakness&) const = default;
};

struct cwe_category {
    int id = 0;
    std::string name;
    std::set<int> member_ids;

    bool operator==(const cwe_category&) const = default;
};

// Weaknesses and categories keyed by id; membership is kept consistent in
// both directions by construction.
struct cwe_catalog {
    std::map<int, cwe_weakness> weaknesses;
    std::map<int, cwe_category> categories;

    bool operator==(const cwe_catalog&) const = default;
};

struct requirement {
    std::size_t row_index = 0;
    std::string project_id;
    std::string text;
    std::string original_class;

    bool operator==(const requirement&) const = default;
};

struct column_map {
    std::string project_id = "ProjectID";
    std::string text = "RequirementText";
    std::string original_class = "Class";
};

namespace detail {

inline int parse_positive_int(const std::string& s, std::size_t line, const char* what) {
    std::string t = trim(s);
    if (t.empty() || t.size() > 9)
        fail(errc::malformed_row, "line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
    long v = 0;
    for (char c : t) {
        if (c < '0' || c > '9')
            fail(errc::malformed_row, "line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
        v = v * 10 + (c - '0');
    }
    if (v <= 0)
        fail(errc::malformed_row, "line " + std::to_string(line) + ": " + what + " must be positive");
    return static_cast<int>(v);
}

inline std::size_t find_column(const csv_record& header, const std::string& name) {
    for (std::size_t i = 0; i < header.fields.size(); ++i)
        if (trim(header.fields[i]) == name) return i;
    fail(errc::missing_column, "header has no column '" + name + "'");
}

} // namespace detail

// Weakness file: ID,Name,Description. Category file: CategoryID,CategoryName,MemberID,
// one row per membership. Rejects duplicate weakness ids and memberships that
// reference unknown weaknesses.
inline cwe_catalog load_cwe_catalog(const std::string& weakness_path, const std::string& category_path) {
    cwe_catalog catalog;

    {
        auto records = read_csv_file(weakness_path);
        if (records.empty()) fail(errc::malformed_row, weakness_path + ": missing header row");
        const auto& header = records[0];
        std::size_t c_id = detail::find_column(header, "ID");
        std::size_t c_name = detail::find_column(header, "Name");
        std::size_t c_desc = detail::find_column(header, "Description");
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& rec = records[r];
            std::size_t need = std::max({c_id, c_name, c_desc}) + 1;
            if (rec.fields.size() < need)
                fail(errc::malformed_row, "line " + std::to_string(rec.line) + ": expected at least " +
                                              std::to_string(need) + " fields");
            cwe_weakness w;
            w.id = detail::parse_positive_int(rec.fields[c_id], rec.line, "weakness id");
            w.name = trim(rec.fields[c_name]);
            w.description = trim(rec.fields[c_desc]);
            if (w.name.empty())
                fail(errc::malformed_row, "line " + std::to_string(rec.line) + ": empty weakness name");
            if (w.description.empty())
                fail(errc::malformed_row, "line " + std::to_string(rec.line) + ": empty weakness description");
            int id = w.id;
            if (!catalog.weaknesses.emplace(id, std::move(w)).second)
                fail(errc::duplicate_id, "weakness id " + std::to_string(id) + " appears twice");
        }
    }

    {
        auto records = read_csv_file(category_path);
        if (records.empty()) fail(errc::malformed_row, category_path + ": missing header row");
        const auto& header = records[0];
        std::size_t c_id = detail::find_column(header, "CategoryID");
        std::size_t c_name = detail::find_column(header, "CategoryName");
        std::size_t c_member = detail::find_column(header, "MemberID");
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& rec = records[r];
            std::size_t need = std::max({c_id, c_name, c_member}) + 1;
            if (rec.fields.size() < need)
                fail(errc::malformed_row, "line " + std::to_string(rec.line) + ": expected at least " +
                                              std::to_string(need) + " fields");
            int cat_id = detail::parse_positive_int(rec.fields[c_id], rec.line, "category id");
            std::string cat_name = trim(rec.fields[c_name]);
            int member = detail::parse_positive_int(rec.fields[c_member], rec.line, "member id");
            if (cat_name.empty())
                fail(errc::malformed_row, "line " + std::to_string(rec.line) + ": empty category name");
            auto wit = catalog.weaknesses.find(member);
            if (wit == catalog.weaknesses.end())
                fail(errc::dangling_membership, "category " + std::to_string(cat_id) +
                                                    " references unknown weakness id " + std::to_string(member));
            auto [cit, inserted] = catalog.categories.try_emplace(cat_id);
            if (inserted) {
                cit->second.id = cat_id;
                cit->second.name = cat_name;
            } else if (cit->second.name != cat_name) {
                fail(errc::malformed_row, "line " + std::to_string(rec.line) + ": category " +
                                              std::to_string(cat_id) + " renamed to '" + cat_name + "'");
            }
            cit->second.member_ids.insert(member);
            wit->second.category_ids.insert(cat_id);
        }
    }

    return catalog;
}

// Writes the two-file format back out; load(save(catalog)) == catalog.
inline void save_cwe_catalog(const cwe_catalog& catalog, const std::string& weakness_path,
                             const std::string& category_path) {
    std::ofstream wout(weakness_path, std::ios::binary);
    if (!wout) fail(errc::io_error, "cannot write " + weakness_path);
    wout << "ID,Name,Description\n";
    for (const auto& [id, w] : catalog.weaknesses)
        wout << csv_join({std::to_string(id), w.name, w.description});

    std::ofstream cout_(category_path, std::ios::binary);
    if (!cout_) fail(errc::io_error, "cannot write " + category_path);
    cout_ << "CategoryID,CategoryName,MemberID\n";
    for (const auto& [cid, cat] : catalog.categories)
        for (int member : cat.member_ids)
            cout_ << csv_join({std::to_string(cid), cat.name, std::to_string(member)});
}

// One requirement per data row, in file order, row_index 0..N-1.
inline std::vector<requirement> load_requirements(const std::string& path, const column_map& columns = {}) {
    auto records = read_csv_file(path);
    if (records.empty()) fail(errc::malformed_row, path + ": missing header row");
    const auto& header = records[0];
    std::size_t c_project = detail::find_column(header, columns.project_id);
    std::size_t c_text = detail::find_column(header, columns.text);
    std::size_t c_class = detail::find_column(header, columns.original_class);

    std::vector<requirement> out;
    out.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        std::size_t need = std::max({c_project, c_text, c_class}) + 1;
        if (rec.fields.size() < need)
            fail(errc::malformed_row,
                 "line " + std::to_string(rec.line) + ": expected at least " + std::to_string(need) + " fields");
        requirement req;
        req.row_index = out.size();
        req.project_id = trim(rec.fields[c_project]);
        req.text = trim(rec.fields[c_text]);
        req.original_class = trim(rec.fields[c_class]);
        if (req.text.empty())
            fail(errc::empty_text, "line " + std::to_string(rec.line) + ": requirement text is empty");
        out.push_back(std::move(req));
    }
    return out;
}

// Single category label for a weakness; multi-category weaknesses resolve
// to the numerically smallest category id.
inline int resolve_category(const cwe_catalog& catalog, int cwe_id) {
    auto it = catalog.weaknesses.find(cwe_id);
    if (it == catalog.weaknesses.end())
        fail(errc::unknown_cwe_id, "no weakness with id " + std::to_string(cwe_id));
    if (it->second.category_ids.empty())
        fail(errc::uncategorized, "weakness " + std::to_string(cwe_id) + " has no category");
    return *it->second.category_ids.begin();
}

} // namespace cwemap
