#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "cwemap/catalog.hpp"
#include "helpers.hpp"

using namespace cwemap;
using testutil::temp_dir;
using testutil::write_file;

namespace {

const char* weaknesses_csv =
    "ID,Name,Description\n"
    "79,XSS,Improper neutralization of input during web page generation\n"
    "89,SQL Injection,Improper neutralization of special elements in SQL commands\n";

const char* categories_csv =
    "CategoryID,CategoryName,MemberID\n"
    "137,Data Neutralization Issues,79\n"
    "137,Data Neutralization Issues,89\n";

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    throw std::logic_error("expected a cwemap::error");
}

} // namespace

TEST_CASE("two weaknesses one category") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), weaknesses_csv);
    write_file(dir.file("c.csv"), categories_csv);
    auto catalog = load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv"));

    REQUIRE(catalog.weaknesses.size() == 2);
    REQUIRE(catalog.categories.size() == 1);
    REQUIRE(catalog.weaknesses.at(79).category_ids == std::set<int>{137});
    REQUIRE(catalog.categories.at(137).member_ids == std::set<int>{79, 89});
    REQUIRE(catalog.weaknesses.at(89).name == "SQL Injection");
}

TEST_CASE("membership is consistent both ways") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), weaknesses_csv);
    write_file(dir.file("c.csv"), categories_csv);
    auto catalog = load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv"));
    for (const auto& [wid, w] : catalog.weaknesses)
        for (int cid : w.category_ids) REQUIRE(catalog.categories.at(cid).member_ids.count(wid) == 1);
    for (const auto& [cid, c] : catalog.categories)
        for (int wid : c.member_ids) REQUIRE(catalog.weaknesses.at(wid).category_ids.count(cid) == 1);
}

TEST_CASE("header-only weakness file") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), "ID,Name,Description\n");
    write_file(dir.file("c.csv"), "CategoryID,CategoryName,MemberID\n");
    auto catalog = load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv"));
    REQUIRE(catalog.weaknesses.empty());
    REQUIRE(catalog.categories.empty());

    write_file(dir.file("c2.csv"), "CategoryID,CategoryName,MemberID\n999,X,12345\n");
    REQUIRE(code_of([&] { load_cwe_catalog(dir.file("w.csv"), dir.file("c2.csv")); }) ==
            errc::dangling_membership);
}

TEST_CASE("dangling membership names the id") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), weaknesses_csv);
    write_file(dir.file("c.csv"), "CategoryID,CategoryName,MemberID\n999,X,12345\n");
    try {
        load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv"));
        FAIL("expected dangling membership");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::dangling_membership);
        REQUIRE(std::string(e.what()).find("12345") != std::string::npos);
    }
}

TEST_CASE("duplicate weakness id rejected") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), "ID,Name,Description\n79,A,first\n79,B,second\n");
    write_file(dir.file("c.csv"), "CategoryID,CategoryName,MemberID\n");
    REQUIRE(code_of([&] { load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv")); }) == errc::duplicate_id);
}

TEST_CASE("missing files and invalid utf8") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), weaknesses_csv);
    REQUIRE(code_of([&] { load_cwe_catalog(dir.file("nope.csv"), dir.file("w.csv")); }) == errc::missing_file);

    write_file(dir.file("bad.csv"), std::string("ID,Name,Description\n1,\xFF\xFE,desc\n"));
    write_file(dir.file("c.csv"), "CategoryID,CategoryName,MemberID\n");
    REQUIRE(code_of([&] { load_cwe_catalog(dir.file("bad.csv"), dir.file("c.csv")); }) == errc::malformed_row);
}

TEST_CASE("catalog round-trips through the two-file format") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), weaknesses_csv);
    write_file(dir.file("c.csv"), categories_csv);
    auto catalog = load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv"));

    save_cwe_catalog(catalog, dir.file("w2.csv"), dir.file("c2.csv"));
    auto again = load_cwe_catalog(dir.file("w2.csv"), dir.file("c2.csv"));
    REQUIRE(catalog == again);
}

TEST_CASE("requirements load in file order") {
    temp_dir dir("reqs");
    write_file(dir.file("r.csv"),
               "ProjectID,RequirementText,Class\n"
               "p1,The system shall encrypt data,SE\n"
               "p1,Users can reset passwords,F\n"
               "p2,Response time under one second,PE\n");
    auto reqs = load_requirements(dir.file("r.csv"));
    REQUIRE(reqs.size() == 3);
    for (std::size_t i = 0; i < reqs.size(); ++i) REQUIRE(reqs[i].row_index == i);
    REQUIRE(reqs[1].text == "Users can reset passwords");
    REQUIRE(reqs[2].original_class == "PE");
}

TEST_CASE("blank requirement text is rejected with its line") {
    temp_dir dir("reqs");
    write_file(dir.file("r.csv"), "ProjectID,RequirementText,Class\np1,ok,F\np1,\"  \",F\n");
    try {
        load_requirements(dir.file("r.csv"));
        FAIL("expected empty_text");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::empty_text);
        REQUIRE(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("custom column names") {
    temp_dir dir("reqs");
    write_file(dir.file("r.csv"), "id,req,label\nx,some text,F\n");
    column_map cols{"id", "req", "label"};
    auto reqs = load_requirements(dir.file("r.csv"), cols);
    REQUIRE(reqs.size() == 1);
    REQUIRE(reqs[0].project_id == "x");

    REQUIRE(code_of([&] { load_requirements(dir.file("r.csv")); }) == errc::missing_column);
}

TEST_CASE("resolve_category") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), weaknesses_csv);
    write_file(dir.file("c.csv"),
               "CategoryID,CategoryName,MemberID\n"
               "137,Data Neutralization Issues,79\n"
               "310,Cryptographic Issues,89\n"
               "137,Data Neutralization Issues,89\n");
    auto catalog = load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv"));

    REQUIRE(resolve_category(catalog, 79) == 137);
    // weakness 89 sits in {137, 310}: smallest id wins
    REQUIRE(resolve_category(catalog, 89) == 137);
    REQUIRE(code_of([&] { resolve_category(catalog, 424242); }) == errc::unknown_cwe_id);
}

TEST_CASE("uncategorized weakness") {
    temp_dir dir("catalog");
    write_file(dir.file("w.csv"), weaknesses_csv);
    write_file(dir.file("c.csv"), "CategoryID,CategoryName,MemberID\n137,Data Neutralization Issues,79\n");
    auto catalog = load_cwe_catalog(dir.file("w.csv"), dir.file("c.csv"));
    REQUIRE(code_of([&] { resolve_category(catalog, 89); }) == errc::uncategorized);
}
