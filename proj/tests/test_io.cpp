#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "anq/io.hpp"
#include "anq/oracle.hpp"

using namespace anq;

namespace {

matrix mat(std::initializer_list<std::initializer_list<long long>> rows, const field_spec& fs,
           int ncols = -1) {
    int r = static_cast<int>(rows.size());
    int c = ncols >= 0 ? ncols : (r > 0 ? static_cast<int>(rows.begin()->size()) : 0);
    matrix m(r, c, fs);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long long v : row) m(i, j++) = scalar::from_int(v, fs);
        ++i;
    }
    return m;
}

const field_spec Q = field_spec::rational();
const field_spec F5 = field_spec::prime(5);
const field_spec F7 = field_spec::prime(7);

std::string error_of(const std::string& text) {
    try {
        parse_instance(text);
    } catch (const parse_error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("instance documents") {
    TEST_CASE("round-trip over a prime field") {
        auto o = orientation::parse(3, "fb");
        representation r(o, {1, 2, 1}, {mat({{1}, {0}}, F5), mat({{4}, {3}}, F5)}, F5);
        std::string text = emit_instance(r);
        CHECK(parse_instance(text) == r);
        CHECK(emit_instance(parse_instance(text)) == text);
        CHECK(emit_instance(r) == text);
    }

    TEST_CASE("round-trip keeps exact fractions") {
        auto o = orientation::parse(2, "f");
        matrix m(1, 1, Q);
        m(0, 0) = scalar::parse("-22/7", Q);
        representation r(o, {1, 1}, {m}, Q);
        std::string text = emit_instance(r);
        CHECK(text.find("-22/7") != std::string::npos);
        CHECK(parse_instance(text) == r);
    }

    TEST_CASE("round-trip with empty fibers and a single vertex") {
        auto o = orientation::parse(2, "f");
        representation r(o, {0, 2}, {matrix(2, 0, Q)}, Q);
        CHECK(parse_instance(emit_instance(r)) == r);
        representation point(orientation(1, {}), {3}, {}, F5);
        CHECK(parse_instance(emit_instance(point)) == point);
    }

    TEST_CASE("malformed documents are rejected with a located message") {
        CHECK_THROWS_AS(parse_instance("{"), parse_error);
        CHECK_THROWS_AS(parse_instance("[]"), parse_error);
        std::string base =
            R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[["1"]]]})";
        CHECK(parse_instance(base).n() == 2);
        // wrong row count
        CHECK(error_of(
                  R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[["1"], ["0"]]]})")
                  .find("maps[0]") != std::string::npos);
        // wrong entry count inside a row
        CHECK(error_of(
                  R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[["1", "0"]]]})")
                  .find("maps[0][0]") != std::string::npos);
        // residue out of range for the field
        CHECK(error_of(
                  R"({"field": {"kind": "prime", "p": 5}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[["7"]]]})")
                  .find("maps[0][0][0]") != std::string::npos);
        // decimal scalars cannot be expressed
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[["1.5"]]]})"),
            parse_error);
        // bare numbers are not scalars
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[[1]]]})"),
            parse_error);
    }

    TEST_CASE("rejects a non-prime modulus") {
        std::string doc =
            R"({"field": {"kind": "prime", "p": 6}, "n": 1, "orientation": [], "dims": [1], "maps": []})";
        CHECK(error_of(doc).find("field.p") != std::string::npos);
    }

    TEST_CASE("rejects structural mistakes") {
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["x"], "dims": [1, 1], "maps": [[["1"]]]})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "rational"}, "n": 2.5, "orientation": ["f"], "dims": [1, 1], "maps": [[["1"]]]})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, -1], "maps": [[["1"]]]})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[["1"]], [["1"]]]})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "rational"}, "n": 2, "orientation": ["f"], "dims": [1, 1], "maps": [[["1"]]], "extra": 0})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_instance(
                R"({"field": {"kind": "complex"}, "n": 1, "orientation": [], "dims": [1], "maps": []})"),
            parse_error);
    }
}

TEST_SUITE("certificate documents") {
    TEST_CASE("emit, parse, and re-check") {
        auto r = random_instance(orientation::parse(4, "fbf"), 3, F5, 17);
        auto d = decompose(r);
        std::string text = emit_certificate(r, d);
        CHECK(emit_certificate(r, d) == text);
        certificate_file c = parse_certificate(text);
        CHECK(c.field == F5);
        CHECK(c.n == 4);
        CHECK(c.dims == r.dims());
        CHECK(!check_certificate(r, c).has_value());
        CHECK(c.decomp.bars == d.bars);
    }

    TEST_CASE("round-trips over the rationals") {
        auto r = random_instance(orientation::parse(3, "bf"), 3, Q, 23);
        auto d = decompose(r);
        certificate_file c = parse_certificate(emit_certificate(r, d));
        CHECK(!check_certificate(r, c).has_value());
        for (int x = 0; x < 3; ++x) CHECK(c.decomp.base_change[x] == d.base_change[x]);
    }

    TEST_CASE("a certificate for one instance fails another") {
        auto r1 = random_instance(orientation::parse(3, "ff"), 3, F5, 5);
        auto r2 = random_instance(orientation::parse(3, "ff"), 3, F5, 6);
        auto c = parse_certificate(emit_certificate(r1, decompose(r1)));
        auto err = check_certificate(r2, c);
        CHECK(err.has_value());
    }

    TEST_CASE("tampering is caught") {
        auto r = random_instance(orientation::parse(3, "fb"), 3, F5, 9);
        auto d = decompose(r);
        certificate_file c = parse_certificate(emit_certificate(r, d));
        REQUIRE(!c.decomp.column_tags[1].empty());
        std::swap(c.decomp.column_tags[1].front(), c.decomp.column_tags[1].back());
        bool same_after_swap =
            c.decomp.column_tags[1].front() == c.decomp.column_tags[1].back();
        if (!same_after_swap) CHECK(check_certificate(r, c).has_value());
    }

    TEST_CASE("parse rejects inconsistent documents") {
        auto r = random_instance(orientation::parse(2, "f"), 2, F5, 3);
        std::string good = emit_certificate(r, decompose(r));
        CHECK_THROWS_AS(
            parse_certificate(
                R"({"field": {"kind": "rational"}, "n": 2, "dims": [1, 1], "barcode": [[2, 1, 1]], "base_change": [[["1"]], [["1"]]], "column_tags": [[0], [0]], "summands": [[1, 2]]})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_certificate(
                R"({"field": {"kind": "rational"}, "n": 2, "dims": [1, 1], "barcode": [[1, 2, 0]], "base_change": [[["1"]], [["1"]]], "column_tags": [[0], [0]], "summands": [[1, 2]]})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_certificate(
                R"({"field": {"kind": "rational"}, "n": 2, "dims": [1, 1], "barcode": [[1, 2, 1]], "base_change": [[["1"]], [["1"]]], "column_tags": [[0], [0]], "summands": [[1, 2, 3]]})"),
            parse_error);
        CHECK_THROWS_AS(
            parse_certificate(
                R"({"field": {"kind": "rational"}, "n": 2, "dims": [1, 1], "barcode": [[1, 2, 1]], "base_change": [[["1", "0"]], [["1"]]], "column_tags": [[0], [0]], "summands": [[1, 2]]})"),
            parse_error);
    }
}

TEST_SUITE("barcode text") {
    TEST_CASE("lines are sorted and newline-terminated") {
        barcode b;
        b.n = 3;
        b.add({2, 2}, 2);
        b.add({1, 3}, 1);
        CHECK(barcode_text(b) == "1 3 1\n2 2 2\n");
        barcode empty;
        empty.n = 5;
        CHECK(barcode_text(empty).empty());
    }
}

TEST_SUITE("filtration documents") {
    TEST_CASE("parse, emit, and round-trip") {
        filtration_input f;
        f.field = F5;
        f.dim = 2;
        f.chain1 = {mat({{1}, {0}}, F5), mat({{1, 0}, {0, 1}}, F5)};
        f.chain2 = {mat({{2}, {1}}, F5)};
        std::string text = emit_filtrations(f);
        filtration_input g = parse_filtrations(text);
        CHECK(g.field == f.field);
        CHECK(g.dim == f.dim);
        CHECK(g.chain1 == f.chain1);
        CHECK(g.chain2 == f.chain2);
        CHECK(emit_filtrations(g) == text);
    }

    TEST_CASE("nesting is verified on load") {
        std::string bad =
            R"({"field": {"kind": "rational"}, "dim": 2, "chain1": [[["1"], ["0"]], [["0"], ["1"]]], "chain2": []})";
        CHECK_THROWS_AS(parse_filtrations(bad), parse_error);
        std::string good =
            R"({"field": {"kind": "rational"}, "dim": 2, "chain1": [[["1"], ["0"]], [["1", "0"], ["0", "1"]]], "chain2": []})";
        CHECK(parse_filtrations(good).chain1.size() == 2);
    }

    TEST_CASE("two transverse lines get the unit basis") {
        filtration_input f;
        f.field = Q;
        f.dim = 2;
        f.chain1 = {mat({{1}, {0}}, Q)};
        f.chain2 = {mat({{0}, {1}}, Q)};
        auto rb = refine_filtrations(f);
        CHECK(rb.chain1_from == std::vector<int>{1, 0});
        CHECK(rb.chain2_from == std::vector<int>{0, 1});
        CHECK(subspace(f.chain1[0]).contains(rb.basis.column(0)));
        CHECK(subspace(f.chain2[0]).contains(rb.basis.column(1)));
    }

    TEST_CASE("coinciding chains tag one vector twice") {
        filtration_input f;
        f.field = Q;
        f.dim = 2;
        f.chain1 = {mat({{1}, {0}}, Q)};
        f.chain2 = {mat({{1}, {0}}, Q)};
        auto rb = refine_filtrations(f);
        CHECK(rb.chain1_from == std::vector<int>{1, 0});
        CHECK(rb.chain2_from == std::vector<int>{1, 0});
        CHECK(subspace(f.chain1[0]).contains(rb.basis.column(0)));
    }

    TEST_CASE("empty chains leave an untagged basis") {
        filtration_input f;
        f.field = F5;
        f.dim = 2;
        auto rb = refine_filtrations(f);
        CHECK(rank(rb.basis) == 2);
        CHECK(rb.chain1_from == std::vector<int>{0, 0});
        CHECK(rb.chain2_from == std::vector<int>{0, 0});
    }

    TEST_CASE("non-nested programmatic chains are rejected") {
        filtration_input f;
        f.field = Q;
        f.dim = 2;
        f.chain1 = {mat({{1}, {0}}, Q), mat({{0}, {1}}, Q)};
        CHECK_THROWS_AS(refine_filtrations(f), parse_error);
    }

    TEST_CASE("random nested chains refine and re-verify") {
        rng64 rng(4242);
        auto random_nested = [&](int dim, int m, const field_spec& fs) {
            matrix p = rng.random_invertible(dim, fs);
            std::vector<long long> cuts;
            for (int i = 0; i < m; ++i) cuts.push_back(rng.range(0, dim));
            std::sort(cuts.begin(), cuts.end());
            std::vector<matrix> chain;
            for (int i = 0; i < m; ++i) {
                std::vector<int> idx;
                for (int j = 0; j < cuts[static_cast<std::size_t>(i)]; ++j) idx.push_back(j);
                matrix basis = take_columns(p, idx);
                // tack on a dependent column so the spanning set is not a basis
                if (!idx.empty()) {
                    matrix mixed = basis * rng.random_matrix(basis.cols(), 1, fs);
                    basis = hcat(basis, mixed);
                }
                chain.push_back(std::move(basis));
            }
            return chain;
        };
        for (int iter = 0; iter < 12; ++iter) {
            filtration_input f;
            f.field = F7;
            f.dim = 8;
            f.chain1 = random_nested(8, 3, F7);
            f.chain2 = random_nested(8, 3, F7);
            auto rb = refine_filtrations(f);
            CHECK(rank(rb.basis) == 8);
            for (int c = 0; c < 2; ++c) {
                const auto& chain = c == 0 ? f.chain1 : f.chain2;
                const auto& from = c == 0 ? rb.chain1_from : rb.chain2_from;
                for (int i = 1; i <= static_cast<int>(chain.size()); ++i) {
                    subspace u = image_basis(chain[static_cast<std::size_t>(i) - 1]);
                    int claimed = 0;
                    for (int j = 0; j < 8; ++j) {
                        if (from[static_cast<std::size_t>(j)] != 0 &&
                            from[static_cast<std::size_t>(j)] <= i) {
                            ++claimed;
                            CHECK(u.contains(rb.basis.column(j)));
                        }
                    }
                    CHECK(claimed == u.dim());
                }
            }
        }
        for (int iter = 0; iter < 6; ++iter) {
            filtration_input f;
            f.field = Q;
            f.dim = 5;
            f.chain1 = random_nested(5, 2, Q);
            f.chain2 = random_nested(5, 2, Q);
            auto rb = refine_filtrations(f);
            CHECK(rank(rb.basis) == 5);
        }
    }

    TEST_CASE("report format") {
        refined_basis rb{matrix::identity(2, Q), {1, 0}, {0, 2}};
        CHECK(refinement_report(rb, 2, 2) == "1 0 | U1 U2 | -\n0 1 | - | U'2\n");
    }
}
