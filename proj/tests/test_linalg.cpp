#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "anq/linalg.hpp"

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

matrix random_matrix(std::mt19937_64& rng, int r, int c, const field_spec& fs) {
    matrix m(r, c, fs);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (fs.is_prime())
                m(i, j) = scalar::from_int(static_cast<long long>(rng() % fs.modulus()), fs);
            else
                m(i, j) = scalar::from_int(static_cast<long long>(rng() % 9) - 4, fs);
        }
    return m;
}

const field_spec Q = field_spec::rational();
const field_spec F2 = field_spec::prime(2);
const field_spec F5 = field_spec::prime(5);
const field_spec F7 = field_spec::prime(7);

}  // namespace

TEST_SUITE("matrix") {
    TEST_CASE("product, sum, transpose") {
        auto a = mat({{1, 2}, {3, 4}}, Q);
        auto b = mat({{0, 1}, {1, 0}}, Q);
        CHECK(a * b == mat({{2, 1}, {4, 3}}, Q));
        CHECK(a + b == mat({{1, 3}, {4, 4}}, Q));
        CHECK(a - a == matrix(2, 2, Q));
        CHECK(transpose(a) == mat({{1, 3}, {2, 4}}, Q));
        CHECK(matrix::identity(2, Q) * a == a);
    }

    TEST_CASE("shape and field mismatches throw") {
        auto a = mat({{1, 2}}, Q);
        CHECK_THROWS_AS(a * a, std::invalid_argument);
        CHECK_THROWS_AS(a + mat({{1}}, Q), std::invalid_argument);
        CHECK_THROWS_AS(a * mat({{1}, {1}}, F5), std::invalid_argument);
        CHECK_THROWS_AS(hcat(a, mat({{1}, {1}}, Q)), std::invalid_argument);
    }

    TEST_CASE("empty shapes are first-class") {
        matrix e03(0, 3, Q), e30(3, 0, Q);
        CHECK((e03 * e30) == matrix(0, 0, Q));
        matrix p = e30 * e03;
        CHECK(p.rows() == 3);
        CHECK(p.cols() == 3);
        CHECK(p.is_zero());
        CHECK(rank(e03) == 0);
        CHECK(rref(e30).pivots.empty());
        CHECK(matrix::identity(0, Q).is_identity());
        CHECK(try_inverse(matrix(0, 0, Q)).has_value());
        CHECK(kernel_basis(e03).dim() == 3);
        CHECK(image_basis(e30).dim() == 0);
    }

    TEST_CASE("hcat and take_columns") {
        auto a = mat({{1}, {2}}, F5);
        auto b = mat({{3, 4}, {0, 1}}, F5);
        auto c = hcat(a, b);
        CHECK(c == mat({{1, 3, 4}, {2, 0, 1}}, F5));
        CHECK(take_columns(c, {2, 0}) == mat({{4, 1}, {1, 2}}, F5));
        CHECK(c.column(1) == mat({{3}, {0}}, F5));
        CHECK_THROWS_AS(take_columns(c, {3}), std::invalid_argument);
    }
}

TEST_SUITE("rref") {
    TEST_CASE("worked example over Q") {
        auto m = mat({{1, 2}, {2, 4}}, Q);
        auto rr = rref(m);
        CHECK(rr.r == mat({{1, 2}, {0, 0}}, Q));
        CHECK(rr.pivots == std::vector<int>{0});
        CHECK(rr.t * m == rr.r);
        CHECK(try_inverse(rr.t).has_value());
        CHECK(rank(m) == 1);
    }

    TEST_CASE("reduced form properties on random input") {
        std::mt19937_64 rng(101);
        for (auto fs : {F2, F5, Q}) {
            for (int iter = 0; iter < 300; ++iter) {
                int r = static_cast<int>(rng() % 6);
                int c = static_cast<int>(rng() % 6);
                matrix m = random_matrix(rng, r, c, fs);
                auto rr = rref(m);
                REQUIRE(rr.t * m == rr.r);
                REQUIRE(try_inverse(rr.t).has_value());
                // pivots strictly increase and their columns are unit vectors
                for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
                    if (k > 0) REQUIRE(rr.pivots[k] > rr.pivots[k - 1]);
                    for (int i = 0; i < r; ++i) {
                        if (i == static_cast<int>(k))
                            REQUIRE(rr.r(i, rr.pivots[k]).is_one());
                        else
                            REQUIRE(rr.r(i, rr.pivots[k]).is_zero());
                    }
                }
                // zero rows at the bottom
                for (int i = static_cast<int>(rr.pivots.size()); i < r; ++i)
                    for (int j = 0; j < c; ++j) REQUIRE(rr.r(i, j).is_zero());
                REQUIRE(rank(m) == static_cast<int>(rr.pivots.size()));
                REQUIRE(rank(m) == rank(transpose(m)));
            }
        }
    }
}

TEST_SUITE("kernel_image") {
    TEST_CASE("worked example") {
        auto m = mat({{1, 2}, {2, 4}}, Q);
        auto k = kernel_basis(m);
        CHECK(k.basis() == mat({{-2}, {1}}, Q));
        auto im = image_basis(m);
        CHECK(im.basis() == mat({{1}, {2}}, Q));
    }

    TEST_CASE("rank-nullity and containment on random input") {
        std::mt19937_64 rng(202);
        for (auto fs : {F2, F7, Q}) {
            for (int iter = 0; iter < 300; ++iter) {
                int r = static_cast<int>(rng() % 6);
                int c = static_cast<int>(rng() % 6);
                matrix m = random_matrix(rng, r, c, fs);
                auto k = kernel_basis(m);
                auto im = image_basis(m);
                REQUIRE(k.dim() + im.dim() == c);
                REQUIRE((m * k.basis()).is_zero());
                for (int j = 0; j < c; ++j) REQUIRE(im.contains(m.column(j)));
            }
        }
    }
}

TEST_SUITE("subspace") {
    TEST_CASE("independence is enforced") {
        CHECK_THROWS_AS(subspace(mat({{1, 2}, {2, 4}}, Q)), std::invalid_argument);
        CHECK_NOTHROW(subspace(mat({{1, 2}, {2, 5}}, Q)));
        CHECK(subspace::zero(4, F5).dim() == 0);
        CHECK(subspace::full(3, Q).dim() == 3);
    }

    TEST_CASE("extend_to_basis completes with unit vectors") {
        auto s = subspace(mat({{1}, {1}, {0}}, Q));
        auto b = extend_to_basis(s);
        CHECK(b == mat({{1, 1, 0}, {1, 0, 0}, {0, 0, 1}}, Q));
        CHECK(try_inverse(b).has_value());

        std::mt19937_64 rng(303);
        for (auto fs : {F2, F7, Q}) {
            for (int iter = 0; iter < 200; ++iter) {
                int d = static_cast<int>(rng() % 6);
                int c = static_cast<int>(rng() % (d + 1));
                matrix m = random_matrix(rng, d, c, fs);
                auto s2 = image_basis(m);
                auto b2 = extend_to_basis(s2);
                REQUIRE(b2.rows() == d);
                REQUIRE(b2.cols() == d);
                REQUIRE(try_inverse(b2).has_value());
                for (int j = 0; j < s2.dim(); ++j)
                    REQUIRE(b2.column(j) == s2.basis().column(j));
            }
        }
    }
}

TEST_SUITE("compatible_basis") {
    TEST_CASE("worked example in Q^3") {
        auto u1 = subspace(mat({{1}, {0}, {0}}, Q));
        auto u2 = subspace(mat({{1}, {1}, {0}}, Q));
        auto pb = compatible_basis_two_subspaces(u1, u2);
        CHECK(pb.both.cols() == 0);
        CHECK(pb.first == mat({{1}, {0}, {0}}, Q));
        CHECK(pb.second == mat({{1}, {1}, {0}}, Q));
        CHECK(pb.neither == mat({{0}, {0}, {1}}, Q));
        CHECK(try_inverse(pb.concat()).has_value());
    }

    TEST_CASE("nested and equal subspaces") {
        auto u1 = subspace(mat({{1, 0}, {0, 1}, {0, 0}}, Q));
        auto u2 = subspace(mat({{1}, {1}, {0}}, Q));
        auto pb = compatible_basis_two_subspaces(u1, u2);
        CHECK(pb.both.cols() == 1);
        CHECK(pb.first.cols() == 1);
        CHECK(pb.second.cols() == 0);
        CHECK(pb.neither.cols() == 1);

        auto pb2 = compatible_basis_two_subspaces(u2, u2);
        CHECK(pb2.both.cols() == 1);
        CHECK(pb2.first.cols() == 0);
        CHECK(pb2.second.cols() == 0);
    }

    TEST_CASE("ambient mismatch throws") {
        CHECK_THROWS_AS(
            compatible_basis_two_subspaces(subspace::full(2, Q), subspace::full(3, Q)),
            std::invalid_argument);
        CHECK_THROWS_AS(
            compatible_basis_two_subspaces(subspace::full(2, Q), subspace::full(2, F5)),
            std::invalid_argument);
    }

    TEST_CASE("block dimensions and invertibility on random pairs") {
        std::mt19937_64 rng(404);
        for (auto fs : {F2, F7, Q}) {
            for (int iter = 0; iter < 1000; ++iter) {
                int d = static_cast<int>(rng() % 7);
                auto u1 = image_basis(random_matrix(rng, d, static_cast<int>(rng() % (d + 2)), fs));
                auto u2 = image_basis(random_matrix(rng, d, static_cast<int>(rng() % (d + 2)), fs));
                auto pb = compatible_basis_two_subspaces(u1, u2);

                int meet = u1.dim() + u2.dim() - rank(hcat(u1.basis(), u2.basis()));
                REQUIRE(pb.both.cols() == meet);
                REQUIRE(pb.both.cols() + pb.first.cols() == u1.dim());
                REQUIRE(pb.both.cols() + pb.second.cols() == u2.dim());
                matrix full = pb.concat();
                REQUIRE(full.cols() == d);
                REQUIRE(try_inverse(full).has_value());
                // both ∪ first spans u1, both ∪ second spans u2
                REQUIRE(rank(hcat(hcat(pb.both, pb.first), u1.basis())) == u1.dim());
                REQUIRE(rank(hcat(hcat(pb.both, pb.second), u2.basis())) == u2.dim());
                for (int j = 0; j < pb.both.cols(); ++j) {
                    REQUIRE(u1.contains(pb.both.column(j)));
                    REQUIRE(u2.contains(pb.both.column(j)));
                }
            }
        }
    }
}

TEST_SUITE("inverse_solve") {
    TEST_CASE("worked inverse over F_5") {
        auto a = mat({{2, 0}, {0, 3}}, F5);
        CHECK(inverse(a) == mat({{3, 0}, {0, 2}}, F5));
        CHECK_THROWS_AS(inverse(mat({{1, 2}, {2, 4}}, F5)), std::invalid_argument);
        CHECK(!try_inverse(mat({{1, 2, 3}}, F5)).has_value());
    }

    TEST_CASE("solve finds a witness or reports no solution") {
        auto a = mat({{1, 2}, {2, 4}}, Q);
        auto sol = solve(a, mat({{3}, {6}}, Q));
        REQUIRE(sol.has_value());
        CHECK(a * *sol == mat({{3}, {6}}, Q));
        CHECK(!solve(a, mat({{3}, {5}}, Q)).has_value());
    }

    TEST_CASE("random consistency") {
        std::mt19937_64 rng(505);
        for (auto fs : {F2, F7, Q}) {
            for (int iter = 0; iter < 300; ++iter) {
                int r = static_cast<int>(rng() % 5);
                int c = static_cast<int>(rng() % 5);
                matrix a = random_matrix(rng, r, c, fs);
                matrix x = random_matrix(rng, c, 1 + static_cast<int>(rng() % 2), fs);
                matrix b = a * x;
                auto sol = solve(a, b);
                REQUIRE(sol.has_value());
                REQUIRE(a * *sol == b);

                matrix sq = random_matrix(rng, r, r, fs);
                if (auto inv = try_inverse(sq)) {
                    REQUIRE((sq * *inv).is_identity());
                    REQUIRE((*inv * sq).is_identity());
                }
            }
        }
    }
}
