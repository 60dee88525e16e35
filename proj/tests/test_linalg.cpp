#include <doctest.h>

#include <random>

#include "modlim/linalg.hpp"
#include "test_util.hpp"

using namespace modlim;
using testutil::Tuple;

namespace {

IntMatrix mat(const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::vector<Int>> conv;
    for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
    return IntMatrix::from_rows(conv);
}

void check_snf_contract(const IntMatrix& m, const SnfResult& f) {
    CHECK(f.U * m * f.V == f.S);
    CHECK(f.U * f.U_inv == IntMatrix::identity(m.rows()));
    CHECK(f.V_inv * f.V == IntMatrix::identity(m.cols()));
    Int du = determinant(f.U);
    Int dv = determinant(f.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    const std::size_t d = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < d; ++i) {
        CHECK(f.S.at(i, i) >= 0);
        for (std::size_t j = 0; j < f.S.cols(); ++j)
            if (j != i) CHECK(f.S.at(i, j) == 0);
        if (i + 1 < d && f.S.at(i + 1, i + 1) != 0) {
            REQUIRE(f.S.at(i, i) != 0);
            CHECK(f.S.at(i + 1, i + 1) % f.S.at(i, i) == 0);
        }
    }
}

}  // namespace

TEST_CASE("egcd basics") {
    auto r = egcd(0, 0);
    CHECK(r.g == 0);

    r = egcd(4, 6);
    CHECK(r.g == 2);
    CHECK(r.u * 4 + r.v * 6 == 2);

    // oracle: brute force over small coefficients
    r = egcd(-3, 7);
    CHECK(r.g == 1);
    CHECK(r.u * -3 + r.v * 7 == 1);
    bool witnessed = false;
    for (int u = -10; u <= 10 && !witnessed; ++u)
        for (int v = -10; v <= 10 && !witnessed; ++v)
            if (u * -3 + v * 7 == 1) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("snf of simple matrices") {
    SUBCASE("identity stays put") {
        auto f = smith_normal_form(IntMatrix::identity(2));
        CHECK(f.S == IntMatrix::identity(2));
        CHECK(f.rank == 2);
    }
    SUBCASE("zero matrix") {
        IntMatrix z(2, 3);
        auto f = smith_normal_form(z);
        CHECK(f.S.is_zero());
        CHECK(f.rank == 0);
    }
    SUBCASE("diag(2,3) -> diag(1,6)") {
        IntMatrix m = mat({{2, 0}, {0, 3}});
        // determinantal-divisor oracle: S_ii = D_i / D_{i-1}
        Int d1 = testutil::determinantal_divisor(m, 1);
        Int d2 = testutil::determinantal_divisor(m, 2);
        REQUIRE(d1 == 1);
        REQUIRE(d2 == 6);
        auto f = smith_normal_form(m);
        CHECK(f.S.at(0, 0) == d1);
        CHECK(f.S.at(1, 1) == d2 / d1);
        check_snf_contract(m, f);
    }
}

TEST_CASE("snf contract on random matrices") {
    std::mt19937_64 rng(20240811);
    for (int iter = 0; iter < 60; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(0, 12);
        IntMatrix m = testutil::random_matrix(rng, dim(rng), dim(rng), -9, 9);
        auto f = smith_normal_form(m);
        check_snf_contract(m, f);
    }
}

TEST_CASE("snf matches determinantal divisors on small random matrices") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 25; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        IntMatrix m = testutil::random_matrix(rng, dim(rng), dim(rng), -6, 6);
        auto f = smith_normal_form(m);
        Int prev = 1;
        const std::size_t d = std::min(m.rows(), m.cols());
        for (std::size_t k = 1; k <= d; ++k) {
            Int dk = testutil::determinantal_divisor(m, k);
            if (dk == 0) {
                CHECK(f.S.at(k - 1, k - 1) == 0);
                break;
            }
            CHECK(f.S.at(k - 1, k - 1) == dk / prev);
            prev = dk;
        }
    }
}

TEST_CASE("kernel_mod examples") {
    SUBCASE("multiplication by 2 mod 4") {
        IntMatrix k = kernel_mod(mat({{2}}), 4);
        auto span = testutil::column_span_set(k, 4);
        // oracle: enumerate x in {0,1,2,3}
        std::set<Tuple> expected;
        for (std::int64_t x = 0; x < 4; ++x)
            if ((2 * x) % 4 == 0) expected.insert({x});
        CHECK(span == expected);
    }
    SUBCASE("identity has trivial kernel") {
        IntMatrix k = kernel_mod(IntMatrix::identity(2), 6);
        auto span = testutil::column_span_set(k, 6);
        CHECK(span.size() == 1);
    }
    SUBCASE("zero map has full kernel") {
        IntMatrix k = kernel_mod(mat({{0}}), 5);
        auto span = testutil::column_span_set(k, 5);
        CHECK(span.size() == 5);
    }
}

TEST_CASE("solve_mod examples") {
    auto x = solve_mod(mat({{2}}), {Int(2)}, 4);
    REQUIRE(x.has_value());
    CHECK((2 * (*x)[0]) % 4 == 2);

    CHECK(!solve_mod(mat({{2}}), {Int(1)}, 4).has_value());

    for (std::int64_t k = 0; k < 6; ++k) {
        auto y = solve_mod(mat({{1}}), {Int(k)}, 6);
        REQUIRE(y.has_value());
        CHECK((*y)[0] == k);
    }

    CHECK_THROWS_AS(solve_mod(mat({{1, 2}}), {Int(0), Int(0)}, 4), InputError);
}

TEST_CASE("solve_mod and kernel_mod agree with exhaustive enumeration") {
    std::mt19937_64 rng(99);
    for (Modulus n : {2, 3, 5, 8, 12}) {
        for (int iter = 0; iter < 8; ++iter) {
            std::uniform_int_distribution<std::size_t> dim(1, 3);
            std::size_t r = dim(rng), c = dim(rng);
            IntMatrix m = testutil::random_matrix(rng, r, c, 0, n - 1);

            // kernel agrees with enumeration
            std::set<Tuple> brute;
            for (const auto& t : testutil::all_tuples(n, c)) {
                std::vector<Int> x(t.begin(), t.end());
                auto y = m.apply(x);
                bool zero = true;
                for (const auto& v : y)
                    if (v % n != 0) zero = false;
                if (zero) brute.insert(t);
            }
            CHECK(testutil::column_span_set(kernel_mod(m, n), n) == brute);

            // solvability agrees with enumeration on a random rhs
            std::uniform_int_distribution<std::int64_t> ent(0, n - 1);
            std::vector<Int> b(r);
            for (auto& v : b) v = ent(rng);
            bool brute_solvable = false;
            for (const auto& t : testutil::all_tuples(n, c)) {
                std::vector<Int> x(t.begin(), t.end());
                auto y = m.apply(x);
                bool ok = true;
                for (std::size_t i = 0; i < r; ++i)
                    if ((y[i] - b[i]) % n != 0) ok = false;
                if (ok) { brute_solvable = true; break; }
            }
            auto got = solve_mod(m, b, n);
            CHECK(got.has_value() == brute_solvable);
            if (got) {
                auto y = m.apply(*got);
                for (std::size_t i = 0; i < r; ++i) CHECK((y[i] - b[i]) % n == 0);
            }
        }
    }
}

TEST_CASE("span membership") {
    CHECK(span_membership(mat({{2}}), {Int(2)}, 4));
    CHECK(span_membership(mat({{3, 1}, {0, 2}}), {Int(0), Int(0)}, 6));
    IntMatrix empty(1, 0);
    CHECK(!span_membership(empty, {Int(1)}, 4));
    CHECK(span_membership(empty, {Int(0)}, 4));
}

TEST_CASE("compress_columns preserves the spanned subgroup") {
    std::mt19937_64 rng(4242);
    for (Modulus n : {4, 6, 9}) {
        for (int iter = 0; iter < 6; ++iter) {
            IntMatrix g = testutil::random_matrix(rng, 3, 5, 0, n - 1);
            IntMatrix c = compress_columns(g, n);
            CHECK(c.cols() <= g.rows());
            IntMatrix nid = IntMatrix::identity(3).scaled(Int(n));
            auto before = testutil::column_span_set(IntMatrix::hstack(g, nid), n);
            auto after = testutil::column_span_set(IntMatrix::hstack(c, nid), n);
            CHECK(before == after);
        }
    }
}

TEST_CASE("preimage_generators characterizes the preimage submodule") {
    std::mt19937_64 rng(11);
    Modulus n = 4;
    IntMatrix m = testutil::random_matrix(rng, 2, 2, 0, 3);
    IntMatrix target = testutil::random_matrix(rng, 2, 1, 0, 3);
    IntMatrix gens = preimage_generators(m, target, n);
    auto target_span = testutil::column_span_set(target, n);
    std::set<Tuple> brute;
    for (const auto& t : testutil::all_tuples(n, 2)) {
        std::vector<Int> x(t.begin(), t.end());
        if (target_span.count(testutil::reduce_tuple(m.apply(x), n))) brute.insert(t);
    }
    CHECK(testutil::column_span_set(gens, n) == brute);
}
