#include <doctest.h>

#include <numeric>
#include <random>

#include "mcs/errors.hpp"
#include "mcs/sequences.hpp"

using namespace mcs;

namespace {

std::vector<Term> terms(std::initializer_list<long> values) {
    std::vector<Term> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

std::vector<Term> count_terms(const SequenceParams& p, std::uint64_t count) {
    std::vector<Term> out;
    for (std::uint64_t n = 0; n < count; ++n) out.push_back(count_term(p, n));
    return out;
}

}  // namespace

TEST_CASE("params reject bases and moduli below 2") {
    CHECK_THROWS_AS(SequenceParams(1, 3), ParameterError);
    CHECK_THROWS_AS(SequenceParams(2, 1), ParameterError);
    CHECK_THROWS_AS(SequenceParams(0, 0), ParameterError);
    CHECK_THROWS_AS(SequenceParams(-4, 3), ParameterError);
    CHECK_NOTHROW(SequenceParams(2, 2));
}

TEST_CASE("coprime flag agrees with a Euclidean gcd") {
    auto euclid = [](std::uint64_t a, std::uint64_t b) {
        while (b) {
            a %= b;
            std::swap(a, b);
        }
        return a;
    };
    for (int x = 2; x <= 40; ++x) {
        for (int rho = 2; rho <= 40; ++rho) {
            CHECK(SequenceParams(x, rho).coprime() == (euclid(x, rho) == 1));
        }
    }
}

TEST_CASE("count_term reproduces the tabulated sequences") {
    // Jacobsthal between powers of 2
    CHECK(count_terms(SequenceParams(2, 3), 5) == terms({0, 1, 1, 3, 5}));
    CHECK(count_terms(SequenceParams(3, 5), 4) == terms({0, 1, 4, 11}));
    CHECK(count_term(SequenceParams(10, 3), 0) == 3);
    CHECK(count_terms(SequenceParams(4, 3), 4) == terms({1, 4, 16, 64}));
}

TEST_CASE("count_prefix is the floor of x^(n+1)/rho") {
    const SequenceParams p(2, 3);
    std::vector<Term> s;
    for (int n = 0; n <= 5; ++n) s.push_back(count_prefix(p, n));
    CHECK(s == terms({0, 1, 2, 5, 10, 21}));
    CHECK(count_prefix(SequenceParams(3, 5), 4) == 48);
    CHECK(count_prefix(SequenceParams(2, 7), 0) == 0);
    CHECK(count_prefix(SequenceParams(5, 11), 0) == 0);
}

TEST_CASE("generators match the pointwise operations") {
    CHECK(generate_J(SequenceParams(2, 3), 5) == terms({0, 1, 1, 3, 5}));
    CHECK(generate_J(SequenceParams(10, 3), 3) == terms({3, 30, 300}));
    CHECK(generate_J(SequenceParams(7, 4), 0).empty());
    CHECK(generate_S(SequenceParams(2, 3), 4) == terms({0, 1, 2, 5}));
    CHECK(generate_S(SequenceParams(3, 5), 5) == terms({0, 1, 5, 16, 48}));
    CHECK(generate_S(SequenceParams(3, 5), 0).empty());

    for (int x = 2; x <= 9; ++x) {
        for (int rho = 2; rho <= 9; ++rho) {
            const SequenceParams p(x, rho);
            const auto j = generate_J(p, 40);
            const auto s = generate_S(p, 40);
            for (std::uint64_t n = 0; n < 40; ++n) {
                REQUIRE(j[n] == count_term(p, n));
                REQUIRE(s[n] == count_prefix(p, n));
            }
        }
    }
}

TEST_CASE("terms are exact far beyond machine words") {
    const SequenceParams p(10, 3);
    // 3 * 10^n: (n+1)-digit multiples of 3
    CHECK(count_term(p, 50) == Term("3" + std::string(50, '0'), 10));
    CHECK(count_prefix(p, 40) == Term(std::string(41, '3'), 10));
}

TEST_CASE("brute-force enumeration examples") {
    CHECK(brute_force_count(SequenceParams(10, 3), 0, 8) == 3);
    CHECK(brute_force_count(SequenceParams(2, 3), 1, 8) == 1);
    CHECK(brute_force_count(SequenceParams(2, 3), 0, 8) == 0);
}

TEST_CASE("brute-force guard and cap") {
    CHECK_THROWS_AS(brute_force_count(SequenceParams(2, 3), 9, 8), ParameterError);
    CHECK_THROWS_AS(brute_force_count(SequenceParams(2, 3), 40, 64), ParameterError);
    CHECK_NOTHROW(brute_force_count(SequenceParams(2, 3), 10, 64, 1u << 11));
    CHECK_THROWS_AS(brute_force_count(SequenceParams(2, 3), 11, 64, 1u << 11), ParameterError);
}

TEST_CASE("floor form agrees with enumeration for coprime pairs") {
    const std::uint64_t guard = std::uint64_t{1} << 22;
    for (int x = 2; x <= 12; ++x) {
        for (int rho = 2; rho <= 12; ++rho) {
            const SequenceParams p(x, rho);
            if (!p.coprime()) continue;
            for (std::uint64_t n = 0;; ++n) {
                Term bf;
                try {
                    bf = brute_force_count(p, n, 64, guard);
                } catch (const ParameterError&) {
                    break;
                }
                REQUIRE_MESSAGE(bf == count_term(p, n), "x=" << x << " rho=" << rho << " n=" << n);
            }
        }
    }
}

TEST_CASE("non-coprime pairs count the half-open interval") {
    // x=4, rho=2, n=0: (1, 4] holds 2 and 4; the open interval only 2.
    const SequenceParams p(4, 2);
    CHECK(count_term(p, 0) == 2);
    CHECK(brute_force_count(p, 0, 8) == 1);
}

TEST_CASE("prefix-sum identity, monotonicity and growth envelope") {
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<int> pick(2, 40);
    for (int trial = 0; trial < 60; ++trial) {
        const SequenceParams p(pick(rng), pick(rng));
        const auto j = generate_J(p, 80);
        Term running = 0;
        Term prev_s = -1;
        for (std::uint64_t n = 0; n < 80; ++n) {
            running += j[n];
            const Term s = count_prefix(p, n);
            REQUIRE(s == running);
            REQUIRE(s >= prev_s);
            prev_s = s;
            if (p.coprime()) {
                // |J_n - (x-1) x^n / rho| < 1 in exact rationals
                mpq_class approx(Term(p.x() - 1) * power(p.x(), n), Term(p.rho()));
                approx.canonicalize();
                mpq_class gap = mpq_class(j[n]) - approx;
                REQUIRE(abs(gap) < 1);
            }
        }
    }
}
