#include "qfock/laurent.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qfock;

namespace {

LaurentPoly q(long long e = 1) { return LaurentPoly::q(e); }

LaurentPoly random_poly(std::mt19937& rng, int max_terms = 6) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<long long> exp(-8, 8);
    std::uniform_int_distribution<long long> coeff(-9, 9);
    LaurentPoly p;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) p += LaurentPoly::monomial(coeff(rng), exp(rng));
    return p;
}

}  // namespace

TEST_CASE("ring operations") {
    CHECK(q(1) * q(-1) == LaurentPoly(1));
    LaurentPoly p = q(3) + LaurentPoly(2) - q(-1);
    CHECK(p + LaurentPoly() == p);
    CHECK((q() + LaurentPoly(1)) * (q() - LaurentPoly(1)) == q(2) - LaurentPoly(1));
    CHECK((p - p).is_zero());
    CHECK((-p) + p == LaurentPoly());
}

TEST_CASE("coefficient access and degree bounds") {
    const LaurentPoly p = q(-2) + LaurentPoly(3) + q(5);
    CHECK(p.coeff(-2) == 1);
    CHECK(p.coeff(0) == 3);
    CHECK(p.coeff(1) == 0);
    CHECK(p.min_exp() == -2);
    CHECK(p.max_exp() == 5);
    CHECK_THROWS_AS(LaurentPoly().min_exp(), std::logic_error);
}

TEST_CASE("bar involution") {
    CHECK(q().bar() == q(-1));
    CHECK((LaurentPoly(1) + q(2)).bar() == LaurentPoly(1) + q(-2));
    const LaurentPoly p = q(3) - LaurentPoly(2) * q(1);
    CHECK(p.bar().bar() == p);
}

TEST_CASE("bar is a ring involution on random polynomials") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        const LaurentPoly a = random_poly(rng);
        const LaurentPoly b = random_poly(rng);
        CHECK((a * b).bar() == a.bar() * b.bar());
        CHECK((a + b).bar() == a.bar() + b.bar());
        CHECK(a.bar().bar() == a);
    }
}

TEST_CASE("quantum integers and factorials") {
    CHECK(quantum_int(0).is_zero());
    CHECK(quantum_int(1) == LaurentPoly(1));
    CHECK(quantum_int(2) == q() + q(-1));
    CHECK(quantum_factorial(0) == LaurentPoly(1));
    // [3]! = (q^2 + 1 + q^-2)(q + q^-1), multiplied out by hand
    const LaurentPoly expected = q(3) + LaurentPoly(2) * q(1) + LaurentPoly(2) * q(-1) + q(-3);
    CHECK(quantum_factorial(3) == expected);
    for (int m = 0; m <= 12; ++m) CHECK(quantum_factorial(m).is_bar_symmetric());
}

TEST_CASE("exact division") {
    CHECK(exact_div(q(2) + LaurentPoly(2) + q(-2), q() + q(-1)) == q() + q(-1));
    const LaurentPoly p = q(4) - LaurentPoly(5) * q(-3);
    CHECK(exact_div(p, LaurentPoly(1)) == p);
    CHECK(exact_div(q() + q(-1), q(2)) == q(-1) + q(-3));
    CHECK_THROWS_AS(exact_div(q() + LaurentPoly(1), q() - LaurentPoly(1)), ExactDivisionError);
    CHECK_THROWS_AS(exact_div(LaurentPoly(3), LaurentPoly(2)), ExactDivisionError);
    CHECK_THROWS_AS(exact_div(q(), LaurentPoly()), ExactDivisionError);
}

TEST_CASE("exact division round-trips products") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const LaurentPoly a = random_poly(rng);
        LaurentPoly b = random_poly(rng);
        if (b.is_zero()) b = q(-2) + LaurentPoly(1);
        CHECK(exact_div(a * b, b) == a);
    }
}

TEST_CASE("qZ[q] membership") {
    CHECK((q() + q(3)).in_qZq());
    CHECK_FALSE(LaurentPoly(1).in_qZq());
    CHECK_FALSE(q(-1).in_qZq());
    CHECK(LaurentPoly().in_qZq());
}

TEST_CASE("bar-symmetric part") {
    CHECK(bar_symmetric_part(LaurentPoly(1) + q(2)).poly() == LaurentPoly(1));
    const LaurentPoly p = q(-1) + LaurentPoly(3) + q(1);
    CHECK(bar_symmetric_part(p).poly() == p);
    CHECK((p - bar_symmetric_part(p).poly()).is_zero());
    CHECK(bar_symmetric_part(q(2)).poly().is_zero());
}

TEST_CASE("bar-symmetric part clears non-positive exponents for any input") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const LaurentPoly p = random_poly(rng);
        const LaurentPoly alpha = bar_symmetric_part(p).poly();
        CHECK(alpha.is_bar_symmetric());
        CHECK((p - alpha).in_qZq());
    }
}

TEST_CASE("BarSymmetric rejects asymmetric polynomials") {
    CHECK_THROWS_AS(BarSymmetric(q(1)), std::invalid_argument);
    CHECK_NOTHROW(BarSymmetric(q(1) + q(-1)));
}

TEST_CASE("rendering") {
    CHECK(LaurentPoly().to_string() == "0");
    CHECK((q(4) + LaurentPoly(-2) * q(1) + LaurentPoly(1)).to_string() == "1 - 2q + q^4");
    CHECK(q(-1).to_string() == "q^-1");
}
