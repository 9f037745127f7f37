#include <doctest.h>

#include <random>

#include "error.hpp"
#include "scalar.hpp"

using namespace regtensor;

TEST_CASE("rational arithmetic is exact and reduced") {
    Scalar a = Scalar::rational(1, 2);
    Scalar b = Scalar::rational(1, 3);
    CHECK((a + b) == Scalar::rational(5, 6));
    CHECK((a - b) == Scalar::rational(1, 6));
    CHECK((a / b) == Scalar::rational(3, 2));
    CHECK(Scalar::rational(2, -4) == Scalar::rational(-1, 2));
    CHECK(Scalar::rational(6, 4).to_string() == "3/2");
}

TEST_CASE("prime field arithmetic") {
    PrimeField f2 = PrimeField::fp(2);
    CHECK((f2.one() + f2.one()).is_zero());
    PrimeField f3 = PrimeField::fp(3);
    // Brute-force inverse over residues.
    Scalar two = f3.from_int(2);
    std::uint64_t found = 0;
    for (std::uint64_t r = 1; r < 3; ++r) {
        if ((two * Scalar(r, 3)).is_one()) found = r;
    }
    CHECK(found == 2);
    CHECK(two.inverse() == Scalar(found, 3));
    CHECK(f3.from_int(-1) == Scalar(2, 3));
}

TEST_CASE("scalar errors") {
    CHECK_THROWS_AS(Scalar::rational(0, 1).inverse(), Error);
    try {
        (void)(Scalar(1, 3) + Scalar(1, 5));
        FAIL("expected ModulusMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ModulusMismatch);
    }
    try {
        (void)(Scalar(1, 3) * Scalar::rational(1));
        FAIL("expected ModulusMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ModulusMismatch);
    }
    try {
        (void)Scalar(0, 7).inverse();
        FAIL("expected DivisionByZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
    CHECK_THROWS_AS(PrimeField::fp(9), Error);
}

TEST_CASE("frobenius on prime fields") {
    CHECK(Scalar(1, 2).frobenius() == Scalar(1, 2));
    CHECK(Scalar(2, 3).frobenius() == Scalar(2, 3));
    CHECK(Scalar(3, 5).frobenius() == Scalar(3, 5));
    CHECK_THROWS_AS(Scalar::rational(2).frobenius(), Error);
}

TEST_CASE("fermat holds exhaustively for small primes" * doctest::test_suite("properties")) {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17}) {
        for (std::uint64_t x = 0; x < p; ++x) {
            Scalar s(x, p);
            CHECK(s.pow(p) == s);
            CHECK(s.frobenius() == s);
        }
    }
}

TEST_CASE("random rational field axioms") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> d(-1000, 1000);
    auto draw = [&] {
        long long den = 0;
        while (den == 0) den = d(rng);
        return Scalar::rational(d(rng), den);
    };
    for (int i = 0; i < 200; ++i) {
        Scalar a = draw(), b = draw(), c = draw();
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("square roots in prime fields") {
    CHECK(Scalar::rational(9, 4).sqrt() == Scalar::rational(3, 2));
    CHECK(!Scalar::rational(2).sqrt());
    auto r = Scalar(2, 7).sqrt();
    REQUIRE(r);
    CHECK((*r * *r) == Scalar(2, 7));
    CHECK(!Scalar(3, 7).sqrt());
}
