#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "recog/errors.hpp"
#include "recog/gf2field.hpp"

using namespace recog;

namespace {

FieldElem random_elem(unsigned w, std::mt19937_64& g) {
    FieldElem e(w);
    for (unsigned i = 0; i < w; ++i) e.set_bit(i, g() & 1U);
    return e;
}

oracle::Poly to_poly(const FieldElem& e) {
    oracle::Poly p(e.width(), false);
    for (unsigned i = 0; i < e.width(); ++i) p[i] = e.bit(i);
    return oracle::trim(p);
}

FieldElem from_poly(const oracle::Poly& p, unsigned w) {
    FieldElem e(w);
    for (std::size_t i = 0; i < p.size(); ++i) e.set_bit(static_cast<unsigned>(i), p[i]);
    return e;
}

}  // namespace

TEST_CASE("worked examples in GF(8)") {
    const FieldSpec f(3, {0, 1, 3});
    const auto x = FieldElem::from_u64(0b010, 3);
    CHECK(f.mul(x, FieldElem::from_u64(0b100, 3)).to_u64() == 0b011);
    CHECK(f.inv(x).to_u64() == 0b101);
    const std::vector<FieldElem> ones(3, f.one());
    CHECK(f.poly_eval(ones, x).to_u64() == 0b111);
}

TEST_CASE("multiplication matches schoolbook multiply-and-reduce for every pair, w <= 8") {
    for (unsigned w = 2; w <= 8; ++w) {
        const FieldSpec& f = FieldSpec::standard(w);
        for (std::uint64_t a = 0; a < (1U << w); ++a)
            for (std::uint64_t b = 0; b < (1U << w); ++b)
                REQUIRE(f.mul(FieldElem::from_u64(a, w), FieldElem::from_u64(b, w)).to_u64() ==
                        oracle::gf_mul_small(a, b, f.reduction()));
    }
}

TEST_CASE("multiplication matches the polynomial oracle at large widths") {
    std::mt19937_64 g(7);
    for (unsigned w : {20U, 21U, 63U, 64U, 128U, 256U}) {
        const FieldSpec& f = FieldSpec::standard(w);
        const auto mod = oracle::poly_from_exponents(f.reduction());
        for (int i = 0; i < 50; ++i) {
            const auto a = random_elem(w, g);
            const auto b = random_elem(w, g);
            const auto want = from_poly(oracle::poly_mod(oracle::poly_mul(to_poly(a), to_poly(b)), mod), w);
            REQUIRE(f.mul(a, b) == want);
        }
    }
}

TEST_CASE("field axioms") {
    std::mt19937_64 g(11);
    for (unsigned w : {3U, 8U, 20U, 21U, 256U}) {
        CAPTURE(w);
        const FieldSpec& f = FieldSpec::standard(w);
        for (int i = 0; i < 200; ++i) {
            const auto a = random_elem(w, g);
            const auto b = random_elem(w, g);
            const auto c = random_elem(w, g);
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.mul(a, f.one()) == a);
            CHECK(f.add(a, a) == f.zero());
            if (!a.is_zero()) CHECK(f.mul(a, f.inv(a)) == f.one());
        }
    }
}

TEST_CASE("every nonzero element has order dividing 2^w - 1") {
    std::mt19937_64 g(13);
    for (unsigned w = 2; w <= 21; ++w) {
        const FieldSpec& f = FieldSpec::standard(w);
        const std::uint64_t order = (std::uint64_t{1} << w) - 1;
        for (int i = 0; i < 20; ++i) {
            auto a = random_elem(w, g);
            if (a.is_zero()) continue;
            REQUIRE(f.pow(a, order) == f.one());
        }
    }
}

TEST_CASE("inverse is exhaustive-search correct in GF(2^8)") {
    const FieldSpec& f = FieldSpec::standard(8);
    for (std::uint64_t a = 1; a < 256; ++a) {
        std::uint64_t found = 0;
        for (std::uint64_t b = 1; b < 256; ++b)
            if (oracle::gf_mul_small(a, b, f.reduction()) == 1) found = b;
        REQUIRE(f.inv(FieldElem::from_u64(a, 8)).to_u64() == found);
    }
}

TEST_CASE("zero has no inverse") {
    const FieldSpec& f = FieldSpec::standard(21);
    try {
        (void)f.inv(f.zero());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::zero_inverse);
    }
}

TEST_CASE("standard reduction polynomials are irreducible") {
    for (unsigned w = 2; w <= 20; ++w) {
        CAPTURE(w);
        CHECK(oracle::irreducible_by_trial_division(oracle::poly_from_exponents(FieldSpec::standard(w).reduction())));
    }
    for (unsigned w = 2; w <= 64; ++w) {
        CAPTURE(w);
        CHECK(oracle::irreducible_rabin(oracle::poly_from_exponents(FieldSpec::standard(w).reduction())));
    }
    for (unsigned w : {128U, 256U}) {
        CAPTURE(w);
        CHECK(oracle::irreducible_rabin(oracle::poly_from_exponents(FieldSpec::standard(w).reduction())));
    }
    CHECK(FieldSpec::standard(256).reduction() == std::vector<unsigned>{0, 121, 178, 241, 256});
}

TEST_CASE("1 + x^3 + x^5 + x^20 is reducible, 1 + x^3 + x^20 is not") {
    CHECK_FALSE(oracle::irreducible_by_trial_division(oracle::poly_from_exponents({0, 3, 5, 20})));
    CHECK_FALSE(oracle::irreducible_rabin(oracle::poly_from_exponents({0, 3, 5, 20})));
    CHECK(oracle::irreducible_by_trial_division(oracle::poly_from_exponents({0, 3, 20})));
    CHECK(FieldSpec::standard(20).reduction() == std::vector<unsigned>{0, 3, 20});
    CHECK(FieldSpec::standard(21).reduction() == std::vector<unsigned>{0, 2, 21});
}

TEST_CASE("the irreducibility oracles agree on every degree-10 polynomial with constant term") {
    for (std::uint64_t low = 1; low < (1U << 10); low += 2) {
        const auto p = oracle::poly_from_u64(low | (1U << 10));
        REQUIRE(oracle::irreducible_by_trial_division(p) == oracle::irreducible_rabin(p));
    }
}

TEST_CASE("carry-less multiply matches the schoolbook product") {
    std::mt19937_64 g(17);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t a = g(), b = g();
        const auto [lo, hi] = oracle::clmul_schoolbook(a, b);
        const auto r = clmul64(a, b);
        REQUIRE(r[0] == lo);
        REQUIRE(r[1] == hi);
    }
    CHECK(clmul64(~0ULL, ~0ULL)[1] == oracle::clmul_schoolbook(~0ULL, ~0ULL).second);
}

TEST_CASE("trunc_m keeps the low bits") {
    const auto y = FieldElem::from_hex("f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0f0abcd", 256);
    CHECK(trunc_m(y, 16).to_u64() == 0xabcd);
    CHECK(trunc_m(y, 21).to_u64() == (0xf0abcdULL & 0x1fffffULL));
    CHECK(trunc_m(y, 21).width() == 21);
    CHECK(trunc_m(y, 256) == y);
}

TEST_CASE("byte and hex encodings round-trip") {
    std::mt19937_64 g(19);
    for (unsigned w : {3U, 8U, 21U, 64U, 100U, 256U}) {
        for (int i = 0; i < 20; ++i) {
            const auto a = random_elem(w, g);
            CHECK(FieldElem::from_bytes(a.to_bytes(), w) == a);
            CHECK(FieldElem::from_hex(a.to_hex(), w) == a);
            CHECK(a.to_bytes().size() == (w + 7) / 8);
        }
    }
    CHECK(FieldElem::from_u64(0x1abc, 13).to_hex() == "1abc");
}

TEST_CASE("contract violations") {
    const FieldSpec& f = FieldSpec::standard(8);
    CHECK_THROWS_AS((void)f.mul(FieldElem(8), FieldElem(9)), Error);
    CHECK_THROWS_AS((void)FieldElem::from_u64(8, 3), Error);
    const std::vector<std::uint8_t> too_wide = {0x0f};
    CHECK_THROWS_AS((void)FieldElem::from_bytes(too_wide, 3), Error);
    CHECK_THROWS_AS((void)FieldElem(300), Error);
    CHECK_THROWS_AS((void)FieldElem(256).to_u64(), Error);
    try {
        (void)FieldSpec::standard(65);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported);
    }
}
