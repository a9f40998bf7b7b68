#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "adg/errors.hpp"
#include "adg/field.hpp"

using adg::Fe;
using adg::Field;

namespace {

// Independent root search: a polynomial (little-endian coeffs) evaluated over
// all of F_p. Degree 2 and 3 polynomials are irreducible iff rootless, which
// lets these tests certify the library's modulus choices without reusing its
// trial-division code.
bool has_root_mod_p(const std::vector<std::uint32_t>& c, std::uint64_t p) {
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("prime fields need no modulus") {
    Field f = Field::make(3, 1);
    REQUIRE(f.p() == 3);
    REQUIRE(f.e() == 1);
    REQUIRE(f.q() == 3);
    REQUIRE(f.modulus().empty());
    REQUIRE(f.add(2, 2) == 1);
    REQUIRE(f.mul(2, 2) == 1);
}

TEST_CASE("canonical modulus is the least rootless candidate") {
    // GF(4): the unique monic irreducible quadratic over F_2.
    REQUIRE(Field::make(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});

    // GF(9): candidates ordered by (c0, c1); everything before [1, 0] has a
    // root, [1, 0] (x^2 + 1) has none.
    REQUIRE(has_root_mod_p({0, 0, 1}, 3));
    REQUIRE(has_root_mod_p({0, 1, 1}, 3));
    REQUIRE(has_root_mod_p({0, 2, 1}, 3));
    REQUIRE_FALSE(has_root_mod_p({1, 0, 1}, 3));
    REQUIRE(Field::make(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});

    // GF(8): all five earlier candidates have a root in F_2.
    REQUIRE(has_root_mod_p({0, 0, 0, 1}, 2));
    REQUIRE(has_root_mod_p({0, 0, 1, 1}, 2));
    REQUIRE(has_root_mod_p({0, 1, 0, 1}, 2));
    REQUIRE(has_root_mod_p({0, 1, 1, 1}, 2));
    REQUIRE(has_root_mod_p({1, 0, 0, 1}, 2));
    REQUIRE_FALSE(has_root_mod_p({1, 0, 1, 1}, 2));
    REQUIRE(Field::make(2, 3).modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});

    REQUIRE(Field::make(2, 4).modulus() == std::vector<std::uint32_t>{1, 0, 0, 1, 1});
    REQUIRE(Field::make(3, 3).modulus() == std::vector<std::uint32_t>{1, 0, 2, 1});
}

TEST_CASE("GF(4) arithmetic matches hand reduction") {
    Field f = Field::make(2, 2);  // x^2 = x + 1
    const Fe x = 2, xp1 = 3;
    REQUIRE(f.mul(x, x) == xp1);
    REQUIRE(f.mul(x, xp1) == 1);
    REQUIRE(f.inv(x) == xp1);
    REQUIRE(f.inv(xp1) == x);
    REQUIRE(f.add(x, xp1) == 1);
}

TEST_CASE("small prime field identities") {
    Field f5 = Field::make(5, 1);
    REQUIRE(f5.inv(3) == 2);
    REQUIRE(f5.mul(3, 2) == 1);
    REQUIRE(f5.sub(1, 3) == 3);
    REQUIRE(f5.neg(2) == 3);
}

TEST_CASE("field axioms hold exhaustively for q <= 9") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        Field f = Field::from_order(q);
        CAPTURE(q);
        for (Fe a = 0; a < q; ++a) {
            REQUIRE(f.add(a, 0) == a);
            REQUIRE(f.mul(a, 1) == a);
            REQUIRE(f.add(a, f.neg(a)) == 0);
            REQUIRE(f.sub(a, a) == 0);
            if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
            // Frobenius: a^q = a.
            REQUIRE(f.pow(a, q) == a);
            for (Fe b = 0; b < q; ++b) {
                REQUIRE(f.add(a, b) == f.add(b, a));
                REQUIRE(f.mul(a, b) == f.mul(b, a));
                REQUIRE(f.sub(f.add(a, b), b) == a);
                for (Fe c = 0; c < q; ++c) {
                    REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("code round-trip and enumeration") {
    Field f = Field::make(3, 2);
    REQUIRE(f.elements().size() == 9);
    for (Fe a = 0; a < 9; ++a) {
        auto c = f.decode_coeffs(a);
        REQUIRE(c.size() == 2);
        REQUIRE(f.encode_coeffs(c) == a);
    }
    REQUIRE(f.decode_coeffs(5) == std::vector<std::uint32_t>{2, 1});  // 2 + x
    REQUIRE(f.from_int(-1) == 2);
    REQUIRE(f.from_int(7) == 1);
}

TEST_CASE("alternate modulus mode validates its input") {
    // x^2 + x + 2 over F_3: rootless, hence irreducible.
    REQUIRE_FALSE(has_root_mod_p({2, 1, 1}, 3));
    Field alt = Field::make(3, 2, {2, 1, 1});
    REQUIRE(alt.modulus() == std::vector<std::uint32_t>{2, 1, 1});
    REQUIRE_FALSE(alt == Field::make(3, 2));

    // x^3 + x + 1 over F_2.
    Field alt8 = Field::make(2, 3, {1, 1, 0, 1});
    REQUIRE(alt8.modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});

    REQUIRE_THROWS_AS(Field::make(3, 2, {2, 0, 1}), adg::invalid_input);     // x^2+2 = (x+1)(x+2)
    REQUIRE_THROWS_AS(Field::make(3, 2, {1, 0, 2}), adg::invalid_input);     // not monic
    REQUIRE_THROWS_AS(Field::make(3, 2, {1, 0}), adg::invalid_input);        // wrong length
    REQUIRE_THROWS_AS(Field::make(3, 2, {3, 0, 1}), adg::invalid_input);     // coeff not reduced
    REQUIRE_THROWS_AS(Field::make(5, 1, {1, 1}), adg::invalid_input);        // prime field
}

TEST_CASE("alternate modulus still satisfies the axioms") {
    Field f = Field::make(3, 2, {2, 1, 1});  // x^2 = -x - 2 = 2x + 1
    // x * x: code 3 is x.
    REQUIRE(f.mul(3, 3) == f.encode_coeffs({1, 2}));
    for (Fe a = 0; a < 9; ++a) {
        REQUIRE(f.pow(a, 9) == a);
        if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
    }
}

TEST_CASE("from_order factors prime powers and rejects the rest") {
    Field f = Field::from_order(9);
    REQUIRE(f.p() == 3);
    REQUIRE(f.e() == 2);
    REQUIRE(f == Field::make(3, 2));
    REQUIRE(Field::from_order(8, {1, 1, 0, 1}).modulus() ==
            std::vector<std::uint32_t>{1, 1, 0, 1});
    REQUIRE_THROWS_AS(Field::from_order(12), adg::invalid_input);
    REQUIRE_THROWS_AS(Field::from_order(1), adg::invalid_input);
    REQUIRE_THROWS_AS(Field::from_order(0), adg::invalid_input);
    REQUIRE_THROWS_AS(Field::make(4, 1), adg::invalid_input);   // p not prime
    REQUIRE_THROWS_AS(Field::make(2, 0), adg::invalid_input);   // e < 1
    REQUIRE_THROWS_AS(Field::make(2, 32), adg::invalid_input);  // q > 2^31
}

TEST_CASE("untabled fields agree with tabled behavior on axioms") {
    // q above the table threshold exercises the direct arithmetic paths.
    Field big2 = Field::make(2, 13);   // 8192
    Field big3 = Field::make(3, 8);    // 6561
    Field bigp = Field::make(4099, 1); // prime
    std::mt19937_64 rng(0x5EED);
    for (const Field& f : {big2, big3, bigp}) {
        const std::uint64_t q = f.q();
        for (int i = 0; i < 200; ++i) {
            Fe a = static_cast<Fe>(rng() % q), b = static_cast<Fe>(rng() % q),
               c = static_cast<Fe>(rng() % q);
            REQUIRE(f.add(a, b) == f.add(b, a));
            REQUIRE(f.sub(f.add(a, b), b) == a);
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
            REQUIRE(f.pow(a, q) == a);
        }
    }
}

TEST_CASE("domain errors") {
    Field f = Field::make(3, 1);
    REQUIRE_THROWS_AS(f.inv(0), adg::invalid_input);
    REQUIRE_THROWS_AS(f.add(3, 0), adg::invalid_input);  // code out of range
    REQUIRE_THROWS_AS(f.encode_coeffs({3}), adg::invalid_input);
}
