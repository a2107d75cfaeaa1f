#include <doctest.h>

#include <random>

#include "mildcert/error.hpp"
#include "mildcert/ideal.hpp"
#include "mildcert/quadfield.hpp"
#include "oracles.hpp"

using namespace mildcert;

TEST_CASE("field construction") {
    QuadField k = make_field(-23);
    CHECK(k.discriminant() == -23);
    CHECK(k.omega_is_half());
    CHECK(make_field(-1).discriminant() == -4);
    CHECK(make_field(-5).discriminant() == -20);
    CHECK(make_field(-84).radicand() == -21);  // given as a discriminant
    CHECK_THROWS_AS(make_field(5), Error);
    CHECK_THROWS_AS(make_field(-12), Error);
    CHECK_THROWS_AS(make_field(0), Error);
}

TEST_CASE("element arithmetic") {
    const i64 d = -23;
    FieldElement a1(d, -2, -1);
    CHECK(a1.norm() == 27);
    FieldElement pi(d, -2, 3);
    CHECK(pi.norm() == 211);
    FieldElement half(d, 1, 1, 2);
    CHECK(half.is_integral());
    CHECK(half.omega_coords() == std::pair<Integer, Integer>(0, 1));
    CHECK_FALSE(FieldElement(d, 1, 0, 2).is_integral());
    CHECK(FieldElement(d, 2, 4, 6) == FieldElement(d, 1, 2, 3));
    CHECK(FieldElement(d, 1, 1, -2) == FieldElement(d, -1, -1, 2));

    std::mt19937_64 rng(11);
    for (i64 dd : {-1, -2, -3, -5, -23, -47, -71}) {
        for (int it = 0; it < 50; ++it) {
            auto r = [&] { return Integer(static_cast<long>(rng() % 61) - 30); };
            FieldElement x(dd, r(), r(), Integer(static_cast<long>(rng() % 5 + 1)));
            FieldElement y(dd, r(), r(), Integer(static_cast<long>(rng() % 5 + 1)));
            CHECK((x * y).norm() == x.norm() * y.norm());
            CHECK(x.conj().conj() == x);
            CHECK((x + y).conj() == x.conj() + y.conj());
            CHECK(x * x.conj() == FieldElement(dd, x.norm().get_num(), 0, x.norm().get_den()));
            if (!y.is_zero()) CHECK((x / y) * y == x);
            if (x.is_integral()) {
                auto [u, v] = x.omega_coords();
                CHECK(FieldElement::from_omega(make_field(dd), u, v) == x);
            }
        }
    }
}

TEST_CASE("prime splitting follows the Kronecker symbol") {
    for (i64 d : {-1, -2, -5, -23, -47, -163}) {
        QuadField k = make_field(d);
        for (u64 ell = 3; ell < 200; ++ell) {
            if (!oracle::is_prime(ell)) continue;
            auto places = split_prime(k, ell);
            int count = oracle::count_sqrt(k.discriminant(), ell);  // # x with x^2 = D mod ell
            if (count == 2) {
                REQUIRE(places.size() == 2);
                for (const auto& v : places) {
                    CHECK(v.kind == SplitKind::split);
                    CHECK(v.norm() == ell);
                    CHECK(oracle::mod(static_cast<i64>(v.root * v.root) - d, ell) == 0);
                }
                CHECK(places[0].root < places[1].root);
            } else if (count == 0) {
                REQUIRE(places.size() == 1);
                CHECK(places[0].kind == SplitKind::inert);
                CHECK(places[0].norm() == ell * ell);
            } else {
                REQUIRE(places.size() == 1);
                CHECK(places[0].kind == SplitKind::ramified);
            }
        }
    }
    QuadField k = make_field(-23);
    auto p13 = split_prime(k, 13);
    REQUIRE(p13.size() == 2);
    CHECK(p13[0].label() == "13:4");
    CHECK(p13[1].label() == "13:9");
    CHECK(split_prime(k, 67)[0].label() == "67");
    CHECK(split_prime(k, 67)[0].norm() == 4489);
    CHECK(split_prime(k, 23)[0].kind == SplitKind::ramified);
}

TEST_CASE("place construction") {
    QuadField k = make_field(-23);
    CHECK(make_place(k, 13, 4).root == 4);
    CHECK(make_place(k, 211, 71).norm() == 211);
    CHECK(make_place(k, 67).kind == SplitKind::inert);
    CHECK_THROWS_AS(make_place(k, 13, 5), Error);
    CHECK_THROWS_AS(make_place(k, 13), Error);  // split prime needs a root
    CHECK_THROWS_AS(make_place(k, 15, 1), Error);
}

TEST_CASE("reduction at degree-one places") {
    QuadField k = make_field(-23);
    Place v0 = make_place(k, 13, 4);
    FieldElement a1(-23, -2, -1);
    CHECK(reduce_mod_place(k, a1, v0) == ResidueElement{7, 0});  // -2 - 4 = 7 mod 13

    ResidueField F(k, v0);
    CHECK(F.pow(F.make(7), 4) == ResidueElement{9, 0});
    CHECK(oracle::naive_pow(7, 4, 13) == 9);

    // matches (a + b*root)/den computed by brute force
    std::mt19937_64 rng(5);
    for (u64 ell : {13ull, 31ull, 211ull}) {
        for (const Place& v : split_prime(k, ell)) {
            ResidueField G(k, v);
            for (int it = 0; it < 100; ++it) {
                long a = static_cast<long>(rng() % 2001) - 1000, b = static_cast<long>(rng() % 2001) - 1000;
                long den = static_cast<long>(rng() % 7) + 1;
                if (den % static_cast<long>(ell) == 0) continue;
                FieldElement x(-23, a, b, den);
                // x is canonicalized, so read its own coordinates
                u64 want = (oracle::mod(x.a().get_si(), ell) + oracle::mod(x.b().get_si(), ell) * v.root) % ell *
                       oracle::naive_inverse(oracle::mod(x.den().get_si(), ell), ell) % ell;
                CHECK(G.reduce(x) == ResidueElement{want, 0});
            }
        }
    }
    CHECK_THROWS_AS(F.reduce(FieldElement(-23, 1, 0, 13)), Error);
}

TEST_CASE("reduction at inert places is a ring homomorphism onto F_ell^2") {
    std::mt19937_64 rng(17);
    for (auto [d, ell] : {std::pair<i64, u64>{-23, 67}, {-23, 5}, {-1, 7}, {-5, 11}, {-47, 13}}) {
        QuadField k = make_field(d);
        Place v = make_place(k, ell);
        REQUIRE(v.kind == SplitKind::inert);
        ResidueField F(k, v);
        oracle::Fq2 G{ell, oracle::mod(k.discriminant(), ell)};
        for (int it = 0; it < 200; ++it) {
            auto r = [&] { return Integer(static_cast<long>(rng() % 401) - 200); };
            FieldElement x(d, r(), r());
            FieldElement y(d, r(), r());
            CHECK(F.reduce(x * y) == F.mul(F.reduce(x), F.reduce(y)));
            CHECK(F.reduce(x + y) == F.add(F.reduce(x), F.reduce(y)));
            CHECK(F.reduce(x.conj()) == F.frobenius(F.reduce(x)));
            ResidueElement rx = F.reduce(x);
            CHECK(F.frobenius(rx) == F.pow(rx, ell));
            if (!rx.is_zero()) CHECK(F.pow(rx, ell * ell - 1).is_one());
            // independent F_ell[s]/(s^2 - D) arithmetic
            auto gx = G.naive_pow({rx.c0, rx.c1}, 5);
            CHECK(F.pow(rx, 5) == ResidueElement{gx.first, gx.second});
        }
    }
}

TEST_CASE("square roots modulo primes") {
    for (u64 ell : {3ull, 5ull, 13ull, 17ull, 97ull, 193ull, 1009ull}) {
        for (u64 a = 0; a < ell; ++a) {
            auto r = sqrt_mod(a, ell);
            bool residue = oracle::count_sqrt(static_cast<i64>(a), ell) > 0;
            CHECK(r.has_value() == residue);
            if (r) CHECK(mul_mod(*r, *r, ell) == a);
        }
    }
}

TEST_CASE("ideals") {
    QuadField k = make_field(-23);
    IntegralIdeal p3 = IntegralIdeal::of_place(k, make_place(k, 3, 1));
    CHECK(p3.norm() == 3);
    CHECK(p3.contains(FieldElement(-23, 3)));
    CHECK(p3.contains(FieldElement(-23, -1, 1)));  // sqrt(-23) - 1
    CHECK_FALSE(p3.contains(FieldElement(-23, 1)));
    CHECK(p3 * p3.conj() == IntegralIdeal::principal(k, FieldElement(-23, 3)));

    IntegralIdeal a = IntegralIdeal::principal(k, FieldElement(-23, -2, -1));
    CHECK(a.norm() == 27);
    CHECK(a == p3.pow(3));

    for (i64 d : {-1, -2, -23, -47, -71}) {
        QuadField kk = make_field(d);
        std::vector<IntegralIdeal> ids;
        for (u64 ell : {3ull, 5ull, 7ull, 11ull, 13ull})
            for (const auto& v : split_prime(kk, ell)) ids.push_back(IntegralIdeal::of_place(kk, v));
        for (const auto& I : ids) {
            CHECK((I.b_root() * I.b_root() - kk.discriminant()) % (4 * I.norm_a()) == 0);
            for (const auto& J : ids) {
                CHECK((I * J).norm() == I.norm() * J.norm());
                CHECK(I * J == J * I);
                auto [x, y] = J.basis();
                CHECK((I * J).contains(I.basis().first * x));
            }
        }
    }
}
