#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "otv/series.hpp"

using namespace otv;

namespace {

VariableTablePtr qtable(int n) {
    auto t = std::make_shared<VariableTable>();
    for (int i = 0; i < n; ++i)
        t->add("q_" + std::to_string(i), VarKind::Box);
    return t;
}

Monomial q_pow(const VariableTablePtr& t, int var, long e) {
    Monomial m(t->size());
    m.set_exp(var, static_cast<int32_t>(e));
    return m;
}

LaurentSeries random_series(const VariableTablePtr& t, Truncation tr,
                            std::mt19937& rng, int max_terms) {
    LaurentSeries s(t, tr);
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<long> ex(tr.min_box, tr.max_box);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m(t->size());
        // random split of a random degree across variables
        long deg = ex(rng);
        for (std::size_t v = 0; v + 1 < t->size(); ++v) {
            std::uniform_int_distribution<long> part(0, std::max<long>(0, deg));
            long p = deg >= 0 ? part(rng) : 0;
            m.set_exp(v, static_cast<int32_t>(p));
            deg -= p;
        }
        m.set_exp(t->size() - 1, static_cast<int32_t>(deg));
        s.add_term(m, coeff(rng));
    }
    return s;
}

}  // namespace

TEST_CASE("multiplication with truncation") {
    auto t = qtable(1);
    Truncation tr{2, 0, 0};
    LaurentSeries one_plus_q = LaurentSeries::one(t, tr);
    one_plus_q.add_term(q_pow(t, 0, 1), 1);
    auto sq = one_plus_q * one_plus_q;
    CHECK(sq.coefficient(Monomial(1)) == 1);
    CHECK(sq.coefficient(q_pow(t, 0, 1)) == 2);
    CHECK(sq.coefficient(q_pow(t, 0, 2)) == 1);

    Truncation tr1{1, 0, 0};
    LaurentSeries a = LaurentSeries::one(t, tr1);
    a.add_term(q_pow(t, 0, 1), 1);
    auto sq1 = a * a;
    CHECK(sq1.coefficient(q_pow(t, 0, 1)) == 2);
    CHECK(sq1.num_terms() == 2);  // q^2 dropped

    Truncation trl{2, 0, -2};
    auto qinv = LaurentSeries::monomial(t, trl, q_pow(t, 0, -1));
    auto q1 = LaurentSeries::monomial(t, trl, q_pow(t, 0, 1));
    CHECK((qinv * q1) == LaurentSeries::one(t, trl));
}

TEST_CASE("incompatible windows rejected") {
    auto t = qtable(1);
    LaurentSeries a = LaurentSeries::one(t, Truncation{2, 0, 0});
    LaurentSeries b = LaurentSeries::one(t, Truncation{3, 0, 0});
    CHECK_THROWS_AS((void)(a * b), std::invalid_argument);
}

TEST_CASE("inversion") {
    auto t = qtable(2);
    Truncation tr{6, 0, -6};

    SUBCASE("geometric series") {
        LaurentSeries a = LaurentSeries::one(t, tr);
        a.add_term(q_pow(t, 0, 1), -1);  // 1 - q_0
        auto inv = a.inverted();
        for (long k = 0; k <= 6; ++k)
            CHECK(inv.coefficient(q_pow(t, 0, k)) == 1);
        CHECK((a * inv) == LaurentSeries::one(t, tr));
        CHECK((inv * a) == LaurentSeries::one(t, tr));
    }

    SUBCASE("monomial inverse") {
        auto a = LaurentSeries::monomial(t, tr, q_pow(t, 0, 1), -1);  // -q_0
        auto inv = a.inverted();
        CHECK(inv.coefficient(q_pow(t, 0, -1)) == -1);
        CHECK(inv.num_terms() == 1);
    }

    SUBCASE("two-variable geometric") {
        LaurentSeries a = LaurentSeries::one(t, tr);
        Monomial q01 = q_pow(t, 0, 1).times(q_pow(t, 1, 1));
        a.add_term(q01, -1);  // 1 - q_0 q_1
        auto inv = a.inverted();
        CHECK((a * inv) == LaurentSeries::one(t, tr));
        for (long m = 0; m <= 3; ++m)
            CHECK(inv.coefficient(q01.pow(m)) == 1);
    }

    SUBCASE("non-unit leading coefficient rejected") {
        LaurentSeries a = LaurentSeries::one(t, tr).scaled(2);
        CHECK_THROWS_AS((void)a.inverted(), std::invalid_argument);
    }
}

TEST_CASE("substitution") {
    auto t = qtable(1);
    Truncation tr{2, 0, 0};

    SUBCASE("sign flip q_0 -> -q_0") {
        LaurentSeries a = LaurentSeries::one(t, tr);
        a.add_term(q_pow(t, 0, 1), 1);
        a.add_term(q_pow(t, 0, 2), 1);
        std::vector<std::optional<SignedMonomial>> rules(1);
        rules[0] = SignedMonomial{-1, q_pow(t, 0, 1)};
        auto b = a.substituted(rules, t, tr);
        CHECK(b.coefficient(Monomial(1)) == 1);
        CHECK(b.coefficient(q_pow(t, 0, 1)) == -1);
        CHECK(b.coefficient(q_pow(t, 0, 2)) == 1);
    }

    SUBCASE("novikov to mixed image") {
        auto src = std::make_shared<VariableTable>();
        src->add("u_f0", VarKind::Novikov);
        auto dst = std::make_shared<VariableTable>();
        dst->add("v", VarKind::Novikov);
        dst->add("q_1", VarKind::Box);
        Truncation str{0, 2, 0};
        Truncation dtr{2, 2, 0};
        Monomial uf(1);
        uf.set_exp(0, 2);
        auto a = LaurentSeries::monomial(src, str, uf);  // u_f0^2
        Monomial img(2);
        img.set_exp(0, 1);
        img.set_exp(1, 1);
        std::vector<std::optional<SignedMonomial>> rules(1);
        rules[0] = SignedMonomial{1, img};  // u_f0 -> v q_1
        auto b = a.substituted(rules, dst, dtr);
        Monomial expect(2);
        expect.set_exp(0, 2);
        expect.set_exp(1, 2);
        CHECK(b.coefficient(expect) == 1);
        CHECK(b.num_terms() == 1);
    }

    SUBCASE("overline swap at n = 3") {
        auto t3 = qtable(3);
        Truncation tr3{3, 0, 0};
        Monomial q12 = q_pow(t3, 1, 1).times(q_pow(t3, 2, 1));
        auto a = LaurentSeries::monomial(t3, tr3, q12);
        std::vector<std::optional<SignedMonomial>> rules(3);
        rules[0] = SignedMonomial{1, q_pow(t3, 0, 1)};
        rules[1] = SignedMonomial{1, q_pow(t3, 2, 1)};  // q_1 -> q_{-1 mod 3}
        rules[2] = SignedMonomial{1, q_pow(t3, 1, 1)};  // q_2 -> q_{-2 mod 3}
        auto b = a.substituted(rules, t3, tr3);
        CHECK(b == a);  // q_1 q_2 maps to q_2 q_1
    }

    SUBCASE("image below the floor rejected") {
        auto a = LaurentSeries::monomial(t, tr, q_pow(t, 0, 1));
        std::vector<std::optional<SignedMonomial>> rules(1);
        rules[0] = SignedMonomial{1, q_pow(t, 0, -1)};
        CHECK_THROWS_AS((void)a.substituted(rules, t, tr), std::out_of_range);
    }
}

TEST_CASE("coefficient access and window") {
    auto t = qtable(1);
    Truncation tr{2, 0, 0};
    LaurentSeries a = LaurentSeries::one(t, tr);
    a.add_term(q_pow(t, 0, 2), 3);
    CHECK(a.coefficient(q_pow(t, 0, 2)) == 3);
    CHECK(a.coefficient(q_pow(t, 0, 1)) == 0);
    CHECK_THROWS_AS((void)a.coefficient(q_pow(t, 0, 3)), std::out_of_range);
}

TEST_CASE("ring laws on random series") {
    auto t = qtable(2);
    Truncation tr{5, 0, 0};
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        auto a = random_series(t, tr, rng, 4);
        auto b = random_series(t, tr, rng, 4);
        auto c = random_series(t, tr, rng, 4);
        CHECK((a * b) == (b * a));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    auto t = qtable(2);
    Truncation tr{4, 0, 0};
    Truncation wide{8, 0, 0};
    std::mt19937 rng(777);
    std::vector<std::optional<SignedMonomial>> rules(2);
    rules[0] = SignedMonomial{-1, q_pow(t, 1, 2)};  // q_0 -> -q_1^2
    rules[1] = SignedMonomial{1, q_pow(t, 0, 1)};   // q_1 -> q_0
    for (int trial = 0; trial < 200; ++trial) {
        Truncation half{2, 0, 0};
        // factors of degree <= 2, so the product in the degree-4 window is
        // exact and its image (degree <= 8) is exact in the wide window
        auto a = random_series(t, half, rng, 4).truncated(tr);
        auto b = random_series(t, half, rng, 4).truncated(tr);
        auto lhs = (a * b).substituted(rules, t, wide);
        auto rhs = a.substituted(rules, t, wide) * b.substituted(rules, t, wide);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("truncation coherence") {
    auto t = qtable(2);
    std::mt19937 rng(999);
    Truncation t8{8, 0, 0};
    Truncation t4{4, 0, 0};
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_series(t, t8, rng, 5);
        auto b = random_series(t, t8, rng, 5);
        auto fine = (a * b).truncated(t4);
        auto coarse = a.truncated(t4) * b.truncated(t4);
        CHECK(fine == coarse);
    }
}

TEST_CASE("canonical text output") {
    auto t = qtable(2);
    Truncation tr{3, 0, 0};
    LaurentSeries a = LaurentSeries::one(t, tr);
    a.add_term(q_pow(t, 0, 1), -2);
    a.add_term(q_pow(t, 1, 1), 5);
    CHECK(a.to_text() == "1 1\n-2 q_0^1\n5 q_1^1\n");
}
