#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "otv/enumeration.hpp"
#include "otv/frakq.hpp"
#include "otv/vertex.hpp"

using namespace otv;

namespace {
Partition P(std::initializer_list<int> parts) {
    return Partition(std::vector<int>(parts));
}

LaurentSeries geometric(const VariableTablePtr& t, Truncation tr, long step) {
    // 1/(1-q^step) for the one-variable table
    LaurentSeries f = LaurentSeries::one(t, tr);
    Monomial m(t->size());
    m.set_exp(0, static_cast<int32_t>(step));
    f.add_term(m, -1);
    return f.inverted();
}
}  // namespace

TEST_CASE("frak q values") {
    auto t = q_color_table(3);
    CHECK(frak_q(0, 3, *t).is_unit());
    CHECK(frak_q(1, 3, *t) == make_monomial(*t, {{"q_1", 1}}));
    CHECK(frak_q(2, 3, *t) == make_monomial(*t, {{"q_1", 1}, {"q_2", 1}}));
    CHECK(frak_q(-1, 3, *t) == make_monomial(*t, {{"q_0", -1}}));
    CHECK(frak_q(-2, 3, *t) ==
          make_monomial(*t, {{"q_0", -1}, {"q_2", -1}}));
}

TEST_CASE("one-leg closed forms at n = 1") {
    auto t = q_color_table(1);
    Truncation tr{6, 0, 0};
    SUBCASE("P(emp, emp, (1)) = 1/(1-q)") {
        auto p = orbifold_vertex_operator(Partition(), Partition(),
                                          ColoredPartition(P({1}), 1), 6);
        CHECK(p == geometric(t, tr, 1).truncated(p.truncation()));
    }
    SUBCASE("P((1), emp, emp) = 1/(1-q)") {
        auto p = orbifold_vertex_operator(P({1}), Partition(),
                                          ColoredPartition(Partition(), 1), 6);
        CHECK(p == geometric(t, tr, 1).truncated(p.truncation()));
    }
    SUBCASE("P(emp, emp, (1,1)) = 1/((1-q)(1-q^2))") {
        auto p = orbifold_vertex_operator(Partition(), Partition(),
                                          ColoredPartition(P({1, 1}), 1), 6);
        auto expect = geometric(t, tr, 1) * geometric(t, tr, 2);
        CHECK(p == expect.truncated(p.truncation()));
    }
}

TEST_CASE("empty-leg product formula matches the operator route") {
    for (int n = 1; n <= 3; ++n) {
        for (int size = 0; size <= 2 * n; size += n) {
            for (const auto& lb : balanced_partitions(size, n)) {
                long dq = 5;
                auto op = orbifold_vertex_operator(Partition(), Partition(), lb, dq);
                auto table = q_color_table(n);
                auto prod = empty_leg_vertex_product(lb, table,
                                                     Truncation{dq, 0, 0});
                CHECK(op == prod.truncated(op.truncation()));
            }
        }
    }
}

TEST_CASE("skew Schur: Jacobi-Trudi against tableaux") {
    auto t = q_color_table(2);
    Truncation tr{8, 0, -8};
    std::vector<Monomial> xs;
    for (int i = 0; i < 4; ++i) xs.push_back(frak_q(i, 2, *t));
    SUBCASE("single cell") {
        auto s = skew_schur(P({1}), Partition(), xs, t, tr);
        LaurentSeries expect(t, tr);
        for (const auto& x : xs) expect.add_term(x, 1);
        CHECK(s == expect);
        CHECK(skew_schur_tableaux(P({1}), Partition(), xs, t, tr) == expect);
    }
    SUBCASE("skew single addable cell") {
        auto s = skew_schur(P({2}), P({1}), xs, t, tr);
        LaurentSeries expect(t, tr);
        for (const auto& x : xs) expect.add_term(x, 1);
        CHECK(s == expect);
    }
    SUBCASE("omega not inside rho gives zero") {
        CHECK(skew_schur(P({1}), P({2}), xs, t, tr).is_zero());
    }
    SUBCASE("shapes up to size 4 agree across both methods") {
        for (int sz = 0; sz <= 4; ++sz) {
            for (const auto& rho : partitions_of(sz)) {
                for (int wsz = 0; wsz < sz; ++wsz) {
                    for (const auto& omega : partitions_of(wsz)) {
                        if (!rho.contains(omega)) continue;
                        auto a = skew_schur(rho, omega, xs, t, tr);
                        auto b = skew_schur_tableaux(rho, omega, xs, t, tr);
                        CHECK(a == b);
                    }
                }
            }
        }
    }
}

TEST_CASE("calibration battery: three routes on asymmetric cases") {
    struct Case {
        Partition rp, rm;
        ColoredPartition lb;
        long dq;
    };
    std::vector<Case> cases = {
        {P({1}), Partition(), ColoredPartition(Partition(), 1), 5},
        {Partition(), P({1}), ColoredPartition(Partition(), 1), 5},
        {P({2}), Partition(), ColoredPartition(Partition(), 1), 5},
        {Partition(), P({1, 1}), ColoredPartition(Partition(), 1), 5},
        {P({2}), P({1, 1}), ColoredPartition(Partition(), 1), 5},
        {Partition(), Partition(), ColoredPartition(P({2}), 2), 5},
        {Partition(), Partition(), ColoredPartition(P({1, 1}), 2), 5},
        {P({1}), Partition(), ColoredPartition(P({2}), 2), 4},
        {Partition(), P({1}), ColoredPartition(P({1, 1}), 2), 4},
        {P({2}), P({1}), ColoredPartition(P({2, 1, 1}), 2), 4},
        {P({1}), P({2, 1}), ColoredPartition(P({2, 1}), 3), 4},
    };
    for (const auto& c : cases) {
        CAPTURE(c.rp.to_string());
        CAPTURE(c.rm.to_string());
        CAPTURE(c.lb.shape().to_string());
        CAPTURE(c.lb.modulus());
        auto op = orbifold_vertex_operator(c.rp, c.rm, c.lb, c.dq);
        auto sc = orbifold_vertex_schur(c.rp, c.rm, c.lb, c.dq);
        auto orc = oracle_vertex(c.rp, c.rm, c.lb, c.dq);
        CHECK(op == sc.truncated(op.truncation()));
        CHECK(op == orc.truncated(op.truncation()));
    }
}

TEST_CASE("loop schur values") {
    SUBCASE("empty shape") {
        auto s = loop_schur(ColoredPartition(Partition(), 2), 4);
        CHECK(s.coefficient(Monomial(2)) == 1);
        CHECK(s.num_terms() == 1);
    }
    SUBCASE("single box at n = 1 is the principal specialization") {
        auto s = loop_schur(ColoredPartition(P({1}), 1), 6);
        auto t = q_color_table(1);
        CHECK(s == geometric(t, s.truncation(), 1));
    }
    SUBCASE("back-solve from the operator route") {
        for (const auto& lb :
             {ColoredPartition(P({2, 1, 1}), 2), ColoredPartition(P({2}), 2),
              ColoredPartition(P({1, 1}), 2)}) {
            long dq = 5;
            auto p = orbifold_vertex_operator(Partition(), Partition(), lb, dq);
            auto s = loop_schur(lb, dq);
            // p = prod q_{j-i}^{i} * s
            Monomial pre(p.table().size());
            int n = lb.modulus();
            for (auto [i, j] : lb.shape().cells()) {
                auto c = static_cast<std::size_t>((((j - i) % n) + n) % n);
                pre.set_exp(c, pre.exp(c) + i);
            }
            auto lhs = s.times_monomial(SignedMonomial{1, pre})
                           .truncated(p.truncation());
            CHECK(lhs == p);
        }
    }
}

TEST_CASE("normalized vertex prefactors") {
    SUBCASE("empty is 1") {
        auto p = normalized_vertex(Partition(), Partition(),
                                   ColoredPartition(Partition(), 2), 4,
                                   VertexMethod::Schur);
        CHECK(p.coefficient(Monomial(2)) == 1);
    }
    SUBCASE("(1,1) at n=2 carries -q_1") {
        auto t = q_color_table(2);
        auto pre = normalized_prefactor(ColoredPartition(P({1, 1}), 2), *t);
        CHECK(pre.sign == -1);
        CHECK(pre.mono == make_monomial(*t, {{"q_1", 1}}));
    }
    SUBCASE("(2) at n=2 carries +1") {
        auto t = q_color_table(2);
        auto pre = normalized_prefactor(ColoredPartition(P({2}), 2), *t);
        CHECK(pre.sign == +1);
        CHECK(pre.mono.is_unit());
    }
}

TEST_CASE("resolution vertex") {
    SUBCASE("all empty at dv = 0") {
        QuotientTuple lam{{Partition(), Partition()}};
        auto p = resolution_vertex(Partition(), Partition(), lam, 4, 0);
        CHECK(p.coefficient(Monomial(2)) == 1);
        CHECK(p.num_terms() == 1);
    }
    SUBCASE("n = 1 chain is a single vertex") {
        QuotientTuple lam{{P({1})}};
        auto p = resolution_vertex(Partition(), Partition(), lam, 5, 0);
        auto direct = orbifold_vertex_schur(Partition(), Partition(),
                                            ColoredPartition(P({1}), 1), 5);
        for (long k = 0; k <= 5; ++k) {
            Monomial m(p.table().size());
            m.set_exp(0, static_cast<int32_t>(k));
            Monomial md(1);
            md.set_exp(0, static_cast<int32_t>(k));
            CHECK(p.coefficient(m) == direct.coefficient(md));
        }
    }
    SUBCASE("setting dv = 0 collapses the tau sum") {
        QuotientTuple lam{{P({1}), Partition()}};
        auto p = resolution_vertex(Partition(), Partition(), lam, 4, 0);
        // only the tau = empty term survives: P1_{0,0,(1)} * P1_{0,0,0}
        auto direct = orbifold_vertex_schur(Partition(), Partition(),
                                            ColoredPartition(P({1}), 1), 4);
        for (long k = 0; k <= 4; ++k) {
            Monomial m(p.table().size());
            m.set_exp(0, static_cast<int32_t>(k));
            Monomial md(1);
            md.set_exp(0, static_cast<int32_t>(k));
            CHECK(p.coefficient(m) == direct.coefficient(md));
        }
    }
}
