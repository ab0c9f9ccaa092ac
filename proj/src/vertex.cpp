#include "otv/vertex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "otv/enumeration.hpp"
#include "otv/frakq.hpp"
#include "otv/operators.hpp"

namespace otv {

VariableTablePtr q_color_table(int n) {
    auto t = std::make_shared<VariableTable>();
    for (int c = 0; c < n; ++c)
        t->add("q_" + std::to_string(c), VarKind::Box);
    return t;
}

long vertex_box_floor(const Partition& rho_plus, const Partition& rho_minus,
                      const ColoredPartition& lambda_bar) {
    auto xi = leg_overlap_counts(rho_minus, rho_plus.conjugate(),
                                 lambda_bar.shape().conjugate(),
                                 lambda_bar.modulus());
    long total = 0;
    for (long v : xi) total += v;
    return total;
}

namespace {

// Positive slope positions t >= 0 of lambda-bar, descending.
std::vector<long> positive_slope_positions(const ColoredPartition& lb) {
    std::vector<long> out;
    for (long t = lb.shape().part(0) - 1; t >= 0; --t)
        if (lb.slope(t) == +1) out.push_back(t);
    return out;
}

struct OperatorWindowParams {
    long T;
    long cap;
    Truncation wide;
    Truncation window;  // contract window of the result
};

OperatorWindowParams operator_params(const Partition& rho_plus,
                                     const Partition& rho_minus,
                                     const ColoredPartition& lambda_bar,
                                     long dq) {
    const long len = lambda_bar.shape().num_parts();
    const long top = lambda_bar.shape().part(0);
    const long max_gain = std::max<long>(0, top - 1);
    long s_plus_sum = 0;
    for (long t = 0; t < top; ++t)
        if (lambda_bar.slope(t) == +1) s_plus_sum += t;
    long l_minus_sum = 0;  // negative-cost creation capacity
    for (long t = -len; t < 0; ++t)
        if (lambda_bar.slope(t) == -1) l_minus_sum += -t;
    long cap = dq + std::max(rho_plus.size(), rho_minus.size()) +
               rho_plus.size() * max_gain + l_minus_sum + 2;
    long floor_final = vertex_box_floor(rho_plus, rho_minus, lambda_bar);
    long dip = len * rho_minus.size();
    OperatorWindowParams p;
    p.T = dq + rho_plus.size() + rho_minus.size() +
          static_cast<long>(lambda_bar.modulus()) * len + 2;
    p.cap = cap;
    // The raw expectation is needed up to dq + |rho+| (prefactor shift), and
    // the vacuum denominator up to dq - floor (ratio reach); partial weights
    // can exceed the target by (state size)*max_gain + dip above, and can
    // dip below any final value by cap boxes per negative-cost time.
    long target = dq + rho_plus.size() - std::min<long>(0, floor_final);
    p.wide = Truncation{target + cap * max_gain + dip + 2,
                        0,
                        std::min<long>(0, floor_final) -
                            cap * (s_plus_sum + l_minus_sum) - 2};
    p.window = Truncation{dq, 0, std::min<long>(0, floor_final)};
    return p;
}

// Unreduced V over the finite operator window [-T, T-1].  prune_target is
// the largest useful box degree of the raw expectation (before the
// q_0^{-|rho+|} prefactor).
LaurentSeries vertex_V_window(const Partition& rho_plus,
                              const Partition& rho_minus,
                              const ColoredPartition& lambda_bar,
                              long prune_target, long T, VariableTablePtr table,
                              Truncation wide, long cap) {
    const int n = lambda_bar.modulus();
    const long len = lambda_bar.shape().num_parts();
    const long bra_size = rho_minus.size();
    const long dip = len * bra_size;
    auto s_plus = positive_slope_positions(lambda_bar);

    // Sound upper bound for the box degree a term can still shed before the
    // bra pairing: all current boxes removed at the best remaining positive
    // slope time; once none remain (t = 0 counts as a free exit), every box
    // beyond the bra costs at least one unit, and boxes the bra still needs
    // may arrive below cost.
    auto ceiling = [&](long size, long t) {
        long best = -1;
        for (long s : s_plus)
            if (s < t) {
                best = s;
                break;
            }
        if (best >= 0) return prune_target + size * best + dip;
        return prune_target + dip - std::max<long>(0, size - bra_size);
    };

    PartitionState state = PartitionState::basis(table, wide, cap, rho_plus);
    for (long t = T - 1; t >= -T; --t) {
        int sl = lambda_bar.slope(t);
        SignedMonomial arg{1, frak_q(t, n, *table).pow(-sl)};
        state = sl > 0 ? apply_gamma_plus(arg, state)
                       : apply_gamma_minus(arg, state);
        PartitionState pruned(table, wide, cap);
        for (const auto& [sigma, coeff] : state.terms()) {
            long hi = ceiling(sigma.size(), t);
            LaurentSeries kept(table, wide);
            for (const auto& [m, c] : coeff.terms())
                if (m.box_degree(*table) <= hi) kept.add_term(m, c);
            pruned.add(sigma, kept);
        }
        state = std::move(pruned);
    }

    Monomial prefix(table->size());
    prefix.set_exp(0, static_cast<int32_t>(-rho_plus.size()));
    return state.coefficient(rho_minus.conjugate())
        .times_monomial(SignedMonomial{1, prefix});
}

std::map<std::tuple<int, long, long, long, long>, LaurentSeries>&
vacuum_cache() {
    static std::map<std::tuple<int, long, long, long, long>, LaurentSeries> m;
    return m;
}
std::mutex vacuum_mutex;

LaurentSeries vacuum_V_window(int n, long target, long T,
                              VariableTablePtr table, Truncation wide) {
    std::lock_guard<std::mutex> lock(vacuum_mutex);
    auto key = std::make_tuple(n, target, T, wide.max_box, wide.min_box);
    auto& cache = vacuum_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto v = vertex_V_window(Partition(), Partition(),
                             ColoredPartition(Partition(), n), target, T,
                             table, wide, target);
    cache.emplace(key, v);
    return v;
}

}  // namespace

LaurentSeries orbifold_vertex_operator(const Partition& rho_plus,
                                       const Partition& rho_minus,
                                       const ColoredPartition& lambda_bar,
                                       long dq) {
    lambda_bar.require_balanced();
    auto params = operator_params(rho_plus, rho_minus, lambda_bar, dq);
    auto table = q_color_table(lambda_bar.modulus());
    long floor_final = params.window.min_box;
    long num_target = dq + rho_plus.size();
    long vac_target = dq - floor_final;

    auto reduced = [&](long T) {
        LaurentSeries v =
            vertex_V_window(rho_plus, rho_minus, lambda_bar, num_target, T,
                            table, params.wide, params.cap);
        LaurentSeries v0 = vacuum_V_window(lambda_bar.modulus(), vac_target, T,
                                           table, params.wide);
        return (v * v0.inverted()).truncated(params.window);
    };

    LaurentSeries p = reduced(params.T);
    LaurentSeries p2 = reduced(2 * params.T);
    if (!(p == p2))
        throw std::logic_error(
            "operator vertex failed to stabilize when the window doubled");
    return p;
}

LaurentSeries empty_leg_vertex_product(const ColoredPartition& lambda_bar,
                                       VariableTablePtr table,
                                       Truncation trunc) {
    const int n = lambda_bar.modulus();
    const long dq = trunc.max_box;
    const long len = lambda_bar.shape().num_parts();
    const long top = lambda_bar.shape().part(0);
    LaurentSeries num = LaurentSeries::one(table, trunc);
    LaurentSeries den = LaurentSeries::one(table, trunc);
    // Commutation factors whose presence differs between the slope pattern
    // of lambda-bar and the vacuum pattern; factors at distance > dq are 1
    // within the window.
    const long lo = -len - 1 - dq, hi = top + dq;
    for (long t1 = lo; t1 <= hi; ++t1) {
        for (long t0 = t1 + 1; t0 <= t1 + dq; ++t0) {
            bool in_lambda =
                lambda_bar.slope(t1) == +1 && lambda_bar.slope(t0) == -1;
            bool in_vacuum = t1 < 0 && t0 >= 0;
            if (in_lambda == in_vacuum) continue;
            Monomial m =
                frak_q(t0, n, *table).times(frak_q(t1, n, *table).inverse());
            LaurentSeries f = LaurentSeries::one(table, trunc);
            f.add_term(m, -1);
            if (in_lambda)
                den = den * f;
            else
                num = num * f;
        }
    }
    return num * den.inverted();
}

LaurentSeries loop_schur(const ColoredPartition& lambda_bar, long dq) {
    auto table = q_color_table(lambda_bar.modulus());
    long shift = 0;
    for (auto [i, j] : lambda_bar.shape().cells()) {
        (void)j;
        shift -= i;
    }
    Truncation inner{dq - shift, 0, std::min<long>(0, shift)};
    LaurentSeries p = empty_leg_vertex_product(lambda_bar, table, inner);
    Monomial pre(table->size());
    for (auto [i, j] : lambda_bar.shape().cells()) {
        int c = lambda_bar.color(i, j);
        pre.set_exp(c, pre.exp(c) - i);
    }
    return p.times_monomial(SignedMonomial{1, pre})
        .truncated(Truncation{dq, 0, std::min<long>(0, shift)});
}

LaurentSeries skew_schur(const Partition& rho, const Partition& omega,
                         const std::vector<Monomial>& alphabet,
                         VariableTablePtr table, Truncation trunc) {
    if (!rho.contains(omega)) return LaurentSeries::zero(table, trunc);
    const int l = rho.num_parts();
    if (l == 0) return LaurentSeries::one(table, trunc);
    int hmax = rho.part(0) + l;
    std::vector<LaurentSeries> h(static_cast<std::size_t>(hmax) + 1,
                                 LaurentSeries::zero(table, trunc));
    h[0] = LaurentSeries::one(table, trunc);
    for (const auto& x : alphabet)
        for (int k = 1; k <= hmax; ++k)
            h[static_cast<std::size_t>(k)] +=
                h[static_cast<std::size_t>(k - 1)].times_monomial(
                    SignedMonomial{1, x});

    LaurentSeries zero = LaurentSeries::zero(table, trunc);
    std::vector<std::vector<const LaurentSeries*>> mat(
        static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        mat[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(l));
        for (int j = 0; j < l; ++j) {
            int deg = rho.part(i) - omega.part(j) - i + j;
            mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (deg < 0 || deg > hmax) ? &zero
                                        : &h[static_cast<std::size_t>(deg)];
        }
    }
    std::function<LaurentSeries(std::vector<int>, int)> det =
        [&](std::vector<int> cols, int row) -> LaurentSeries {
        if (cols.empty()) return LaurentSeries::one(table, trunc);
        LaurentSeries acc = LaurentSeries::zero(table, trunc);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            const LaurentSeries* e =
                mat[static_cast<std::size_t>(row)]
                   [static_cast<std::size_t>(cols[p])];
            if (e->is_zero()) continue;
            std::vector<int> rest;
            for (std::size_t q2 = 0; q2 < cols.size(); ++q2)
                if (q2 != p) rest.push_back(cols[q2]);
            LaurentSeries sub = det(rest, row + 1) * (*e);
            acc = (p % 2 == 0) ? acc + sub : acc - sub;
        }
        return acc;
    };
    std::vector<int> cols(static_cast<std::size_t>(l));
    for (int j = 0; j < l; ++j) cols[static_cast<std::size_t>(j)] = j;
    return det(cols, 0);
}

LaurentSeries skew_schur_tableaux(const Partition& rho, const Partition& omega,
                                  const std::vector<Monomial>& alphabet,
                                  VariableTablePtr table, Truncation trunc) {
    if (!rho.contains(omega)) return LaurentSeries::zero(table, trunc);
    const int R = static_cast<int>(alphabet.size());
    const int l = rho.num_parts();
    std::vector<std::vector<int>> entry(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i)
        entry[static_cast<std::size_t>(i)].assign(
            static_cast<std::size_t>(rho.part(i)), -1);
    LaurentSeries out = LaurentSeries::zero(table, trunc);
    std::function<void(int, int, Monomial)> rec = [&](int i, int j,
                                                      Monomial w) {
        if (i == l) {
            out.add_term(w, 1);
            return;
        }
        if (j >= rho.part(i)) {
            rec(i + 1, i + 1 < l ? omega.part(i + 1) : 0, std::move(w));
            return;
        }
        auto& row = entry[static_cast<std::size_t>(i)];
        int lo = 0;
        if (j > omega.part(i)) lo = std::max(lo, row[static_cast<std::size_t>(j - 1)]);
        if (i > 0 && j < rho.part(i - 1) && j >= omega.part(i - 1))
            lo = std::max(
                lo, entry[static_cast<std::size_t>(i - 1)]
                         [static_cast<std::size_t>(j)] + 1);
        for (int v = lo; v < R; ++v) {
            row[static_cast<std::size_t>(j)] = v;
            rec(i, j + 1, w.times(alphabet[static_cast<std::size_t>(v)]));
            row[static_cast<std::size_t>(j)] = -1;
        }
    };
    rec(0, l > 0 ? omega.part(0) : 0, Monomial(table->size()));
    return out;
}

namespace {

std::vector<Monomial> shifted_alphabet(const Partition& lambda_rows, int n,
                                       const VariableTable& table, int R) {
    std::vector<Monomial> xs;
    xs.reserve(static_cast<std::size_t>(R));
    for (int i = 0; i < R; ++i)
        xs.push_back(frak_q(i - lambda_rows.part(i), n, table));
    return xs;
}

std::vector<std::optional<SignedMonomial>> bar_rules(
    const VariableTablePtr& table, int n) {
    std::vector<std::optional<SignedMonomial>> rules(table->size());
    for (int i = 0; i < n; ++i) {
        Monomial m(table->size());
        m.set_exp(static_cast<std::size_t>((n - i) % n), 1);
        rules[static_cast<std::size_t>(i)] = SignedMonomial{1, m};
    }
    return rules;
}

std::vector<Partition> subpartitions_within(const Partition& a,
                                            const Partition& b, long cap) {
    std::vector<Partition> out;
    std::vector<int> acc;
    std::function<void(int, long)> rec = [&](int row, long sz) {
        out.push_back(Partition(acc));
        int maxrow = std::min(a.part(row), b.part(row));
        if (row > 0) maxrow = std::min(maxrow, acc[static_cast<std::size_t>(row - 1)]);
        for (int v = 1; v <= maxrow; ++v) {
            if (sz + v > cap) break;
            acc.push_back(v);
            rec(row + 1, sz + v);
            acc.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

LaurentSeries schur_route_once(const Partition& rho_plus,
                               const Partition& rho_minus,
                               const ColoredPartition& lambda_bar, long dq,
                               int R) {
    const int n = lambda_bar.modulus();
    auto table = q_color_table(n);
    long floor_final = vertex_box_floor(rho_plus, rho_minus, lambda_bar);
    // Alphabet entries reach box degree -lambda_bar_0 per cell; pad so that
    // intermediate products stay faithful in the window.
    long pad = (rho_plus.size() + rho_minus.size() + 1) *
                   (lambda_bar.shape().part(0) + 1) +
               dq + 2;
    Truncation wide{dq + pad, 0, std::min<long>(0, floor_final) - pad};

    LaurentSeries p_empty = empty_leg_vertex_product(lambda_bar, table, wide);
    auto xs_plus = shifted_alphabet(lambda_bar.shape(), n, *table, R);
    auto xs_minus =
        shifted_alphabet(lambda_bar.shape().conjugate(), n, *table, R);

    Partition rmc = rho_minus.conjugate();
    auto omegas = subpartitions_within(
        rho_plus, rmc, std::min(rho_plus.size(), rho_minus.size()));
    auto bar = bar_rules(table, n);
    LaurentSeries sum = LaurentSeries::zero(table, wide);
    for (const auto& omega : omegas) {
        LaurentSeries s_plus = skew_schur(rho_plus, omega, xs_plus, table, wide);
        LaurentSeries s_plus_bar = s_plus.substituted(bar, table, wide);
        LaurentSeries s_minus = skew_schur(rmc, omega, xs_minus, table, wide);
        Monomial q0inv(table->size());
        q0inv.set_exp(0, static_cast<int32_t>(-omega.size()));
        sum += (s_plus_bar * s_minus).times_monomial(SignedMonomial{1, q0inv});
    }
    return (p_empty * sum)
        .truncated(Truncation{dq, 0, std::min<long>(0, floor_final)});
}

}  // namespace

LaurentSeries orbifold_vertex_schur(const Partition& rho_plus,
                                    const Partition& rho_minus,
                                    const ColoredPartition& lambda_bar,
                                    long dq) {
    lambda_bar.require_balanced();
    int R = static_cast<int>(dq + rho_plus.size() + rho_minus.size() +
                             lambda_bar.shape().num_parts() + 2);
    LaurentSeries a = schur_route_once(rho_plus, rho_minus, lambda_bar, dq, R);
    LaurentSeries b =
        schur_route_once(rho_plus, rho_minus, lambda_bar, dq, 2 * R);
    if (!(a == b))
        throw std::logic_error(
            "schur vertex failed to stabilize when the alphabet doubled");
    return a;
}

LaurentSeries orbifold_vertex(const Partition& rho_plus,
                              const Partition& rho_minus,
                              const ColoredPartition& lambda_bar, long dq,
                              VertexMethod method) {
    switch (method) {
        case VertexMethod::Operator:
            return orbifold_vertex_operator(rho_plus, rho_minus, lambda_bar, dq);
        case VertexMethod::Schur:
            return orbifold_vertex_schur(rho_plus, rho_minus, lambda_bar, dq);
        case VertexMethod::Oracle:
            return oracle_vertex(rho_plus, rho_minus, lambda_bar, dq);
    }
    throw std::logic_error("unknown vertex method");
}

namespace {

std::map<std::string, LaurentSeries>& vertex_memo() {
    static std::map<std::string, LaurentSeries> m;
    return m;
}
std::mutex vertex_memo_mutex;

std::string vertex_key(const Partition& rp, const Partition& rm,
                       const ColoredPartition& lb, long dq,
                       VertexMethod method) {
    std::ostringstream os;
    os << static_cast<int>(method) << '|' << lb.modulus() << '|' << dq << '|'
       << rp.to_string() << '|' << rm.to_string() << '|'
       << lb.shape().to_string();
    return os.str();
}

}  // namespace

LaurentSeries orbifold_vertex_cached(const Partition& rho_plus,
                                     const Partition& rho_minus,
                                     const ColoredPartition& lambda_bar,
                                     long dq, VertexMethod method) {
    std::string key = vertex_key(rho_plus, rho_minus, lambda_bar, dq, method);
    {
        std::lock_guard<std::mutex> lock(vertex_memo_mutex);
        auto it = vertex_memo().find(key);
        if (it != vertex_memo().end()) return it->second;
    }
    LaurentSeries v = orbifold_vertex(rho_plus, rho_minus, lambda_bar, dq, method);
    std::lock_guard<std::mutex> lock(vertex_memo_mutex);
    vertex_memo().emplace(key, v);
    return v;
}

SignedMonomial normalized_prefactor(const ColoredPartition& lambda_bar,
                                    const VariableTable& table) {
    Monomial m(table.size());
    const int n = lambda_bar.modulus();
    for (auto [i, j] : lambda_bar.shape().cells()) {
        auto c = static_cast<std::size_t>((((j - i) % n) + n) % n);
        m.set_exp(c, m.exp(c) + i);
    }
    int sign = lambda_bar.size() == 0 ? 1 : chi_over_dim(lambda_bar);
    return SignedMonomial{sign, m};
}

LaurentSeries normalized_vertex(const Partition& rho_plus,
                                const Partition& rho_minus,
                                const ColoredPartition& lambda_bar, long dq,
                                VertexMethod method) {
    LaurentSeries p = orbifold_vertex(rho_plus, rho_minus, lambda_bar, dq, method);
    SignedMonomial pre = normalized_prefactor(lambda_bar, p.table());
    long shift = pre.mono.box_degree(p.table());
    Truncation tr{dq, 0, std::min<long>(0, p.truncation().min_box + shift)};
    LaurentSeries out(p.table_ptr(), tr);
    for (const auto& [m, c] : p.terms())
        out.add_term(m.times(pre.mono), pre.sign > 0 ? c : -c);
    return out;
}

VariableTablePtr resolution_table(int n) {
    auto t = std::make_shared<VariableTable>();
    t->add("q", VarKind::Box);
    for (int i = 1; i < n; ++i)
        t->add("v_" + std::to_string(i), VarKind::Novikov);
    return t;
}

namespace {

// P^1 on the single-variable table {q_0}, cached by inputs and window.
LaurentSeries p1_cached(const Partition& rp, const Partition& rm,
                        const Partition& lam, long dq) {
    static std::map<std::string, LaurentSeries> memo;
    static std::mutex mutex;
    std::ostringstream os;
    os << rp.to_string() << '|' << rm.to_string() << '|' << lam.to_string()
       << '|' << dq;
    std::string key = os.str();
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    LaurentSeries p = orbifold_vertex_schur(rp, rm, ColoredPartition(lam, 1), dq);
    std::lock_guard<std::mutex> lock(mutex);
    memo.emplace(key, p);
    return p;
}

void tau_tuples(int k, long cap, std::vector<std::vector<Partition>>& out) {
    std::vector<Partition> acc;
    std::function<void(int, long)> rec = [&](int idx, long left) {
        if (idx == k) {
            out.push_back(acc);
            return;
        }
        for (long s = 0; s <= left; ++s) {
            for (const auto& p : partitions_of(static_cast<int>(s))) {
                acc.push_back(p);
                rec(idx + 1, left - s);
                acc.pop_back();
            }
        }
    };
    rec(0, cap);
}

}  // namespace

LaurentSeries resolution_vertex(const Partition& rho_plus,
                                const Partition& rho_minus,
                                const QuotientTuple& lambdas, long dq, long dv,
                                bool normalized, long box_floor_pad) {
    const int n = lambdas.modulus();
    if (n < 1) throw std::invalid_argument("empty quotient tuple");
    auto table = resolution_table(n);

    // Generous per-factor overlap floor: legs of each P^1 are bounded by the
    // rho's and the intermediate tau sizes (<= dv).
    long M = dv + rho_plus.size() + rho_minus.size() + 1;
    long floor_total = -box_floor_pad;
    for (const auto& lam : lambdas.components)
        floor_total -= M * M + 2 * M * lam.size() + 1;

    Truncation work{dq - floor_total, dv, floor_total};
    long p1_dq = dq - floor_total;

    auto lift = [&](const LaurentSeries& p1) {
        std::vector<std::optional<SignedMonomial>> rules(1);
        Monomial q1(table->size());
        q1.set_exp(0, 1);
        rules[0] = SignedMonomial{1, q1};
        return p1.substituted(rules, table, work);
    };

    std::vector<std::vector<Partition>> tuples;
    tau_tuples(n - 1, dv, tuples);

    LaurentSeries total = LaurentSeries::zero(table, work);
    for (const auto& taus : tuples) {
        LaurentSeries term = LaurentSeries::one(table, work);
        for (int k = 0; k < n; ++k) {
            const Partition& left =
                (k == n - 1) ? rho_plus : taus[static_cast<std::size_t>(k)];
            const Partition right =
                (k == 0) ? rho_minus
                         : taus[static_cast<std::size_t>(k - 1)].conjugate();
            term = term *
                   lift(p1_cached(left, right,
                                  lambdas.components[static_cast<std::size_t>(k)],
                                  p1_dq));
            if (k < n - 1) {
                Monomial qv(table->size());
                long sz = taus[static_cast<std::size_t>(k)].size();
                qv.set_exp(0, static_cast<int32_t>(sz));
                qv.set_exp(static_cast<std::size_t>(k + 1),
                           static_cast<int32_t>(sz));
                term = term.times_monomial(SignedMonomial{1, qv});
            }
        }
        total += term;
    }
    if (normalized) {
        long e = 0;
        for (const auto& lam : lambdas.components) e += lam.row_index_sum();
        Monomial m(table->size());
        m.set_exp(0, static_cast<int32_t>(e));
        total = total.times_monomial(SignedMonomial{1, m});
    }
    return total.truncated(Truncation{dq, dv, floor_total});
}

}  // namespace otv
