#include "otv/operators.hpp"

#include <stdexcept>

namespace otv {

PartitionState::PartitionState(VariableTablePtr table, Truncation trunc,
                               long size_cap)
    : table_(std::move(table)), trunc_(trunc), size_cap_(size_cap) {
    if (size_cap_ < 0)
        throw std::invalid_argument("partition state requires a size cap");
}

PartitionState PartitionState::basis(VariableTablePtr table, Truncation trunc,
                                     long size_cap, const Partition& p) {
    PartitionState s(table, trunc, size_cap);
    s.add(p, LaurentSeries::one(table, trunc));
    return s;
}

void PartitionState::add(const Partition& p, const LaurentSeries& coeff) {
    if (p.size() > size_cap_) return;
    if (coeff.is_zero()) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentSeries PartitionState::coefficient(const Partition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? LaurentSeries::zero(table_, trunc_) : it->second;
}

namespace {

// Enumerates sigma with sigma_i in [lo_i, hi_i] (weak decrease is implied by
// interlacing bounds); calls f(sigma_parts, |sigma|).
template <typename F>
void enumerate_choices(const std::vector<std::pair<int, int>>& bounds,
                       std::size_t idx, std::vector<int>& acc, long size,
                       const F& f) {
    if (idx == bounds.size()) {
        f(acc, size);
        return;
    }
    auto [lo, hi] = bounds[idx];
    for (int v = hi; v >= lo; --v) {
        acc.push_back(v);
        enumerate_choices(bounds, idx + 1, acc, size + v, f);
        acc.pop_back();
    }
}

}  // namespace

PartitionState apply_gamma_plus(const SignedMonomial& x,
                                const PartitionState& s) {
    PartitionState out(s.table_ptr(), s.truncation(), s.size_cap());
    for (const auto& [tau, coeff] : s.terms()) {
        int m = tau.num_parts();
        std::vector<std::pair<int, int>> bounds;
        bounds.reserve(m);
        for (int i = 0; i < m; ++i) bounds.emplace_back(tau.part(i + 1), tau.part(i));
        std::vector<int> acc;
        enumerate_choices(bounds, 0, acc, 0,
                          [&](const std::vector<int>& parts, long sz) {
                              long d = tau.size() - sz;
                              LaurentSeries w = coeff.times_monomial(x.pow(d));
                              if (w.is_zero()) return;
                              out.add(Partition(parts), w);
                          });
    }
    return out;
}

PartitionState apply_gamma_minus(const SignedMonomial& x,
                                 const PartitionState& s) {
    PartitionState out(s.table_ptr(), s.truncation(), s.size_cap());
    for (const auto& [tau, coeff] : s.terms()) {
        int m = tau.num_parts();
        long cap = s.size_cap();
        if (tau.size() > cap) continue;
        // sigma_0 in [tau_0, tau_0 + headroom], sigma_i in [tau_i, tau_{i-1}].
        long fixed_min = tau.size();
        long headroom = cap - fixed_min;
        std::vector<std::pair<int, int>> bounds;
        bounds.reserve(m + 1);
        bounds.emplace_back(tau.part(0),
                            static_cast<int>(tau.part(0) + headroom));
        for (int i = 1; i <= m; ++i) bounds.emplace_back(tau.part(i), tau.part(i - 1));
        std::vector<int> acc;
        enumerate_choices(bounds, 0, acc, 0,
                          [&](const std::vector<int>& parts, long sz) {
                              if (sz > cap) return;
                              long d = sz - tau.size();
                              LaurentSeries w = coeff.times_monomial(x.pow(d));
                              if (w.is_zero()) return;
                              out.add(Partition(parts), w);
                          });
    }
    return out;
}

PartitionState apply_q(int var_index, const PartitionState& s) {
    PartitionState out(s.table_ptr(), s.truncation(), s.size_cap());
    for (const auto& [tau, coeff] : s.terms()) {
        Monomial m(s.table_ptr()->size());
        m.set_exp(static_cast<std::size_t>(var_index),
                  static_cast<int32_t>(tau.size()));
        out.add(tau, coeff.times_monomial(SignedMonomial{1, m}));
    }
    return out;
}

PartitionState apply_word(const OperatorWord& word, PartitionState state) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        switch (it->kind) {
            case OperatorFactor::Kind::GammaPlus:
                state = apply_gamma_plus(it->arg, state);
                break;
            case OperatorFactor::Kind::GammaMinus:
                state = apply_gamma_minus(it->arg, state);
                break;
            case OperatorFactor::Kind::Q:
                state = apply_q(it->q_var, state);
                break;
        }
    }
    return state;
}

LaurentSeries expectation(const Partition& bra, const OperatorWord& word,
                          const Partition& ket, VariableTablePtr table,
                          Truncation trunc, long size_cap) {
    PartitionState s = PartitionState::basis(table, trunc, size_cap, ket);
    s = apply_word(word, std::move(s));
    return s.coefficient(bra);
}

namespace {

PartitionState apply_two_gammas(const SignedMonomial& first_applied,
                                int sign_first, const SignedMonomial& second,
                                int sign_second, const PartitionState& in) {
    PartitionState mid = sign_first > 0 ? apply_gamma_plus(first_applied, in)
                                        : apply_gamma_minus(first_applied, in);
    return sign_second > 0 ? apply_gamma_plus(second, mid)
                           : apply_gamma_minus(second, mid);
}

}  // namespace

bool verify_commutation(const SignedMonomial& a, const SignedMonomial& b,
                        int i, int j, VariableTablePtr table, long degree,
                        int state_size) {
    Truncation tr{degree, 0, 0};
    long cap = degree + state_size + 2;
    for (const auto& tau : partitions_up_to(state_size)) {
        PartitionState in = PartitionState::basis(table, tr, cap, tau);
        // LHS: Gamma_i(a) Gamma_j(b) |tau>, rightmost first.
        PartitionState lhs = apply_two_gammas(b, j, a, i, in);
        PartitionState rhs = apply_two_gammas(a, i, b, j, in);
        // factor (1 - ab)^{(j-i)/2}
        if (j - i != 0) {
            LaurentSeries f = LaurentSeries::one(table, tr);
            f.add_term(a.mono.times(b.mono), -a.sign * b.sign);
            if (j - i < 0) {
                // multiply RHS by (1-ab)^{-1}
                f = f.inverted();
            }
            PartitionState scaled(table, tr, cap);
            for (const auto& [p, c] : rhs.terms()) scaled.add(p, c * f);
            rhs = std::move(scaled);
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool verify_commutation_q(const SignedMonomial& a, int j, int k_var,
                          VariableTablePtr table, long degree, int state_size) {
    Truncation tr{degree, 0, 0};
    long cap = degree + state_size + 2;
    Monomial qk(table->size());
    qk.set_exp(static_cast<std::size_t>(k_var), 1);
    SignedMonomial shifted = a.times(SignedMonomial{1, j > 0 ? qk : qk.inverse()});
    for (const auto& tau : partitions_up_to(state_size)) {
        PartitionState in = PartitionState::basis(table, tr, cap, tau);
        // LHS: Gamma_j(a) Q_k |tau>
        PartitionState lhs = apply_q(k_var, in);
        lhs = j > 0 ? apply_gamma_plus(a, lhs) : apply_gamma_minus(a, lhs);
        // RHS: Q_k Gamma_j(a q_k^j) |tau>
        PartitionState rhs = j > 0 ? apply_gamma_plus(shifted, in)
                                   : apply_gamma_minus(shifted, in);
        rhs = apply_q(k_var, rhs);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace otv
