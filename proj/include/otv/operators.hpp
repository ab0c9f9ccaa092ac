#ifndef OTV_OPERATORS_HPP
#define OTV_OPERATORS_HPP

#include <map>
#include <optional>
#include <vector>

#include "otv/partition.hpp"
#include "otv/series.hpp"

namespace otv {

// Finite formal linear combination of partitions with series coefficients,
// truncated both by the series window and by a partition size cap.
class PartitionState {
public:
    PartitionState(VariableTablePtr table, Truncation trunc, long size_cap);

    static PartitionState basis(VariableTablePtr table, Truncation trunc,
                                long size_cap, const Partition& p);

    const VariableTablePtr& table_ptr() const { return table_; }
    const Truncation& truncation() const { return trunc_; }
    long size_cap() const { return size_cap_; }
    const std::map<Partition, LaurentSeries>& terms() const { return terms_; }

    void add(const Partition& p, const LaurentSeries& coeff);
    LaurentSeries coefficient(const Partition& p) const;

    bool operator==(const PartitionState& o) const {
        return trunc_ == o.trunc_ && terms_ == o.terms_;
    }

private:
    VariableTablePtr table_;
    Truncation trunc_;
    long size_cap_;
    std::map<Partition, LaurentSeries> terms_;
};

// Gamma_{+1}(x): tau -> sum over sigma interlaced below tau of x^{|tau|-|sigma|} sigma.
PartitionState apply_gamma_plus(const SignedMonomial& x, const PartitionState& s);

// Gamma_{-1}(x): tau -> sum over sigma interlaced above tau, |sigma| <= cap.
PartitionState apply_gamma_minus(const SignedMonomial& x, const PartitionState& s);

// Q_k: tau -> q_k^{|tau|} tau.
PartitionState apply_q(int var_index, const PartitionState& s);

struct OperatorFactor {
    enum class Kind { GammaPlus, GammaMinus, Q };
    Kind kind;
    SignedMonomial arg;  // for Gamma factors
    int q_var = -1;      // for Q factors

    static OperatorFactor gamma(int sign, SignedMonomial x) {
        return {sign > 0 ? Kind::GammaPlus : Kind::GammaMinus, std::move(x), -1};
    }
    static OperatorFactor q(int var) { return {Kind::Q, {}, var}; }
};

// Factors listed left-to-right; evaluation applies the rightmost factor to
// the ket first.
using OperatorWord = std::vector<OperatorFactor>;

PartitionState apply_word(const OperatorWord& word, PartitionState state);

// Coefficient of |bra> in word |ket>.
LaurentSeries expectation(const Partition& bra, const OperatorWord& word,
                          const Partition& ket, VariableTablePtr table,
                          Truncation trunc, long size_cap);

// Checks Gamma_i(a) Gamma_j(b) = (1-ab)^{(j-i)/2} Gamma_j(b) Gamma_i(a) on
// all states of size <= state_size, in a window of box-degree <= degree.
bool verify_commutation(const SignedMonomial& a, const SignedMonomial& b,
                        int i, int j, VariableTablePtr table, long degree,
                        int state_size);

// Checks Gamma_j(a) Q_k = Q_k Gamma_j(a q_k^j) on all states of size <= state_size.
bool verify_commutation_q(const SignedMonomial& a, int j, int k_var,
                          VariableTablePtr table, long degree, int state_size);

}  // namespace otv

#endif
