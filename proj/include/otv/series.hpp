#ifndef OTV_SERIES_HPP
#define OTV_SERIES_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace otv {

using Int = boost::multiprecision::cpp_int;

// Grading class of a formal variable.  Box variables count toward the
// q-degree of a monomial, Novikov variables toward the curve-class degree,
// Formal variables toward neither.
enum class VarKind { Box, Novikov, Formal };

struct VariableTable {
    std::vector<std::string> names;
    std::vector<VarKind> kinds;
    // Grading weight within the variable's class.  A plain q-variable has
    // box weight 1; a variable standing for the product q_0...q_{n-1} gets
    // box weight n so that truncation is consistent across substitutions.
    std::vector<int> weights;

    int add(std::string name, VarKind kind, int weight = 1);
    int find(std::string_view name) const;          // -1 if absent
    int require(std::string_view name) const;       // throws if absent
    std::size_t size() const { return names.size(); }

    bool operator==(const VariableTable&) const = default;
};

using VariableTablePtr = std::shared_ptr<const VariableTable>;

// Dense exponent vector over a fixed variable table.  Exponents may be
// negative (Laurent monomials).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}

    std::size_t nvars() const { return exps_.size(); }
    int32_t exp(std::size_t v) const { return exps_[v]; }
    void set_exp(std::size_t v, int32_t e) { exps_[v] = e; }

    bool is_unit() const;
    Monomial times(const Monomial& o) const;
    Monomial inverse() const;
    Monomial pow(long k) const;

    long box_degree(const VariableTable& t) const;
    long novikov_degree(const VariableTable& t) const;

    std::string to_string(const VariableTable& t) const;

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<int32_t> exps_;
};

// A monomial with a coefficient restricted to +1/-1; the shape substitution
// rules and vertex-operator arguments take.
struct SignedMonomial {
    int sign = 1;
    Monomial mono;

    SignedMonomial() = default;
    SignedMonomial(int s, Monomial m) : sign(s), mono(std::move(m)) {}

    SignedMonomial times(const SignedMonomial& o) const {
        return {sign * o.sign, mono.times(o.mono)};
    }
    SignedMonomial pow(long k) const {
        return {(k % 2 == 0) ? 1 : sign, mono.pow(k)};
    }
};

// Truncation window.  A term with box-degree b and Novikov-degree d is kept
// iff min_box <= b <= max_box and 0 <= d <= max_nov.
struct Truncation {
    long max_box = 0;
    long max_nov = 0;
    long min_box = 0;

    bool contains(long box, long nov) const {
        return box >= min_box && box <= max_box && nov >= 0 && nov <= max_nov;
    }
    bool operator==(const Truncation&) const = default;
};

// Truncated multivariate Laurent series with exact integer coefficients.
class LaurentSeries {
public:
    LaurentSeries() = default;
    LaurentSeries(VariableTablePtr table, Truncation trunc);

    static LaurentSeries zero(VariableTablePtr table, Truncation trunc);
    static LaurentSeries one(VariableTablePtr table, Truncation trunc);
    static LaurentSeries monomial(VariableTablePtr table, Truncation trunc,
                                  const Monomial& m, Int coeff = 1);

    const VariableTable& table() const { return *table_; }
    const VariableTablePtr& table_ptr() const { return table_; }
    const Truncation& truncation() const { return trunc_; }
    const std::map<Monomial, Int>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }

    // Adds coeff * m if it lies inside the window; silently drops otherwise.
    void add_term(const Monomial& m, const Int& coeff);

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries& operator+=(const LaurentSeries& o);

    LaurentSeries scaled(const Int& c) const;
    LaurentSeries times_monomial(const SignedMonomial& m) const;

    // Multiplicative inverse within the window.  Requires a unique leading
    // term c*m with c = +-1 such that every other term has strictly larger
    // (box, novikov) degree in at least one grading and not smaller in any.
    LaurentSeries inverted() const;

    LaurentSeries truncated(Truncation t) const;

    // Simultaneous substitution var -> signed monomial into a target table.
    // Variables without a rule must exist under the same name in the target.
    LaurentSeries substituted(
        const std::vector<std::optional<SignedMonomial>>& rules,
        VariableTablePtr target, Truncation target_trunc) const;

    Int coefficient(const Monomial& m) const;  // throws outside the window

    // Smallest box degree among stored terms (0 for the zero series).
    long box_floor() const;

    // Terms in canonical order: (box-degree, novikov-degree, lex monomial).
    std::vector<std::pair<Monomial, Int>> canonical_terms() const;
    std::string to_text() const;
    std::string to_json() const;

    bool operator==(const LaurentSeries& o) const;

private:
    void check_compatible(const LaurentSeries& o) const;

    VariableTablePtr table_;
    Truncation trunc_;
    std::map<Monomial, Int> terms_;
};

// Convenience: named-variable monomial builder, e.g. mono(t, {{"q_0",2},{"v",-1}}).
Monomial make_monomial(const VariableTable& t,
                       const std::vector<std::pair<std::string, long>>& exps);

}  // namespace otv

#endif
