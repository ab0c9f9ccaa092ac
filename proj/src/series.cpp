#include "otv/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace otv {

int VariableTable::add(std::string name, VarKind kind, int weight) {
    if (find(name) >= 0)
        throw std::invalid_argument("duplicate variable name: " + name);
    names.push_back(std::move(name));
    kinds.push_back(kind);
    weights.push_back(weight);
    return static_cast<int>(names.size()) - 1;
}

int VariableTable::find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

int VariableTable::require(std::string_view name) const {
    int i = find(name);
    if (i < 0)
        throw std::invalid_argument("unknown variable: " + std::string(name));
    return i;
}

bool Monomial::is_unit() const {
    return std::all_of(exps_.begin(), exps_.end(),
                       [](int32_t e) { return e == 0; });
}

Monomial Monomial::times(const Monomial& o) const {
    if (nvars() != o.nvars())
        throw std::invalid_argument("monomial arity mismatch");
    Monomial r(nvars());
    for (std::size_t i = 0; i < nvars(); ++i)
        r.exps_[i] = exps_[i] + o.exps_[i];
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) r.exps_[i] = -exps_[i];
    return r;
}

Monomial Monomial::pow(long k) const {
    Monomial r(nvars());
    for (std::size_t i = 0; i < nvars(); ++i)
        r.exps_[i] = static_cast<int32_t>(exps_[i] * k);
    return r;
}

long Monomial::box_degree(const VariableTable& t) const {
    long d = 0;
    for (std::size_t i = 0; i < nvars(); ++i)
        if (t.kinds[i] == VarKind::Box) d += static_cast<long>(exps_[i]) * t.weights[i];
    return d;
}

long Monomial::novikov_degree(const VariableTable& t) const {
    long d = 0;
    for (std::size_t i = 0; i < nvars(); ++i)
        if (t.kinds[i] == VarKind::Novikov) d += static_cast<long>(exps_[i]) * t.weights[i];
    return d;
}

std::string Monomial::to_string(const VariableTable& t) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (exps_[i] == 0) continue;
        if (!first) os << ' ';
        os << t.names[i] << '^' << exps_[i];
        first = false;
    }
    if (first) os << '1';
    return os.str();
}

Monomial make_monomial(const VariableTable& t,
                       const std::vector<std::pair<std::string, long>>& exps) {
    Monomial m(t.size());
    for (const auto& [name, e] : exps) {
        int v = t.require(name);
        m.set_exp(v, static_cast<int32_t>(m.exp(v) + e));
    }
    return m;
}

LaurentSeries::LaurentSeries(VariableTablePtr table, Truncation trunc)
    : table_(std::move(table)), trunc_(trunc) {}

LaurentSeries LaurentSeries::zero(VariableTablePtr table, Truncation trunc) {
    return LaurentSeries(std::move(table), trunc);
}

LaurentSeries LaurentSeries::one(VariableTablePtr table, Truncation trunc) {
    LaurentSeries s(table, trunc);
    s.add_term(Monomial(table->size()), 1);
    return s;
}

LaurentSeries LaurentSeries::monomial(VariableTablePtr table, Truncation trunc,
                                      const Monomial& m, Int coeff) {
    LaurentSeries s(table, trunc);
    s.add_term(m, coeff);
    return s;
}

void LaurentSeries::add_term(const Monomial& m, const Int& coeff) {
    if (coeff == 0) return;
    if (!trunc_.contains(m.box_degree(*table_), m.novikov_degree(*table_)))
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void LaurentSeries::check_compatible(const LaurentSeries& o) const {
    if (!table_ || !o.table_)
        throw std::invalid_argument("series without a variable table");
    if (!(*table_ == *o.table_))
        throw std::invalid_argument("incompatible variable tables");
    if (!(trunc_ == o.trunc_))
        throw std::invalid_argument("incompatible truncation windows");
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    check_compatible(o);
    LaurentSeries r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const {
    check_compatible(o);
    LaurentSeries r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r(table_, trunc_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    check_compatible(o);
    LaurentSeries r(table_, trunc_);
    // Iterate over the smaller factor's terms on the outside.
    const LaurentSeries& a = (terms_.size() <= o.terms_.size()) ? *this : o;
    const LaurentSeries& b = (terms_.size() <= o.terms_.size()) ? o : *this;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma.times(mb);
            if (!trunc_.contains(m.box_degree(*table_),
                                 m.novikov_degree(*table_)))
                continue;
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                Int c = ca * cb;
                if (c != 0) r.terms_.emplace(std::move(m), std::move(c));
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

LaurentSeries LaurentSeries::scaled(const Int& c) const {
    LaurentSeries r(table_, trunc_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

LaurentSeries LaurentSeries::times_monomial(const SignedMonomial& sm) const {
    LaurentSeries r(table_, trunc_);
    for (const auto& [m, c] : terms_) {
        Monomial p = m.times(sm.mono);
        if (trunc_.contains(p.box_degree(*table_), p.novikov_degree(*table_)))
            r.terms_.emplace(std::move(p), sm.sign > 0 ? c : -c);
    }
    return r;
}

LaurentSeries LaurentSeries::inverted() const {
    if (terms_.empty())
        throw std::invalid_argument("cannot invert the zero series");
    // Locate the leading term: minimal (box, nov, lex).
    const Monomial* lead = nullptr;
    long lead_box = 0, lead_nov = 0;
    for (const auto& [m, c] : terms_) {
        long b = m.box_degree(*table_);
        long n = m.novikov_degree(*table_);
        if (!lead || std::tuple(b, n, m) < std::tuple(lead_box, lead_nov, *lead)) {
            lead = &m;
            lead_box = b;
            lead_nov = n;
        }
    }
    const Int& lc = terms_.at(*lead);
    if (lc != 1 && lc != -1)
        throw std::invalid_argument(
            "cannot invert: leading coefficient is not +1 or -1");
    // R := 1 - lead^{-1} * this (up to sign); every term must have strictly
    // positive (box + nov) relative to the leading monomial.
    SignedMonomial lead_inv{lc == 1 ? 1 : -1, lead->inverse()};
    LaurentSeries rest = times_monomial(lead_inv);
    {
        Monomial unit(table_->size());
        rest.add_term(unit, -1);  // rest = lead^{-1}*this - 1
    }
    for (const auto& [m, c] : rest.terms_) {
        long b = m.box_degree(*table_);
        long n = m.novikov_degree(*table_);
        if (b < 0 || n < 0 || (b == 0 && n == 0))
            throw std::invalid_argument(
                "cannot invert: no well-defined leading monomial");
    }
    // Geometric series: (1 + rest)^{-1} = sum (-rest)^k.
    LaurentSeries sum = LaurentSeries::one(table_, trunc_);
    LaurentSeries power = LaurentSeries::one(table_, trunc_);
    LaurentSeries neg_rest = -rest;
    long bound = (trunc_.max_box - trunc_.min_box) + trunc_.max_nov + 2;
    for (long k = 0; k < bound; ++k) {
        power = power * neg_rest;
        if (power.is_zero()) break;
        sum += power;
    }
    return sum.times_monomial(lead_inv);
}

LaurentSeries LaurentSeries::truncated(Truncation t) const {
    LaurentSeries r(table_, t);
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    return r;
}

LaurentSeries LaurentSeries::substituted(
    const std::vector<std::optional<SignedMonomial>>& rules,
    VariableTablePtr target, Truncation target_trunc) const {
    if (rules.size() != table_->size())
        throw std::invalid_argument("substitution rules arity mismatch");
    // Identity images for unmapped variables.
    std::vector<SignedMonomial> image(table_->size());
    for (std::size_t v = 0; v < table_->size(); ++v) {
        if (rules[v]) {
            if (rules[v]->mono.nvars() != target->size())
                throw std::invalid_argument(
                    "substitution image over the wrong table");
            image[v] = *rules[v];
        } else {
            int tv = target->find(table_->names[v]);
            if (tv < 0)
                throw std::invalid_argument(
                    "no substitution rule and no matching target variable: " +
                    table_->names[v]);
            Monomial m(target->size());
            m.set_exp(tv, 1);
            image[v] = SignedMonomial{1, std::move(m)};
        }
    }
    LaurentSeries r(target, target_trunc);
    for (const auto& [m, c] : terms_) {
        SignedMonomial acc{1, Monomial(target->size())};
        for (std::size_t v = 0; v < table_->size(); ++v) {
            int32_t e = m.exp(v);
            if (e != 0) acc = acc.times(image[v].pow(e));
        }
        long b = acc.mono.box_degree(*target);
        long n = acc.mono.novikov_degree(*target);
        if (b < target_trunc.min_box || n < 0)
            throw std::out_of_range(
                "substitution produced a term below the truncation floor");
        r.add_term(acc.mono, acc.sign > 0 ? c : -c);
    }
    return r;
}

Int LaurentSeries::coefficient(const Monomial& m) const {
    long b = m.box_degree(*table_);
    long n = m.novikov_degree(*table_);
    if (!trunc_.contains(b, n))
        throw std::out_of_range("monomial outside the truncation window");
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
}

long LaurentSeries::box_floor() const {
    long r = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        long b = m.box_degree(*table_);
        if (first || b < r) r = b;
        first = false;
    }
    return r;
}

std::vector<std::pair<Monomial, Int>> LaurentSeries::canonical_terms() const {
    std::vector<std::pair<Monomial, Int>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [this](const auto& a, const auto& b) {
        long ba = a.first.box_degree(*table_), bb = b.first.box_degree(*table_);
        if (ba != bb) return ba < bb;
        long na = a.first.novikov_degree(*table_),
             nb = b.first.novikov_degree(*table_);
        if (na != nb) return na < nb;
        // ties broken with higher powers of earlier variables first
        return b.first < a.first;
    });
    return v;
}

std::string LaurentSeries::to_text() const {
    if (terms_.empty()) return "0\n";
    std::ostringstream os;
    for (const auto& [m, c] : canonical_terms())
        os << c.str() << ' ' << m.to_string(*table_) << '\n';
    return os.str();
}

std::string LaurentSeries::to_json() const {
    std::ostringstream os;
    os << "{\"terms\":[";
    bool first = true;
    for (const auto& [m, c] : canonical_terms()) {
        if (!first) os << ',';
        first = false;
        os << "{\"coeff\":\"" << c.str() << "\",\"exps\":{";
        bool f2 = true;
        for (std::size_t v = 0; v < m.nvars(); ++v) {
            if (m.exp(v) == 0) continue;
            if (!f2) os << ',';
            f2 = false;
            os << '"' << table_->names[v] << "\":" << m.exp(v);
        }
        os << "}}";
    }
    os << "],\"truncation\":{\"dq\":" << trunc_.max_box
       << ",\"dv\":" << trunc_.max_nov << ",\"dlow\":" << trunc_.min_box
       << "}}";
    return os.str();
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    return *table_ == *o.table_ && trunc_ == o.trunc_ && terms_ == o.terms_;
}

}  // namespace otv
