#include "otv/partition.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace otv {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

// Rebuilds a partition from its slope set: all integers < lo belong to S,
// and `desc` lists the members >= lo in strictly decreasing order.  Valid
// (charge zero) iff |desc| == -lo.
Partition partition_from_slope_window(const std::vector<long>& desc, long lo) {
    if (static_cast<long>(desc.size()) != -lo)
        throw std::logic_error("slope set has nonzero charge");
    std::vector<int> parts;
    for (std::size_t i = 0; i < desc.size(); ++i) {
        long p = desc[i] + static_cast<long>(i) + 1;
        if (p < 0) throw std::logic_error("slope set is not a partition");
        if (p > 0) parts.push_back(static_cast<int>(p));
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i] < parts[i + 1])
            throw std::logic_error("slope set is not weakly decreasing");
    return Partition(std::move(parts));
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0)
            throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i - 1] < parts_[i])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

Partition Partition::parse(std::string_view csv) {
    std::vector<int> parts;
    std::string token;
    std::istringstream is{std::string(csv)};
    while (std::getline(is, token, ',')) {
        // strip blanks
        std::string t;
        for (char c : token)
            if (!isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) continue;
        std::size_t pos = 0;
        int v = std::stoi(t, &pos);
        if (pos != t.size() || v <= 0)
            throw std::invalid_argument("bad partition part: " + t);
        parts.push_back(v);
    }
    return Partition(std::move(parts));
}

long Partition::size() const {
    long s = 0;
    for (int p : parts_) s += p;
    return s;
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    if (parts_.empty()) return Partition();
    c.resize(parts_[0], 0);
    for (int j = 0; j < parts_[0]; ++j)
        c[j] = static_cast<int>(
            std::count_if(parts_.begin(), parts_.end(),
                          [j](int p) { return p > j; }));
    return Partition(std::move(c));
}

bool Partition::contains(const Partition& o) const {
    for (int i = 0; i < o.num_parts(); ++i)
        if (part(i) < o.part(i)) return false;
    return true;
}

int Partition::diagonal_length(long l) const {
    int cnt = 0;
    for (int i = 0; i < num_parts(); ++i) {
        long j = l + i;
        if (j >= 0 && j < parts_[i]) ++cnt;
    }
    return cnt;
}

int Partition::slope(long t) const {
    long len = num_parts();
    if (t <= -(len + 1)) return +1;
    for (long i = 0; i < len; ++i) {
        long beta = parts_[i] - i - 1;
        if (beta == t) return +1;
        if (beta < t) break;  // strictly decreasing in i
    }
    return -1;
}

std::vector<std::pair<int, int>> Partition::cells() const {
    std::vector<std::pair<int, int>> v;
    for (int i = 0; i < num_parts(); ++i)
        for (int j = 0; j < parts_[i]; ++j) v.emplace_back(i, j);
    return v;
}

long Partition::row_index_sum() const {
    long s = 0;
    for (int i = 0; i < num_parts(); ++i) s += static_cast<long>(i) * parts_[i];
    return s;
}

std::string Partition::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    return os.str();
}

bool interlaces(const Partition& tau, const Partition& sigma) {
    int n = std::max(tau.num_parts(), sigma.num_parts()) + 1;
    for (int i = 0; i < n; ++i) {
        if (tau.part(i) < sigma.part(i)) return false;
        if (sigma.part(i) < tau.part(i + 1)) return false;
    }
    return true;
}

namespace {
void gen_partitions(int n, int max_part, std::vector<int>& acc,
                    std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition(acc));
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        acc.push_back(p);
        gen_partitions(n - p, p, acc, out);
        acc.pop_back();
    }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> acc;
    gen_partitions(n, n, acc, out);
    return out;
}

std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int k = 0; k <= n; ++k) {
        auto v = partitions_of(k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

ColoredPartition::ColoredPartition(Partition shape, int modulus)
    : shape_(std::move(shape)), modulus_(modulus) {
    if (modulus_ < 1)
        throw std::invalid_argument("colored partition modulus must be >= 1");
}

int ColoredPartition::color(int i, int j) const {
    return static_cast<int>(mod_pos(static_cast<long>(j) - i, modulus_));
}

std::vector<long> ColoredPartition::color_counts() const {
    std::vector<long> cnt(modulus_, 0);
    for (int i = 0; i < shape_.num_parts(); ++i)
        for (int j = 0; j < shape_.part(i); ++j) ++cnt[color(i, j)];
    return cnt;
}

bool ColoredPartition::balanced() const {
    auto cnt = color_counts();
    for (int c = 1; c < modulus_; ++c)
        if (cnt[c] != cnt[0]) return false;
    return true;
}

void ColoredPartition::require_balanced() const {
    auto cnt = color_counts();
    long mx = *std::max_element(cnt.begin(), cnt.end());
    for (int c = 0; c < modulus_; ++c) {
        if (cnt[c] != mx) {
            std::ostringstream os;
            os << "colored partition (" << shape_.to_string() << "; n="
               << modulus_ << ") is not balanced: color " << c << " has "
               << cnt[c] << " cells, color counts must all equal " << mx;
            throw std::invalid_argument(os.str());
        }
    }
}

int chi_over_dim(const ColoredPartition& cp) {
    cp.require_balanced();
    const Partition& p = cp.shape();
    const int n = cp.modulus();
    const long len = p.num_parts();
    const long lo = -len;  // every integer < lo lies in the slope set
    std::set<long> beta;
    for (long i = 0; i < len; ++i) beta.insert(p.part(static_cast<int>(i)) - i - 1);

    long height_sum = 0;
    long removals = 0;
    for (;;) {
        long pick = 0;
        bool found = false;
        for (auto it = beta.rbegin(); it != beta.rend(); ++it) {
            long t = *it;
            if (t - n >= lo && !beta.count(t - n)) {
                pick = t;
                found = true;
                break;
            }
        }
        if (!found) break;
        long ht = 0;
        for (long s = pick - n + 1; s < pick; ++s)
            if (s < lo || beta.count(s)) ++ht;
        height_sum += ht;
        beta.erase(pick);
        beta.insert(pick - n);
        ++removals;
    }
    if (removals * n != cp.size())
        throw std::logic_error("border strip removal did not exhaust the diagram");
    return (height_sum % 2 == 0) ? +1 : -1;
}

long QuotientTuple::total_size() const {
    long s = 0;
    for (const auto& c : components) s += c.size();
    return s;
}

QuotientTuple from_colored(const ColoredPartition& cp) {
    cp.require_balanced();
    const int n = cp.modulus();
    const Partition& p = cp.shape();
    const long len = p.num_parts();
    const long top = p.part(0);
    QuotientTuple q;
    q.components.reserve(n);
    for (int r = 0; r < n; ++r) {
        // s < s_lo implies n*s + r <= -(len+1), which always lies in S.
        long s_lo = ceil_div(-len - r, n);
        long s_hi = floor_div(top - r, n) + 1;
        std::vector<long> desc;
        for (long s = s_hi; s >= s_lo; --s)
            if (p.slope(n * s + r) == +1) desc.push_back(s);
        q.components.push_back(partition_from_slope_window(desc, s_lo));
    }
    return q;
}

ColoredPartition to_colored(const QuotientTuple& q) {
    const int n = q.modulus();
    if (n < 1) throw std::invalid_argument("quotient tuple must have n >= 1 components");
    long max_len = 0, max_part = 0;
    for (const auto& c : q.components) {
        max_len = std::max<long>(max_len, c.num_parts());
        max_part = std::max<long>(max_part, c.part(0));
    }
    const long t_lo = -n * (max_len + 2);
    const long t_hi = n * (max_part + 2);
    std::vector<long> desc;
    for (long t = t_hi; t >= t_lo; --t) {
        long r = mod_pos(t, n);
        long s = (t - r) / n;
        if (q.components[static_cast<std::size_t>(r)].slope(s) == +1)
            desc.push_back(t);
    }
    return ColoredPartition(partition_from_slope_window(desc, t_lo), n);
}

AddBoxResult add_box_strip(const QuotientTuple& q, int k, int i, int j) {
    const int n = q.modulus();
    if (k < 0 || k >= n) throw std::invalid_argument("component index out of range");
    const Partition& comp = q.components[static_cast<std::size_t>(k)];
    if (i < 0 || j < 0 || comp.part(i) != j ||
        (i > 0 && comp.part(i - 1) < j + 1))
        throw std::invalid_argument("cell is not addable to the quotient component");

    ColoredPartition before = to_colored(q);
    const long d_hi = static_cast<long>(n) * (j - i) + k;
    const long d_lo = d_hi - n + 1;

    std::vector<std::pair<int, int>> strip;
    int rmin = 0, rmax = 0;
    bool first = true;
    for (long d = d_lo; d <= d_hi; ++d) {
        int dl = before.shape().diagonal_length(d);
        int r = (d >= 0) ? dl : static_cast<int>(-d) + dl;
        int c = static_cast<int>(r + d);
        strip.emplace_back(r, c);
        if (first || r < rmin) rmin = r;
        if (first || r > rmax) rmax = r;
        first = false;
    }

    std::vector<int> rows(before.shape().parts());
    for (auto [r, c] : strip) {
        if (r >= static_cast<int>(rows.size())) rows.resize(r + 1, 0);
        rows[static_cast<std::size_t>(r)] =
            std::max(rows[static_cast<std::size_t>(r)], c + 1);
    }
    Partition new_shape(std::move(rows));

    std::sort(strip.begin(), strip.end());
    return AddBoxResult{ColoredPartition(std::move(new_shape), n), strip,
                        rmax - rmin};
}

std::vector<ColoredPartition> balanced_partitions(int size, int n) {
    std::vector<ColoredPartition> out;
    if (size % n != 0) return out;
    for (auto& p : partitions_of(size)) {
        ColoredPartition cp(p, n);
        if (cp.balanced()) out.push_back(cp);
    }
    return out;
}

}  // namespace otv
