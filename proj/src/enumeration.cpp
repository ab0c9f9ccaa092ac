#include "otv/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "otv/frakq.hpp"

namespace otv {

ThreeDPartition::ThreeDPartition(Partition x_leg, Partition y_leg,
                                 Partition z_leg, std::set<Cell3> excess)
    : x_(std::move(x_leg)), y_(std::move(y_leg)), z_(std::move(z_leg)),
      excess_(std::move(excess)) {
    validate();
}

bool ThreeDPartition::in_legs(int x, int y, int z) const {
    return z < x_.part(y) || z < y_.part(x) || y < z_.part(x);
}

bool ThreeDPartition::contains(int x, int y, int z) const {
    if (x < 0 || y < 0 || z < 0) return true;  // walls count as filled
    return in_legs(x, y, z) || excess_.count(Cell3{x, y, z}) > 0;
}

void ThreeDPartition::validate() const {
    for (const auto& c : excess_) {
        if (in_legs(c.x, c.y, c.z))
            throw std::invalid_argument("excess cell lies inside a leg");
        if (!contains(c.x - 1, c.y, c.z) || !contains(c.x, c.y - 1, c.z) ||
            !contains(c.x, c.y, c.z - 1))
            throw std::invalid_argument("cell set is not downward closed");
    }
}

namespace {

long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

int color_of(int x, int y, int n) {
    return static_cast<int>(mod_pos(x - y, n));
}

std::vector<long> box_counts(const ThreeDPartition& pi, int n, int N) {
    std::vector<long> cnt(n, 0);
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            for (int z = 0; z < N; ++z) {
                int c = color_of(x, y, n);
                if (pi.contains(x, y, z)) cnt[c]++;
                if (z < pi.x_leg().part(y)) cnt[c]--;
                if (z < pi.y_leg().part(x)) cnt[c]--;
                if (y < pi.z_leg().part(x)) cnt[c]--;
            }
    return cnt;
}

}  // namespace

std::vector<long> renormalized_color_count(const ThreeDPartition& pi, int n) {
    int N = 4;
    for (const auto& c : pi.excess())
        N = std::max({N, c.x + 2, c.y + 2, c.z + 2});
    N = std::max<int>(N, pi.x_leg().num_parts() + pi.x_leg().part(0) + 2);
    N = std::max<int>(N, pi.y_leg().num_parts() + pi.y_leg().part(0) + 2);
    N = std::max<int>(N, pi.z_leg().num_parts() + pi.z_leg().part(0) + 2);
    auto a = box_counts(pi, n, N);
    auto b = box_counts(pi, n, N + 1);
    if (a != b)
        throw std::logic_error("renormalized color count failed to stabilize");
    return a;
}

std::vector<long> leg_overlap_counts(const Partition& x_leg,
                                     const Partition& y_leg,
                                     const Partition& z_leg, int n) {
    std::vector<long> xi(n, 0);
    int X = std::max(y_leg.num_parts(), z_leg.num_parts()) + 1;
    int Y = static_cast<int>(std::max<long>(x_leg.num_parts(), z_leg.part(0))) + 1;
    int Z = std::max(x_leg.part(0), y_leg.part(0)) + 1;
    for (int x = 0; x < X; ++x)
        for (int y = 0; y < Y; ++y)
            for (int z = 0; z < Z; ++z) {
                bool a = z < x_leg.part(y);
                bool b = z < y_leg.part(x);
                bool c = y < z_leg.part(x);
                // |A| + |B| + |C| - |A u B u C| counted cellwise
                int mult = (a && b && c) ? 2 : ((a && b) + (a && c) + (b && c));
                xi[color_of(x, y, n)] -= mult;
            }
    return xi;
}

LaurentSeries extension_series(const Partition& x_leg, const Partition& y_leg,
                               const Partition& z_leg, int n, long budget,
                               VariableTablePtr table, Truncation trunc) {
    ThreeDPartition base(x_leg, y_leg, z_leg);
    const int X = static_cast<int>(
        std::max(y_leg.num_parts(), z_leg.num_parts()) + budget + 1);
    const int Y = static_cast<int>(
        std::max<long>(x_leg.num_parts(), z_leg.part(0)) + budget + 1);
    const int Z =
        static_cast<int>(std::max(x_leg.part(0), y_leg.part(0)) + budget + 1);

    std::vector<Cell3> universe;
    auto idx_of = [&](int x, int y, int z) -> long {
        return (static_cast<long>(x) * Y + y) * Z + z;
    };
    std::vector<int> cell_index(static_cast<std::size_t>(X) * Y * Z, -1);
    for (int x = 0; x < X; ++x)
        for (int y = 0; y < Y; ++y)
            for (int z = 0; z < Z; ++z)
                if (!base.in_legs(x, y, z)) {
                    cell_index[idx_of(x, y, z)] =
                        static_cast<int>(universe.size());
                    universe.push_back(Cell3{x, y, z});
                }

    const int U = static_cast<int>(universe.size());
    std::vector<int> missing(U, 0);          // unchosen in-universe predecessors
    std::vector<std::vector<int>> succs(U);  // in-universe successors
    auto pred_link = [&](int i, int px, int py, int pz) {
        if (px < 0 || py < 0 || pz < 0) return;           // wall
        if (base.in_legs(px, py, pz)) return;             // leg cell
        int j = cell_index[idx_of(px, py, pz)];
        missing[i]++;
        succs[j].push_back(i);
    };
    for (int i = 0; i < U; ++i) {
        auto [x, y, z] = universe[i];
        pred_link(i, x - 1, y, z);
        pred_link(i, x, y - 1, z);
        pred_link(i, x, y, z - 1);
    }

    LaurentSeries out(table, trunc);
    std::vector<int32_t> color_count(n, 0);
    auto emit = [&] {
        Monomial m(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) m.set_exp(c, color_count[c]);
        out.add_term(m, 1);
    };

    std::vector<int> initial;
    for (int i = 0; i < U; ++i)
        if (missing[i] == 0) initial.push_back(i);

    // Lexicographic ideal enumeration over the addable frontier.
    std::function<void(const std::vector<int>&, long)> dfs =
        [&](const std::vector<int>& cands, long left) {
            emit();
            if (left == 0) return;
            for (std::size_t p = 0; p < cands.size(); ++p) {
                int i = cands[p];
                int col = color_of(universe[i].x, universe[i].y, n);
                color_count[col]++;
                std::vector<int> fresh;
                for (int s : succs[i])
                    if (--missing[s] == 0) fresh.push_back(s);
                std::sort(fresh.begin(), fresh.end());
                std::vector<int> next;
                next.reserve(cands.size() - p - 1 + fresh.size());
                std::merge(cands.begin() + static_cast<long>(p) + 1,
                           cands.end(), fresh.begin(), fresh.end(),
                           std::back_inserter(next));
                dfs(next, left - 1);
                for (int s : succs[i]) ++missing[s];
                color_count[col]--;
            }
        };
    dfs(initial, budget);
    return out;
}

namespace {

// Colored MacMahon series: the empty-leg box-counting generating function,
// as the normal-ordered pair product prod (1 - frakq_{t0} frakq_{t1}^{-1})^{-1}
// over t1 < 0 <= t0.
LaurentSeries colored_macmahon(int n, long budget, VariableTablePtr table,
                               Truncation trunc) {
    LaurentSeries prod = LaurentSeries::one(table, trunc);
    for (long t1 = -budget; t1 < 0; ++t1) {
        for (long t0 = 0; t0 - t1 <= budget; ++t0) {
            Monomial m = frak_q(t0, n, *table).times(
                frak_q(t1, n, *table).inverse());
            LaurentSeries f = LaurentSeries::one(table, trunc);
            f.add_term(m, -1);
            prod = prod * f;
        }
    }
    return prod.inverted();
}

}  // namespace

LaurentSeries oracle_vertex(const Partition& rho_plus,
                            const Partition& rho_minus,
                            const ColoredPartition& lambda_bar, long dq) {
    lambda_bar.require_balanced();
    if (dq < 0) throw std::invalid_argument("oracle_vertex requires dq >= 0");
    const int n = lambda_bar.modulus();
    auto table = std::make_shared<VariableTable>();
    for (int c = 0; c < n; ++c)
        table->add("q_" + std::to_string(c), VarKind::Box);

    Partition A = rho_minus;
    Partition B = rho_plus.conjugate();
    Partition C = lambda_bar.shape().conjugate();

    auto xi = leg_overlap_counts(A, B, C, n);
    long xi_total = 0;
    for (long v : xi) xi_total += v;

    long budget = dq - xi_total;  // xi_total <= 0
    Truncation wide{budget, 0, 0};
    LaurentSeries v_legs = extension_series(A, B, C, n, budget, table, wide);
    LaurentSeries v_empty_inv = colored_macmahon(n, budget, table, wide).inverted();
    Monomial prefix(table->size());
    for (int c = 0; c < n; ++c) prefix.set_exp(c, static_cast<int32_t>(xi[c]));
    Truncation window{dq, 0, std::min<long>(0, xi_total)};
    return (v_legs * v_empty_inv)
        .times_monomial(SignedMonomial{1, prefix})
        .truncated(window);
}

long count_plane_partitions_cells(int size) {
    auto table = std::make_shared<VariableTable>();
    table->add("q_0", VarKind::Box);
    Truncation tr{size, 0, 0};
    auto s = extension_series(Partition(), Partition(), Partition(), 1, size,
                              table, tr);
    Monomial m(1);
    m.set_exp(0, static_cast<int32_t>(size));
    return static_cast<long>(s.coefficient(m));
}

namespace {

// Number of interlacing chains mu = mu^0 > mu^1 > ... ending at the empty
// partition with |mu^1| + |mu^2| + ... = s.
long chains_below(const Partition& mu, int s,
                  std::map<std::pair<Partition, int>, long>& memo) {
    // all remaining slices empty; the first must interlace below mu
    if (s == 0) return mu.num_parts() <= 1 ? 1 : 0;
    auto key = std::make_pair(mu, s);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long total = 0;
    int m = mu.num_parts();
    std::vector<int> acc;
    std::function<void(int, int)> rec = [&](int idx, int sz) {
        if (sz > s) return;
        if (idx == m) {
            Partition nu(acc);
            int rest = s - sz;
            if (!nu.empty())
                total += chains_below(nu, rest, memo);
            else if (rest == 0)
                total += 1;
            return;
        }
        for (int v = mu.part(idx); v >= mu.part(idx + 1); --v) {
            acc.push_back(v);
            rec(idx + 1, sz + v);
            acc.pop_back();
        }
    };
    rec(0, 0);
    memo[key] = total;
    return total;
}

}  // namespace

long count_plane_partitions_slices(int size) {
    std::map<std::pair<Partition, int>, long> memo;
    long total = 0;
    for (int center = 0; center <= size; ++center) {
        for (const auto& mu : partitions_of(center)) {
            for (int left = 0; left + center <= size; ++left) {
                int right = size - center - left;
                total += chains_below(mu, left, memo) *
                         chains_below(mu, right, memo);
            }
        }
    }
    return total;
}

}  // namespace otv
