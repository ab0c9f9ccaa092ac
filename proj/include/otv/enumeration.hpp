#ifndef OTV_ENUMERATION_HPP
#define OTV_ENUMERATION_HPP

#include <set>
#include <vector>

#include "otv/partition.hpp"
#include "otv/series.hpp"

namespace otv {

struct Cell3 {
    int x, y, z;
    auto operator<=>(const Cell3&) const = default;
};

// Asymptotic 3D partition: three leg cylinders plus a finite set of excess
// cells.  Leg membership conventions (cross-sections of the cylinders):
//   x-leg A: (x,y,z) with z < A.part(y)
//   y-leg B: (x,y,z) with z < B.part(x)
//   z-leg C: (x,y,z) with y < C.part(x)
class ThreeDPartition {
public:
    ThreeDPartition() = default;
    ThreeDPartition(Partition x_leg, Partition y_leg, Partition z_leg,
                    std::set<Cell3> excess = {});

    const Partition& x_leg() const { return x_; }
    const Partition& y_leg() const { return y_; }
    const Partition& z_leg() const { return z_; }
    const std::set<Cell3>& excess() const { return excess_; }

    bool in_legs(int x, int y, int z) const;
    bool contains(int x, int y, int z) const;

private:
    void validate() const;  // downward closure of legs + excess

    Partition x_, y_, z_;
    std::set<Cell3> excess_;
};

// Per-color renormalized box count: count over [0,N)^3 minus the in-box leg
// cylinder counts, with N grown until two successive values agree.
std::vector<long> renormalized_color_count(const ThreeDPartition& pi, int n);

// Per-color inclusion-exclusion overlap correction of the bare leg union:
// -(pairwise intersections) + (triple intersection).
std::vector<long> leg_overlap_counts(const Partition& x_leg,
                                     const Partition& y_leg,
                                     const Partition& z_leg, int n);

// Unreduced colored generating function of the finite extensions of the leg
// union: sum over downward-closed pi >= L with |pi \ L| <= budget of
// prod_c q_c^{count_c(pi \ L)}.
LaurentSeries extension_series(const Partition& x_leg, const Partition& y_leg,
                               const Partition& z_leg, int n, long budget,
                               VariableTablePtr table, Truncation trunc);

// Brute-force reduced multi-regular vertex: legs (x,y,z) = (rho-, (rho+)',
// lambda-bar'), weight prefactor q^{xi(L)} from the overlap correction,
// divided by the empty-leg series.
LaurentSeries oracle_vertex(const Partition& rho_plus,
                            const Partition& rho_minus,
                            const ColoredPartition& lambda_bar, long dq);

// Independent plane-partition counters used to cross-check the enumerator.
long count_plane_partitions_cells(int size);
long count_plane_partitions_slices(int size);

}  // namespace otv

#endif
