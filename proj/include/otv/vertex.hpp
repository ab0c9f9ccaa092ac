#ifndef OTV_VERTEX_HPP
#define OTV_VERTEX_HPP

#include <vector>

#include "otv/partition.hpp"
#include "otv/series.hpp"

namespace otv {

enum class VertexMethod { Operator, Schur, Oracle };

// q_0..q_{n-1}, all box weight 1.
VariableTablePtr q_color_table(int n);

// The reduced multi-regular A_{n-1} vertex P^n_{rho+, rho-, lambda-bar} up to
// box-degree dq, by the vertex-operator expectation (finite window with a
// doubling stabilization check), the skew-Schur closed form, or the
// brute-force box-counting oracle.
LaurentSeries orbifold_vertex(const Partition& rho_plus,
                              const Partition& rho_minus,
                              const ColoredPartition& lambda_bar, long dq,
                              VertexMethod method);

LaurentSeries orbifold_vertex_operator(const Partition& rho_plus,
                                       const Partition& rho_minus,
                                       const ColoredPartition& lambda_bar,
                                       long dq);
LaurentSeries orbifold_vertex_schur(const Partition& rho_plus,
                                    const Partition& rho_minus,
                                    const ColoredPartition& lambda_bar,
                                    long dq);

// Memoizing wrapper around orbifold_vertex (thread safe).
LaurentSeries orbifold_vertex_cached(const Partition& rho_plus,
                                     const Partition& rho_minus,
                                     const ColoredPartition& lambda_bar,
                                     long dq, VertexMethod method);

// Loop Schur specialization of lambda-bar: (prod_{(i,j)} q_{j-i}^{-i}) times
// the empty-leg reduced vertex, computed from the exact normal-ordering pair
// product (no operator evaluation).
LaurentSeries loop_schur(const ColoredPartition& lambda_bar, long dq);

// Empty-leg reduced vertex P^n_{0,0,lambda-bar} as a finite product of
// commutation factors.
LaurentSeries empty_leg_vertex_product(const ColoredPartition& lambda_bar,
                                       VariableTablePtr table,
                                       Truncation trunc);

// Skew Schur function s_{rho/omega} on an explicit finite alphabet of
// monomials, by Jacobi-Trudi; zero when omega is not contained in rho.
LaurentSeries skew_schur(const Partition& rho, const Partition& omega,
                         const std::vector<Monomial>& alphabet,
                         VariableTablePtr table, Truncation trunc);

// Same by direct semistandard-tableau enumeration (test oracle).
LaurentSeries skew_schur_tableaux(const Partition& rho, const Partition& omega,
                                  const std::vector<Monomial>& alphabet,
                                  VariableTablePtr table, Truncation trunc);

// Sign and monomial of the normalization: (chi/dim) * prod_{(i,j)} q_{j-i}^i.
SignedMonomial normalized_prefactor(const ColoredPartition& lambda_bar,
                                    const VariableTable& table);

// P-tilde: normalized_prefactor times the reduced vertex.
LaurentSeries normalized_vertex(const Partition& rho_plus,
                                const Partition& rho_minus,
                                const ColoredPartition& lambda_bar, long dq,
                                VertexMethod method);

// Table {q, v_1..v_{n-1}} for the resolved chain geometry.
VariableTablePtr resolution_table(int n);

// Open resolved vertex P^Y_{rho+, rho-, (lambda_0..lambda_{n-1})}(q, v),
// the chain sum over intermediate partitions with (q v_i)^{|tau_i|} weights.
// When normalized, multiplies by prod_k prod_{(i,j) in lambda_k} q^i.
LaurentSeries resolution_vertex(const Partition& rho_plus,
                                const Partition& rho_minus,
                                const QuotientTuple& lambdas, long dq, long dv,
                                bool normalized = false,
                                long box_floor_pad = 0);

// Exact lower bound for the box degree of P^n_{rho+, rho-, lambda-bar}: the
// total leg-overlap correction.
long vertex_box_floor(const Partition& rho_plus, const Partition& rho_minus,
                      const ColoredPartition& lambda_bar);

}  // namespace otv

#endif
