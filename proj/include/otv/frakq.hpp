#ifndef OTV_FRAKQ_HPP
#define OTV_FRAKQ_HPP

#include "otv/series.hpp"

namespace otv {

// The variables frak q_t over q_0..q_{n-1}: frak q_0 = 1, frak q_t = q_t *
// frak q_{t-1} with color indices mod n.  For t >= 1 this is q_1 q_2 ... q_t,
// for t <= -1 it is (q_{t+1} ... q_0)^{-1}; box degree t throughout.
inline Monomial frak_q(long t, int n, const VariableTable& table) {
    Monomial m(table.size());
    auto bump = [&](long color, int delta) {
        long c = ((color % n) + n) % n;
        m.set_exp(static_cast<std::size_t>(c),
                  m.exp(static_cast<std::size_t>(c)) + delta);
    };
    if (t >= 0)
        for (long s = 1; s <= t; ++s) bump(s, +1);
    else
        for (long s = t + 1; s <= 0; ++s) bump(s, -1);
    return m;
}

}  // namespace otv

#endif
