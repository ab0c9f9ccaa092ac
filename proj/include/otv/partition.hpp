#ifndef OTV_PARTITION_HPP
#define OTV_PARTITION_HPP

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace otv {

// An integer partition: weakly decreasing positive parts, English notation,
// rows and columns indexed from 0.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    static Partition parse(std::string_view csv);  // "3,3,2,1"; "" is empty

    const std::vector<int>& parts() const { return parts_; }
    int num_parts() const { return static_cast<int>(parts_.size()); }
    int part(int i) const {
        return (i >= 0 && i < num_parts()) ? parts_[i] : 0;
    }
    long size() const;
    bool empty() const { return parts_.empty(); }

    Partition conjugate() const;
    bool contains(const Partition& o) const;  // diagram inclusion

    // Number of cells (i,j) with j - i = l.
    int diagonal_length(long l) const;

    // +1 iff t lies in S(p) = { p[i] - (i+1) : i >= 0 }; -1 otherwise.
    int slope(long t) const;

    // Cells (i, j), row-major.
    std::vector<std::pair<int, int>> cells() const;

    // Sum of row indices over all cells.
    long row_index_sum() const;

    std::string to_string() const;  // "3,3,2,1"; "" for the empty partition

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

// tau > sigma > tau shifted: tau_i >= sigma_i >= tau_{i+1} for all i.
bool interlaces(const Partition& tau, const Partition& sigma);

// All partitions of n (n >= 0).
std::vector<Partition> partitions_of(int n);
// All partitions of size at most n.
std::vector<Partition> partitions_up_to(int n);

// A partition with cell (i,j) colored by (j - i) mod n.
class ColoredPartition {
public:
    ColoredPartition() : modulus_(1) {}
    ColoredPartition(Partition shape, int modulus);

    const Partition& shape() const { return shape_; }
    int modulus() const { return modulus_; }
    long size() const { return shape_.size(); }

    int color(int i, int j) const;
    std::vector<long> color_counts() const;
    bool balanced() const;
    // Throws with a diagnostic naming a deficient color if not balanced.
    void require_balanced() const;

    int slope(long t) const { return shape_.slope(t); }
    ColoredPartition conjugate() const {
        return ColoredPartition(shape_.conjugate(), modulus_);
    }

    bool operator==(const ColoredPartition&) const = default;

private:
    Partition shape_;
    int modulus_;
};

// The sign chi_{lambda}(n^d) / dim(lambda) = (-1)^{sum of strip heights}, via
// greedy n-border-strip removal (largest removable beta element first).
// Requires a balanced input.
int chi_over_dim(const ColoredPartition& cp);

// Tuple of n partitions (lambda_0, ..., lambda_{n-1}).
struct QuotientTuple {
    std::vector<Partition> components;

    int modulus() const { return static_cast<int>(components.size()); }
    long total_size() const;
    bool operator==(const QuotientTuple&) const = default;
};

// The n-quotient bijection on balanced colored partitions, obtained by
// de-interlacing / interlacing slope sequences.
QuotientTuple from_colored(const ColoredPartition& cp);
ColoredPartition to_colored(const QuotientTuple& q);

struct AddBoxResult {
    ColoredPartition colored;                      // shape after the strip
    std::vector<std::pair<int, int>> strip_cells;  // the n new cells
    int height;                                    // rows occupied minus one
};

// Adding a box at position (i,j) of component k adds one n-border strip to
// the colored partition.  The strip is computed from diagonal lengths, not
// by re-running to_colored on the incremented tuple.
AddBoxResult add_box_strip(const QuotientTuple& q, int k, int i, int j);

// All balanced colored partitions with |shape| == size (size divisible by n).
std::vector<ColoredPartition> balanced_partitions(int size, int n);

}  // namespace otv

#endif
