#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gossim/rng.hpp"

namespace gossim {

enum class Boundary { Square, Torus };

struct Position {
    double x = 0.0;
    double y = 0.0;
};

// Euclidean distance on the unit square; torus uses per-axis wrap-around.
double distance(const Position& a, const Position& b, Boundary boundary);

// Node positions at one slot boundary.
struct Snapshot {
    std::vector<Position> positions;
    std::int64_t slot = 0;

    int n() const { return static_cast<int>(positions.size()); }
};

struct WorldConfig {
    int n = 0;
    double r = 0.0;
    Boundary boundary = Boundary::Square;
    std::uint64_t seed = 0;

    // sqrt(8 log n / (pi n)) -- the connectivity-regime transmission radius.
    static double default_radius(int n);

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Subset of node ids as a dense bit vector with a cached population count.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int universe() const { return n_; }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool full() const { return count_ == n_; }

    bool contains(int i) const {
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
    }

    void insert(int i) {
        std::uint64_t& w = words_[static_cast<std::size_t>(i) >> 6];
        const std::uint64_t bit = 1ULL << (i & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    NodeSet complement() const;
    std::vector<int> ids() const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int i = static_cast<int>(w * 64) + __builtin_ctzll(bits);
                f(i);
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const NodeSet& a, const NodeSet& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    static NodeSet of(int n, std::span<const int> members);

private:
    int n_ = 0;
    int count_ = 0;
    std::vector<std::uint64_t> words_;
};

// k distinct ids drawn uniformly without replacement.
NodeSet sample_node_subset(Rng& rng, int n, int k);

// Uniform cell grid over the unit square with cell side >= r, so a neighbor
// query scans at most the 3x3 cell block around a node. Full adjacency is
// materialized at construction (sorted id order); the snapshot is held by
// reference and must outlive the index.
class SpatialIndex {
public:
    SpatialIndex(const Snapshot& snapshot, double r, Boundary boundary);

    int n() const { return static_cast<int>(adj_start_.size()) - 1; }
    double radius() const { return r_; }
    Boundary boundary() const { return boundary_; }
    const Snapshot& snapshot() const { return *snap_; }
    int grid_dim() const { return grid_dim_; }

    // Ids j != i with distance(x_i, x_j) <= r, ascending.
    std::span<const int> neighbors(int i) const;
    int degree(int i) const;

    // Unordered pairs {i, j} with i in cut, j outside, distance <= r.
    std::int64_t crossing_edges(const NodeSet& cut) const;

    // True iff the snapshot graph has a single connected component.
    bool is_connected() const;

private:
    void check_id(int i) const;

    const Snapshot* snap_;
    double r_;
    Boundary boundary_;
    int grid_dim_ = 1;
    std::vector<int> adj_start_;
    std::vector<int> adj_;
};

}  // namespace gossim
