#include "gossim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gossim {

double distance(const Position& a, const Position& b, Boundary boundary) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    if (boundary == Boundary::Torus) {
        dx = std::min(dx, 1.0 - dx);
        dy = std::min(dy, 1.0 - dy);
    }
    return std::sqrt(dx * dx + dy * dy);
}

double WorldConfig::default_radius(int n) {
    if (n < 2) throw std::invalid_argument("default_radius: n must be >= 2");
    return std::sqrt(8.0 * std::log(static_cast<double>(n)) /
                     (M_PI * static_cast<double>(n)));
}

void WorldConfig::validate() const {
    if (n < 2) throw std::invalid_argument("world.n must be >= 2");
    if (!(r > 0.0) || r > std::sqrt(2.0) + 1e-12)
        throw std::invalid_argument("world.r must be in (0, sqrt(2)]");
}

NodeSet NodeSet::complement() const {
    NodeSet out(n_);
    for (int i = 0; i < n_; ++i)
        if (!contains(i)) out.insert(i);
    return out;
}

std::vector<int> NodeSet::ids() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count_));
    for_each([&](int i) { out.push_back(i); });
    return out;
}

NodeSet NodeSet::of(int n, std::span<const int> members) {
    NodeSet out(n);
    for (int i : members) out.insert(i);
    return out;
}

NodeSet sample_node_subset(Rng& rng, int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("sample_node_subset: bad k");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[i] = i;
    NodeSet out(n);
    for (int i = 0; i < k; ++i) {
        const int j =
            i + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n - i)));
        std::swap(pool[i], pool[j]);
        out.insert(pool[i]);
    }
    return out;
}

namespace {

inline int cell_of(double coord, int m) {
    int c = static_cast<int>(coord * m);
    if (c >= m) c = m - 1;
    if (c < 0) c = 0;
    return c;
}

}  // namespace

SpatialIndex::SpatialIndex(const Snapshot& snapshot, double r, Boundary boundary)
    : snap_(&snapshot), r_(r), boundary_(boundary) {
    if (!(r > 0.0)) throw std::invalid_argument("SpatialIndex: r must be > 0");
    const int n = snapshot.n();
    if (n < 1) throw std::invalid_argument("SpatialIndex: empty snapshot");

    // Cell side 1/m >= r so the 3x3 block around a cell covers the disk.
    // More than ~sqrt(n) cells per axis buys nothing, so tiny radii do not
    // blow up the grid (larger cells keep the >= r side invariant).
    const int max_dim = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
    grid_dim_ = std::clamp(static_cast<int>(std::floor(1.0 / r)), 1, max_dim);
    const int m = grid_dim_;

    std::vector<int> cell_start(static_cast<std::size_t>(m) * m + 1, 0);
    std::vector<int> cell_ids(static_cast<std::size_t>(n));
    auto cell_index = [&](const Position& p) {
        return cell_of(p.y, m) * m + cell_of(p.x, m);
    };
    for (int i = 0; i < n; ++i) ++cell_start[cell_index(snapshot.positions[i]) + 1];
    for (std::size_t c = 1; c < cell_start.size(); ++c) cell_start[c] += cell_start[c - 1];
    {
        std::vector<int> fill = cell_start;
        for (int i = 0; i < n; ++i)
            cell_ids[fill[cell_index(snapshot.positions[i])]++] = i;
    }

    adj_start_.assign(static_cast<std::size_t>(n) + 1, 0);
    adj_.clear();
    adj_.reserve(static_cast<std::size_t>(n) * 8);

    int block[9];
    for (int i = 0; i < n; ++i) {
        const Position& pi = snapshot.positions[i];
        const int cx = cell_of(pi.x, m);
        const int cy = cell_of(pi.y, m);
        int nblock = 0;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                int gx = cx + dx;
                int gy = cy + dy;
                if (boundary_ == Boundary::Torus) {
                    gx = (gx + m) % m;
                    gy = (gy + m) % m;
                } else {
                    if (gx < 0 || gx >= m || gy < 0 || gy >= m) continue;
                }
                const int c = gy * m + gx;
                bool seen = false;  // wrap can revisit cells when m <= 2
                for (int b = 0; b < nblock; ++b)
                    if (block[b] == c) { seen = true; break; }
                if (!seen) block[nblock++] = c;
            }
        }
        const std::size_t row_begin = adj_.size();
        for (int b = 0; b < nblock; ++b) {
            const int c = block[b];
            for (int s = cell_start[c]; s < cell_start[c + 1]; ++s) {
                const int j = cell_ids[s];
                if (j == i) continue;
                if (distance(pi, snapshot.positions[j], boundary_) <= r_)
                    adj_.push_back(j);
            }
        }
        std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(row_begin), adj_.end());
        adj_start_[static_cast<std::size_t>(i) + 1] = static_cast<int>(adj_.size());
    }
}

void SpatialIndex::check_id(int i) const {
    if (i < 0 || i >= n())
        throw std::invalid_argument("SpatialIndex: node id " + std::to_string(i) +
                                    " out of range");
}

std::span<const int> SpatialIndex::neighbors(int i) const {
    check_id(i);
    return {adj_.data() + adj_start_[i],
            static_cast<std::size_t>(adj_start_[i + 1] - adj_start_[i])};
}

int SpatialIndex::degree(int i) const {
    check_id(i);
    return adj_start_[i + 1] - adj_start_[i];
}

std::int64_t SpatialIndex::crossing_edges(const NodeSet& cut) const {
    if (cut.universe() != n())
        throw std::invalid_argument("crossing_edges: cut universe mismatch");
    if (cut.empty() || cut.full())
        throw std::invalid_argument("crossing_edges: cut must be a proper subset");
    std::int64_t count = 0;
    cut.for_each([&](int i) {
        for (int j : neighbors(i))
            if (!cut.contains(j)) ++count;
    });
    return count;
}

bool SpatialIndex::is_connected() const {
    const int nn = n();
    if (nn <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(nn), 0);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(nn));
    queue.push_back(0);
    seen[0] = 1;
    int visited = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (int j : neighbors(queue[head])) {
            if (!seen[j]) {
                seen[j] = 1;
                ++visited;
                queue.push_back(j);
            }
        }
    }
    return visited == nn;
}

}  // namespace gossim
