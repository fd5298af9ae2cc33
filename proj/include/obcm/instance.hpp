#ifndef OBCM_INSTANCE_HPP
#define OBCM_INSTANCE_HPP

// Two-layer bipartite instance model for one-sided crossing minimisation.
// The first layer is fixed and its order is the identity on 0..n1-1; the
// second (free) layer is the one being permuted.
//
// Instance file format (text, LF line endings):
//   line 1:  obcm 1
//   line 2:  <n1> <n2> <m>
//   then m lines:  <free_id> <fixed_id>     (zero-based)
// Ordering file format: n2 lines, one free-vertex id per line, left to right.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "obcm/rng.hpp"

namespace obcm {

using vertex_t = std::uint32_t;

/// Parse failure; the message names the offending line.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// I/O failure (missing file, unwritable path).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

struct edge_t {
    vertex_t free_id;
    vertex_t fixed_id;
    friend bool operator==(const edge_t&, const edge_t&) = default;
    friend auto operator<=>(const edge_t&, const edge_t&) = default;
};

/// Bipartite two-layer graph. Immutable after construction; adjacency lists
/// are sorted ascending by fixed id.
class bipartite_instance {
   public:
    bipartite_instance() = default;

    /// Builds from an edge list. Throws std::invalid_argument on ids out of
    /// range or duplicate edges.
    bipartite_instance(vertex_t n1, vertex_t n2, std::vector<edge_t> edges)
        : n1_(n1), n2_(n2), edges_(std::move(edges)) {
        adjacency_.resize(n2_);
        for (const edge_t& e : edges_) {
            if (e.free_id >= n2_)
                throw std::invalid_argument("free id " + std::to_string(e.free_id) +
                                            " out of range (n2=" + std::to_string(n2_) + ")");
            if (e.fixed_id >= n1_)
                throw std::invalid_argument("fixed id " + std::to_string(e.fixed_id) +
                                            " out of range (n1=" + std::to_string(n1_) + ")");
            adjacency_[e.free_id].push_back(e.fixed_id);
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end());
            if (std::adjacent_find(list.begin(), list.end()) != list.end())
                throw std::invalid_argument("duplicate edge");
        }
        std::sort(edges_.begin(), edges_.end());
    }

    vertex_t n1() const { return n1_; }
    vertex_t n2() const { return n2_; }
    std::size_t m() const { return edges_.size(); }

    /// Edges in canonical order (sorted by free id, then fixed id).
    const std::vector<edge_t>& edges() const { return edges_; }

    /// Neighbors of free vertex v, sorted ascending by fixed id.
    const std::vector<vertex_t>& neighbors(vertex_t v) const { return adjacency_[v]; }

    std::size_t degree(vertex_t v) const { return adjacency_[v].size(); }

    friend bool operator==(const bipartite_instance& a, const bipartite_instance& b) {
        return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.edges_ == b.edges_;
    }

   private:
    vertex_t n1_{0};
    vertex_t n2_{0};
    std::vector<edge_t> edges_;
    std::vector<std::vector<vertex_t>> adjacency_;
};

/// Permutation of the free layer. perm[i] is the vertex at position i;
/// position(v) is the exact inverse.
class ordering {
   public:
    ordering() = default;

    static ordering identity(vertex_t n2) {
        ordering o;
        o.perm_.resize(n2);
        o.pos_.resize(n2);
        std::iota(o.perm_.begin(), o.perm_.end(), vertex_t{0});
        std::iota(o.pos_.begin(), o.pos_.end(), vertex_t{0});
        return o;
    }

    static ordering from_perm(std::vector<vertex_t> perm) {
        ordering o;
        o.pos_.assign(perm.size(), static_cast<vertex_t>(perm.size()));
        for (std::size_t i = 0; i < perm.size(); ++i) {
            if (perm[i] >= perm.size() || o.pos_[perm[i]] != perm.size())
                throw std::invalid_argument("not a permutation of 0..n2-1");
            o.pos_[perm[i]] = static_cast<vertex_t>(i);
        }
        o.perm_ = std::move(perm);
        return o;
    }

    vertex_t size() const { return static_cast<vertex_t>(perm_.size()); }
    vertex_t at(vertex_t position) const { return perm_[position]; }
    vertex_t position(vertex_t v) const { return pos_[v]; }
    const std::vector<vertex_t>& perm() const { return perm_; }

    /// Transposes the elements at positions i and j.
    void apply_exchange(vertex_t i, vertex_t j) {
        std::swap(perm_[i], perm_[j]);
        pos_[perm_[i]] = i;
        pos_[perm_[j]] = j;
    }

    /// Removes the element at position i and reinserts it so that it ends at
    /// position j; intermediate elements shift by one.
    void apply_jump(vertex_t i, vertex_t j) {
        if (i == j) return;
        const vertex_t moved = perm_[i];
        if (i < j) {
            for (vertex_t k = i; k < j; ++k) {
                perm_[k] = perm_[k + 1];
                pos_[perm_[k]] = k;
            }
        } else {
            for (vertex_t k = i; k > j; --k) {
                perm_[k] = perm_[k - 1];
                pos_[perm_[k]] = k;
            }
        }
        perm_[j] = moved;
        pos_[moved] = j;
    }

    friend bool operator==(const ordering& a, const ordering& b) { return a.perm_ == b.perm_; }

   private:
    std::vector<vertex_t> perm_;
    std::vector<vertex_t> pos_;
};

/// Random bipartite instance: each of the n1*n2 potential edges is included
/// independently with probability p. Edge decisions are made fixed-id-major,
/// free-id-minor; the iteration order is part of the format contract so that
/// a seed reproduces the same instance everywhere.
inline bipartite_instance generate_random(vertex_t n1, vertex_t n2, double p, seed_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("edge probability must be in [0,1]");
    rng gen(seed);
    std::vector<edge_t> edges;
    for (vertex_t a = 0; a < n1; ++a)
        for (vertex_t v = 0; v < n2; ++v)
            if (gen.next_bernoulli(p)) edges.push_back({v, a});
    return bipartite_instance(n1, n2, std::move(edges));
}

/// Uniformly random permutation of the free layer (Fisher-Yates).
inline ordering random_ordering(vertex_t n2, seed_t seed) {
    rng gen(seed);
    std::vector<vertex_t> perm(n2);
    std::iota(perm.begin(), perm.end(), vertex_t{0});
    gen.shuffle(perm);
    return ordering::from_perm(std::move(perm));
}

namespace detail {

inline parse_error parse_fail(const std::string& path, int line, const std::string& what) {
    return parse_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace detail

inline bipartite_instance parse_instance(std::istream& in, const std::string& path) {
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line) || line != "obcm 1")
        throw detail::parse_fail(path, lineno, "expected header 'obcm 1'");
    ++lineno;
    long long n1 = -1, n2 = -1, m = -1;
    if (!std::getline(in, line))
        throw detail::parse_fail(path, lineno, "missing size line '<n1> <n2> <m>'");
    {
        std::istringstream ss(line);
        std::string rest;
        if (!(ss >> n1 >> n2 >> m) || (ss >> rest) || n1 < 0 || n2 < 0 || m < 0)
            throw detail::parse_fail(path, lineno, "malformed size line '" + line + "'");
    }
    std::vector<edge_t> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::unordered_set<std::uint64_t> seen;
    for (long long k = 0; k < m; ++k) {
        ++lineno;
        if (!std::getline(in, line))
            throw detail::parse_fail(path, lineno, "unexpected end of file, expected edge line");
        std::istringstream ss(line);
        long long free_id = -1, fixed_id = -1;
        std::string rest;
        if (!(ss >> free_id >> fixed_id) || (ss >> rest))
            throw detail::parse_fail(path, lineno, "malformed edge line '" + line + "'");
        if (free_id < 0 || free_id >= n2)
            throw detail::parse_fail(path, lineno,
                                     "free id " + std::to_string(free_id) + " out of range");
        if (fixed_id < 0 || fixed_id >= n1)
            throw detail::parse_fail(path, lineno,
                                     "fixed id " + std::to_string(fixed_id) + " out of range");
        if (!seen.insert(static_cast<std::uint64_t>(free_id) << 32 |
                         static_cast<std::uint64_t>(fixed_id))
                 .second)
            throw detail::parse_fail(path, lineno, "duplicate edge '" + line + "'");
        edges.push_back({static_cast<vertex_t>(free_id), static_cast<vertex_t>(fixed_id)});
    }
    return bipartite_instance(static_cast<vertex_t>(n1), static_cast<vertex_t>(n2),
                              std::move(edges));
}

inline bipartite_instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open instance file '" + path + "'");
    return parse_instance(in, path);
}

inline void write_instance(const bipartite_instance& inst, std::ostream& out) {
    out << "obcm 1\n" << inst.n1() << ' ' << inst.n2() << ' ' << inst.m() << '\n';
    for (const edge_t& e : inst.edges()) out << e.free_id << ' ' << e.fixed_id << '\n';
}

inline void write_instance(const bipartite_instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write instance file '" + path + "'");
    write_instance(inst, out);
    if (!out) throw io_error("write failed for '" + path + "'");
}

inline ordering parse_ordering(std::istream& in, vertex_t n2, const std::string& path) {
    std::vector<vertex_t> perm;
    perm.reserve(n2);
    std::string line;
    for (vertex_t i = 0; i < n2; ++i) {
        if (!std::getline(in, line))
            throw detail::parse_fail(path, static_cast<int>(i) + 1,
                                     "expected " + std::to_string(n2) + " ordering lines");
        std::istringstream ss(line);
        long long v = -1;
        std::string rest;
        if (!(ss >> v) || (ss >> rest) || v < 0 || v >= n2)
            throw detail::parse_fail(path, static_cast<int>(i) + 1,
                                     "malformed ordering line '" + line + "'");
        perm.push_back(static_cast<vertex_t>(v));
    }
    try {
        return ordering::from_perm(std::move(perm));
    } catch (const std::invalid_argument& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline ordering read_ordering(const std::string& path, vertex_t n2) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open ordering file '" + path + "'");
    return parse_ordering(in, n2, path);
}

inline void write_ordering(const ordering& ord, std::ostream& out) {
    for (vertex_t i = 0; i < ord.size(); ++i) out << ord.at(i) << '\n';
}

inline void write_ordering(const ordering& ord, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write ordering file '" + path + "'");
    write_ordering(ord, out);
    if (!out) throw io_error("write failed for '" + path + "'");
}

}  // namespace obcm

#endif
