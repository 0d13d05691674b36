#pragma once

// Planar link patterns on 2n boundary points: non-crossing perfect pairings,
// their count, and the induced connectivity partition of the n "odd" boundary
// edges (the ones a crossing cluster can hook onto).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace multisle {

// C_0..C_33 fit in int64; beyond that we refuse rather than wrap.
inline std::int64_t catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: n must be >= 0");
    std::int64_t c = 1;
    for (int k = 0; k < n; ++k) {
        __int128 t = static_cast<__int128>(c) * 2 * (2 * k + 1);
        t /= (k + 2);
        if (t > INT64_MAX) throw numerical_error("catalan: value exceeds 64-bit range");
        c = static_cast<std::int64_t>(t);
    }
    return c;
}

// A non-crossing pairing of {1,...,2n}, stored as a 1-based involution:
// match[i] is the partner of point i (match[0] unused).
struct NonCrossingPairing {
    std::vector<int> match;

    int points() const { return static_cast<int>(match.size()) - 1; }
    int pairs() const { return points() / 2; }

    // Sorted list of pairs (a,b) with a < b, ordered by a.
    std::vector<std::pair<int, int>> pair_list() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i <= points(); ++i)
            if (match[i] > i) out.emplace_back(i, match[i]);
        return out;
    }
};

inline bool is_involution_without_fixed_points(const std::vector<int>& match) {
    int m = static_cast<int>(match.size()) - 1;
    if (m < 0 || m % 2 != 0) return false;
    for (int i = 1; i <= m; ++i) {
        if (match[i] < 1 || match[i] > m || match[i] == i) return false;
        if (match[match[i]] != i) return false;
    }
    return true;
}

// Crossing test: points a<b with partners c=match[a], d=match[b] interleave.
inline bool is_noncrossing(const std::vector<int>& match) {
    int m = static_cast<int>(match.size()) - 1;
    for (int a = 1; a <= m; ++a) {
        int c = match[a];
        if (c <= a) continue;
        for (int b = a + 1; b < c; ++b) {
            int d = match[b];
            if (d < a || d > c) return false; // chord (b,d) exits (a,c)
        }
    }
    return true;
}

inline NonCrossingPairing make_pairing(std::vector<int> match) {
    if (!is_involution_without_fixed_points(match))
        throw std::invalid_argument("pairing: not a fixed-point-free involution on 1..2n");
    if (!is_noncrossing(match))
        throw std::invalid_argument("pairing: crossing chords");
    return NonCrossingPairing{std::move(match)};
}

inline NonCrossingPairing make_pairing_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> match(2 * n + 1, 0);
    if (static_cast<int>(pairs.size()) != n)
        throw std::invalid_argument("pairing: wrong number of pairs");
    for (auto [a, b] : pairs) {
        if (a < 1 || a > 2 * n || b < 1 || b > 2 * n || a == b)
            throw std::invalid_argument("pairing: pair out of range");
        if (match[a] || match[b]) throw std::invalid_argument("pairing: repeated point");
        match[a] = b;
        match[b] = a;
    }
    return make_pairing(std::move(match));
}

namespace detail {
// Enumerate non-crossing pairings of the points list[lo..hi) recursively;
// point list[lo] pairs with some list[k] splitting the rest into two blocks.
inline void enumerate_nc(std::vector<int>& match, int lo, int hi,
                         std::vector<int>& stackpts, std::vector<std::vector<int>>& out);
} // namespace detail

inline std::vector<NonCrossingPairing> enumerate_noncrossing_pairings(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_noncrossing_pairings: n < 0");
    if (n > 12) throw std::invalid_argument("enumerate_noncrossing_pairings: n too large to enumerate");
    std::vector<std::vector<int>> raw;
    std::vector<int> match(2 * n + 1, 0);
    // Recursive generation: the lowest unmatched point pairs with each
    // admissible partner in increasing order, which makes the output
    // lexicographic in the involution vector (match[1], match[2], ...).
    struct Rec {
        int m;
        std::vector<std::vector<int>>& out;
        void go(std::vector<int>& match, std::vector<bool>& used) {
            int a = 0;
            for (int i = 1; i <= m; ++i)
                if (!used[i]) { a = i; break; }
            if (a == 0) {
                out.push_back(match);
                return;
            }
            for (int b = a + 1; b <= m; ++b) {
                if (used[b]) continue;
                // non-crossing: the points strictly between a and b must pair
                // among themselves, so the unmatched ones must be even in
                // number and any matched one must have its partner inside too
                int between = 0;
                bool leaks = false;
                for (int i = a + 1; i < b && !leaks; ++i) {
                    if (!used[i]) ++between;
                    else if (match[i] < a || match[i] > b) leaks = true;
                }
                if (leaks || between % 2) continue;
                used[a] = used[b] = true;
                match[a] = b;
                match[b] = a;
                go(match, used);
                used[a] = used[b] = false;
                match[a] = match[b] = 0;
            }
        }
    };
    std::vector<bool> used(2 * n + 1, false);
    Rec rec{2 * n, raw};
    if (n == 0) raw.push_back(match);
    else rec.go(match, used);
    std::sort(raw.begin(), raw.end());
    std::vector<NonCrossingPairing> out;
    out.reserve(raw.size());
    for (auto& v : raw) {
        // parity sanity: every chord must join an odd point to an even point
        // (guaranteed by non-crossing, asserted cheaply here)
        out.push_back(NonCrossingPairing{std::move(v)});
    }
    return out;
}

// A partition of the n odd boundary edges e_1..e_n (edge i sits between
// points 2i-1 and 2i), stored as sorted blocks of 1-based edge indices.
struct NonCrossingPartition {
    std::vector<std::vector<int>> blocks;

    int elements() const {
        int m = 0;
        for (auto& b : blocks) m += static_cast<int>(b.size());
        return m;
    }
};

inline bool partition_is_noncrossing(const NonCrossingPartition& p) {
    // crossing blocks: a < b < c < d with {a,c} in one block, {b,d} in another
    auto block_of = [&](int e) {
        for (size_t i = 0; i < p.blocks.size(); ++i)
            for (int x : p.blocks[i])
                if (x == e) return static_cast<int>(i);
        return -1;
    };
    int n = p.elements();
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d)
                    if (block_of(a) == block_of(c) && block_of(b) == block_of(d) &&
                        block_of(a) != block_of(b))
                        return false;
    return true;
}

// Boundary intervals I_k = (k, k+1 mod 2n), k = 1..2n.  Chords of the pairing
// cut the disk into faces; two intervals lie in the same face iff repeatedly
// jumping "interval after k -> interval after match[k+1]" connects them.
// The odd intervals I_1, I_3, ... carry the edges e_1..e_n; grouping them by
// face is the cluster partition the pairing forces.
inline NonCrossingPartition pairing_to_partition(const NonCrossingPairing& p) {
    int m = p.points();
    int n = m / 2;
    std::vector<int> face(m + 1, -1);
    int nfaces = 0;
    for (int k = 1; k <= m; ++k) {
        if (face[k] != -1) continue;
        int f = nfaces++;
        int cur = k;
        while (face[cur] == -1) {
            face[cur] = f;
            int next_pt = (cur % m) + 1; // point k+1 closing interval I_k
            cur = p.match[next_pt];
        }
    }
    std::vector<std::vector<int>> blocks(nfaces);
    for (int i = 1; i <= n; ++i)
        blocks[face[2 * i - 1]].push_back(i);
    NonCrossingPartition out;
    for (auto& b : blocks)
        if (!b.empty()) {
            std::sort(b.begin(), b.end());
            out.blocks.push_back(std::move(b));
        }
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

// Canonical key for a partition (blocks sorted, elements sorted).
inline std::vector<std::vector<int>> partition_key(const NonCrossingPartition& p) {
    auto b = p.blocks;
    for (auto& x : b) std::sort(x.begin(), x.end());
    std::sort(b.begin(), b.end());
    return b;
}

} // namespace multisle
