#pragma once

// Hopcroft-Karp maximum bipartite matching with warm starts, plus the König
// vertex-cover extraction used for maximum antichains.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tmatch {

class BipartiteMatcher {
public:
    static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

    BipartiteMatcher(std::size_t left, std::size_t right);

    void add_edge(std::size_t u, std::size_t v);
    /// Grows the right side; existing matching is kept.
    void resize_right(std::size_t right);

    /// Augments the current matching to a maximum one; returns its size.
    std::size_t solve();

    std::size_t size() const noexcept { return matched_; }
    std::size_t left_size() const noexcept { return adj_.size(); }
    std::size_t right_size() const noexcept { return match_right_.size(); }
    std::size_t mate_of_left(std::size_t u) const { return match_left_.at(u); }
    std::size_t mate_of_right(std::size_t v) const { return match_right_.at(v); }

    /// Left/right vertices reachable from free left vertices along alternating
    /// paths (König). Call after solve().
    void alternating_reach(std::vector<bool>& left_reached, std::vector<bool>& right_reached) const;

private:
    bool bfs();
    bool dfs(std::size_t u);

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::uint32_t> dist_;
    std::vector<std::size_t> it_;
    std::size_t matched_ = 0;
};

}  // namespace tmatch
