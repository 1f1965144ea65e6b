#include "tmatch/bipartite.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace tmatch {

namespace {
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
}

BipartiteMatcher::BipartiteMatcher(std::size_t left, std::size_t right)
    : adj_(left), match_left_(left, kFree), match_right_(right, kFree), dist_(left), it_(left)
{
}

void BipartiteMatcher::add_edge(std::size_t u, std::size_t v)
{
    if (u >= adj_.size() || v >= match_right_.size()) {
        throw std::out_of_range("BipartiteMatcher::add_edge: vertex out of range");
    }
    adj_[u].push_back(v);
}

void BipartiteMatcher::resize_right(std::size_t right)
{
    if (right > match_right_.size()) match_right_.resize(right, kFree);
}

bool BipartiteMatcher::bfs()
{
    std::deque<std::size_t> queue;
    bool found_free = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kFree) {
            dist_[u] = 0;
            queue.push_back(u);
        } else {
            dist_[u] = kInf;
        }
    }
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : adj_[u]) {
            const std::size_t w = match_right_[v];
            if (w == kFree) {
                found_free = true;
            } else if (dist_[w] == kInf) {
                dist_[w] = dist_[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return found_free;
}

bool BipartiteMatcher::dfs(std::size_t u)
{
    for (std::size_t& i = it_[u]; i < adj_[u].size(); ++i) {
        const std::size_t v = adj_[u][i];
        const std::size_t w = match_right_[v];
        if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
            match_left_[u] = v;
            match_right_[v] = u;
            ++i;
            return true;
        }
    }
    dist_[u] = kInf;
    return false;
}

std::size_t BipartiteMatcher::solve()
{
    while (bfs()) {
        std::fill(it_.begin(), it_.end(), 0);
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            if (match_left_[u] == kFree && dfs(u)) ++matched_;
        }
    }
    return matched_;
}

void BipartiteMatcher::alternating_reach(std::vector<bool>& left_reached,
                                         std::vector<bool>& right_reached) const
{
    left_reached.assign(adj_.size(), false);
    right_reached.assign(match_right_.size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kFree) {
            left_reached[u] = true;
            queue.push_back(u);
        }
    }
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : adj_[u]) {
            if (right_reached[v] || match_left_[u] == v) continue;
            right_reached[v] = true;
            const std::size_t w = match_right_[v];
            if (w != kFree && !left_reached[w]) {
                left_reached[w] = true;
                queue.push_back(w);
            }
        }
    }
}

}  // namespace tmatch
