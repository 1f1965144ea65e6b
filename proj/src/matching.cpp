#include "tmatch/matching.hpp"

#include "tmatch/bipartite.hpp"
#include "tmatch/counting.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tmatch {

namespace {

// Consistent samples of `row` with size in [lo, hi], canonical order.
std::vector<LabeledSample> consistent_samples(std::uint64_t row, int n, int lo, int hi)
{
    std::vector<LabeledSample> out;
    for_each_subset(low_bits(n), lo, hi, [&](std::uint64_t t) {
        out.push_back(LabeledSample::of_row(row, t));
        return true;
    });
    return out;
}

bool comparable(const LabeledSample& a, const LabeledSample& b) noexcept
{
    return a.subset_of(b) || b.subset_of(a);
}

void check_oracle_guard(const ConceptClass& c, const char* what)
{
    if (c.k() > 8 || c.n() > 4) {
        throw SizeGuardError(std::string(what) + ": requires k <= 8 and n <= 4");
    }
}

void check_solver_guard(const ConceptClass& c, const char* what)
{
    if (c.k() > 4096 || c.n() > 20) {
        throw SizeGuardError(std::string(what) + ": requires k <= 4096 and n <= 20");
    }
}

// Registry of distinct samples with dense ids.
class SampleIndex {
public:
    std::size_t id(const LabeledSample& s)
    {
        auto [it, inserted] = ids_.try_emplace(s, samples_.size());
        if (inserted) samples_.push_back(s);
        return it->second;
    }
    const LabeledSample& at(std::size_t id) const { return samples_[id]; }
    std::size_t size() const noexcept { return samples_.size(); }

private:
    std::unordered_map<LabeledSample, std::size_t, SampleHash> ids_;
    std::vector<LabeledSample> samples_;
};

}  // namespace

GreedyOrdering GreedyOrdering::canonical(const ConceptClass& c)
{
    GreedyOrdering o;
    o.concept_order.resize(c.k());
    std::iota(o.concept_order.begin(), o.concept_order.end(), std::size_t{0});
    return o;
}

std::vector<LabeledSample> linear_extension(int n, const std::vector<LabeledSample>& preferred)
{
    if (n > 8) throw SizeGuardError("linear_extension: n must be <= 8");
    std::unordered_map<LabeledSample, std::size_t, SampleHash> rank;
    for (std::size_t i = 0; i < preferred.size(); ++i) rank.try_emplace(preferred[i], i);
    auto all = enumerate_samples(n, n);
    constexpr auto kLast = std::numeric_limits<std::size_t>::max();
    std::stable_sort(all.begin(), all.end(), [&](const LabeledSample& a, const LabeledSample& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        const auto ia = rank.contains(a) ? rank.at(a) : kLast;
        const auto ib = rank.contains(b) ? rank.at(b) : kLast;
        return ia < ib;  // stable: canonical order among the rest
    });
    return all;
}

SaturatingMatching greedy_run(const ConceptClass& c, const GreedyOrdering& ordering)
{
    const std::size_t k = c.k();
    {
        std::vector<std::size_t> perm = ordering.concept_order;
        std::sort(perm.begin(), perm.end());
        std::vector<std::size_t> ident(k);
        std::iota(ident.begin(), ident.end(), std::size_t{0});
        if (perm != ident) throw InputError("greedy_run: concept order is not a permutation");
    }
    const auto& order = ordering.sample_order;
    for (std::size_t i = 0; i < order.size(); ++i) {
        check_sample_domain(order[i], c.n());
        if (i > 0 && order[i].size() < order[i - 1].size()) {
            throw InputError("greedy_run: sample order places a larger sample before a smaller one");
        }
    }
    {
        std::unordered_set<LabeledSample, SampleHash> distinct(order.begin(), order.end());
        if (distinct.size() != order.size()) throw InputError("greedy_run: repeated sample in order");
    }

    SaturatingMatching m;
    m.assignment.resize(k);
    std::unordered_set<LabeledSample, SampleHash> used;
    for (std::size_t i : ordering.concept_order) {
        const std::uint64_t row = c.row(i);
        std::optional<LabeledSample> pick;
        if (order.empty()) {
            for_each_subset(c.domain_mask(), 0, c.n(), [&](std::uint64_t t) {
                const auto s = LabeledSample::of_row(row, t);
                if (used.contains(s)) return true;
                pick = s;
                return false;
            });
        } else {
            for (const auto& s : order) {
                if (((row ^ s.labels()) & s.mask()) == 0 && !used.contains(s)) {
                    pick = s;
                    break;
                }
            }
        }
        if (!pick) throw InputError("greedy_run: sample order has no free sample for concept " +
                                    std::to_string(i));
        used.insert(*pick);
        m.assignment[i] = *pick;
    }
    return m;
}

// --- SMN -------------------------------------------------------------------

ParamResult smn(const ConceptClass& c)
{
    check_solver_guard(c, "smn");
    const int start = smn_prime(c);
    const std::size_t k = c.k();
    SampleIndex index;
    BipartiteMatcher g(k, 0);
    for (int d = 0; d <= c.n(); ++d) {
        // Edges to samples of size exactly d; the matching found for d - 1
        // stays in place and is only augmented.
        for (std::size_t i = 0; i < k; ++i) {
            for (const auto& s : consistent_samples(c.row(i), c.n(), d, d)) {
                const std::size_t id = index.id(s);
                g.resize_right(index.size());
                g.add_edge(i, id);
            }
        }
        if (d < start) continue;
        if (g.solve() == k) {
            SaturatingMatching m;
            for (std::size_t i = 0; i < k; ++i) m.assignment.push_back(index.at(g.mate_of_left(i)));
            return ParamResult::exact_value(d, "bottleneck-matching", std::move(m));
        }
    }
    throw std::logic_error("smn: full samples always saturate");
}

// --- GMN -------------------------------------------------------------------

namespace {

class GreedyMaxSearch {
public:
    GreedyMaxSearch(const ConceptClass& c, int cap, std::uint64_t budget)
        : c_(c), k_(c.k()), cap_(cap), budget_(budget)
    {
        by_size_.resize(k_);
        for (std::size_t i = 0; i < k_; ++i) {
            by_size_[i].resize(static_cast<std::size_t>(cap) + 1);
            for (int s = 0; s <= cap; ++s) {
                for (const auto& smp : consistent_samples(c.row(i), c.n(), s, s)) {
                    by_size_[i][static_cast<std::size_t>(s)].push_back(index_.id(smp));
                }
            }
        }
        owner_.assign(index_.size(), kNone);
        required_.assign(index_.size(), 0);
        holders_.resize(index_.size());
        for (std::size_t i = 0; i < k_; ++i) {
            for (const auto& layer : by_size_[i]) {
                for (auto id : layer) holders_[id].push_back(i);
            }
        }
        assigned_.assign(k_, kNone);
    }

    enum class Outcome { found, none, budget };

    /// Looks for a greedy matching in which some concept holds a sample of
    /// size exactly t and none holds a larger one.
    Outcome search(int target)
    {
        target_ = target;
        for (std::size_t w = 0; w < k_; ++w) {
            for (auto id : by_size_[w][static_cast<std::size_t>(target)]) {
                if (!step()) return Outcome::budget;
                assign(w, id);
                const bool ok = feasible() && extend(0);
                if (ok) return Outcome::found;
                unassign(w);
                if (exhausted_) return Outcome::budget;
            }
        }
        return Outcome::none;
    }

    SaturatingMatching matching() const
    {
        SaturatingMatching m;
        for (auto id : assigned_) m.assignment.push_back(index_.at(id));
        return m;
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    bool step()
    {
        if (++nodes_ > budget_) exhausted_ = true;
        return !exhausted_;
    }

    void assign(std::size_t i, std::size_t id)
    {
        assigned_[i] = id;
        owner_[id] = i;
        ++n_assigned_;
        const int size = index_.at(id).size();
        for (int s = 0; s < size; ++s) {
            for (auto r : by_size_[i][static_cast<std::size_t>(s)]) ++required_[r];
        }
    }

    void unassign(std::size_t i)
    {
        const std::size_t id = assigned_[i];
        const int size = index_.at(id).size();
        for (int s = 0; s < size; ++s) {
            for (auto r : by_size_[i][static_cast<std::size_t>(s)]) --required_[r];
        }
        owner_[id] = kNone;
        assigned_[i] = kNone;
        --n_assigned_;
    }

    // Every sample that some assigned concept skipped over must still be
    // claimable by an unassigned concept.
    bool feasible() const
    {
        std::size_t open = 0;
        for (std::size_t id = 0; id < required_.size(); ++id) {
            if (required_[id] == 0 || owner_[id] != kNone) continue;
            ++open;
            const auto& hs = holders_[id];
            if (std::none_of(hs.begin(), hs.end(), [&](std::size_t h) { return assigned_[h] == kNone; })) {
                return false;
            }
        }
        return open <= k_ - n_assigned_;
    }

    bool extend(std::size_t from)
    {
        std::size_t i = from;
        while (i < k_ && assigned_[i] != kNone) ++i;
        if (i == k_) {
            return !find_direct_improvement(c_, matching()).has_value();
        }
        for (int s = 0; s <= target_; ++s) {
            for (auto id : by_size_[i][static_cast<std::size_t>(s)]) {
                if (owner_[id] != kNone) continue;
                if (!step()) return false;
                assign(i, id);
                if (feasible() && extend(i + 1)) return true;
                unassign(i);
                if (exhausted_) return false;
            }
        }
        return false;
    }

    const ConceptClass& c_;
    std::size_t k_;
    int cap_;
    std::uint64_t budget_;
    int target_ = 0;
    SampleIndex index_;
    std::vector<std::vector<std::vector<std::size_t>>> by_size_;
    std::vector<std::vector<std::size_t>> holders_;
    std::vector<std::size_t> owner_;
    std::vector<int> required_;
    std::vector<std::size_t> assigned_;
    std::size_t n_assigned_ = 0;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace

ParamResult gmn(const ConceptClass& c, const SearchLimits& limits)
{
    check_solver_guard(c, "gmn");
    // No matching costlier than GMN' admits no direct improvement.
    const int upper = gmn_prime(c);
    if (c.k() == 1) {
        SaturatingMatching m{{LabeledSample{}}};
        return ParamResult::exact_value(0, "exhaustive", std::move(m));
    }
    GreedyMaxSearch search(c, upper, limits.node_budget);
    for (int t = upper; t >= 1; --t) {
        const auto outcome = search.search(t);
        if (outcome == GreedyMaxSearch::Outcome::found) {
            return ParamResult::exact_value(t, "exhaustive", search.matching());
        }
        if (outcome == GreedyMaxSearch::Outcome::budget) {
            // Fall back to the best of a few greedy runs as the lower end.
            auto best = greedy_run(c, GreedyOrdering::canonical(c));
            auto reversed = GreedyOrdering::canonical(c);
            std::reverse(reversed.concept_order.begin(), reversed.concept_order.end());
            auto other = greedy_run(c, reversed);
            if (other.cost() > best.cost()) best = other;
            const int lo = best.cost();
            return ParamResult::interval(lo, lo, t, "exhaustive-budget", std::move(best));
        }
    }
    throw std::logic_error("gmn: every class with k >= 2 has a greedy matching of cost >= 1");
}

// --- AN --------------------------------------------------------------------

namespace {

std::optional<SaturatingMatching> uniform_perfect_matching(const ConceptClass& c, int d)
{
    SampleIndex index;
    BipartiteMatcher g(c.k(), 0);
    for (std::size_t i = 0; i < c.k(); ++i) {
        for (const auto& s : consistent_samples(c.row(i), c.n(), d, d)) {
            const std::size_t id = index.id(s);
            g.resize_right(index.size());
            g.add_edge(i, id);
        }
    }
    if (g.solve() != c.k()) return std::nullopt;
    SaturatingMatching m;
    for (std::size_t i = 0; i < c.k(); ++i) m.assignment.push_back(index.at(g.mate_of_left(i)));
    return m;
}

class AntichainSearch {
public:
    AntichainSearch(const ConceptClass& c, int d, std::uint64_t budget) : k_(c.k()), budget_(budget)
    {
        domain_.resize(k_);
        killed_.resize(k_);
        alive_.assign(k_, 0);
        for (std::size_t i = 0; i < k_; ++i) {
            // Largest samples first: equal-size samples never conflict.
            for (int s = d; s >= 0; --s) {
                for (const auto& smp : consistent_samples(c.row(i), c.n(), s, s)) {
                    domain_[i].push_back(smp);
                }
            }
            killed_[i].assign(domain_[i].size(), 0);
            alive_[i] = domain_[i].size();
        }
        chosen_.assign(k_, std::nullopt);
    }

    enum class Outcome { found, none, budget };

    Outcome run()
    {
        const bool ok = solve(1);
        if (ok) return Outcome::found;
        return exhausted_ ? Outcome::budget : Outcome::none;
    }

    SaturatingMatching matching() const
    {
        SaturatingMatching m;
        for (const auto& s : chosen_) m.assignment.push_back(*s);
        return m;
    }

private:
    bool solve(int depth)
    {
        std::size_t pick = k_;
        for (std::size_t i = 0; i < k_; ++i) {
            if (chosen_[i]) continue;
            if (pick == k_ || alive_[i] < alive_[pick]) pick = i;
        }
        if (pick == k_) return true;
        if (alive_[pick] == 0) return false;
        for (std::size_t a = 0; a < domain_[pick].size(); ++a) {
            if (killed_[pick][a] != 0) continue;
            if (++nodes_ > budget_) {
                exhausted_ = true;
                return false;
            }
            const LabeledSample& s = domain_[pick][a];
            chosen_[pick] = s;
            bool wiped = false;
            for (std::size_t j = 0; j < k_; ++j) {
                if (chosen_[j]) continue;
                for (std::size_t b = 0; b < domain_[j].size(); ++b) {
                    if (killed_[j][b] == 0 && comparable(domain_[j][b], s)) {
                        killed_[j][b] = depth;
                        --alive_[j];
                    }
                }
                if (alive_[j] == 0) wiped = true;
            }
            if (!wiped && solve(depth + 1)) return true;
            for (std::size_t j = 0; j < k_; ++j) {
                if (chosen_[j]) continue;
                for (std::size_t b = 0; b < domain_[j].size(); ++b) {
                    if (killed_[j][b] == depth) {
                        killed_[j][b] = 0;
                        ++alive_[j];
                    }
                }
            }
            chosen_[pick].reset();
            if (exhausted_) return false;
        }
        return false;
    }

    std::size_t k_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    std::vector<std::vector<LabeledSample>> domain_;
    std::vector<std::vector<int>> killed_;
    std::vector<std::size_t> alive_;
    std::vector<std::optional<LabeledSample>> chosen_;
};

}  // namespace

ParamResult amn(const ConceptClass& c, const SearchLimits& limits)
{
    check_solver_guard(c, "amn");
    const int lower = std::max(an_prime(c), smn(c).value);
    int upper = lower;
    std::optional<SaturatingMatching> uniform;
    for (; upper <= c.n(); ++upper) {
        uniform = uniform_perfect_matching(c, upper);
        if (uniform) break;
    }
    if (!uniform) throw std::logic_error("amn: full samples form a uniform matching");
    if (lower == upper) return ParamResult::exact_value(upper, "sandwich", std::move(*uniform));

    std::uint64_t budget = limits.node_budget;
    for (int d = lower; d < upper; ++d) {
        AntichainSearch search(c, d, budget);
        switch (search.run()) {
        case AntichainSearch::Outcome::found:
            return ParamResult::exact_value(d, "branch-and-bound", search.matching());
        case AntichainSearch::Outcome::budget:
            return ParamResult::interval(upper, d, upper, "branch-and-bound-budget", std::move(*uniform));
        case AntichainSearch::Outcome::none:
            break;
        }
    }
    return ParamResult::exact_value(upper, "branch-and-bound", std::move(*uniform));
}

// --- oracles ---------------------------------------------------------------

namespace {

// Plain backtracking over injective consistent assignments in concept order.
class AssignmentEnumerator {
public:
    AssignmentEnumerator(const ConceptClass& c, int max_size, bool antichain)
        : c_(c), antichain_(antichain)
    {
        for (std::size_t i = 0; i < c.k(); ++i) {
            options_.push_back(consistent_samples(c.row(i), c.n(), 0, max_size));
        }
        current_.assignment.resize(c.k());
    }

    /// Calls fn on each complete assignment until fn returns false.
    template <class Fn, class Prune>
    void run(Fn&& fn, Prune&& prune)
    {
        stop_ = false;
        recurse(0, fn, prune);
    }

    SaturatingMatching current_;

private:
    template <class Fn, class Prune>
    void recurse(std::size_t i, Fn& fn, Prune& prune)
    {
        if (stop_) return;
        if (i == c_.k()) {
            if (!fn(current_)) stop_ = true;
            return;
        }
        for (const auto& s : options_[i]) {
            bool clash = false;
            for (std::size_t j = 0; j < i && !clash; ++j) {
                const auto& t = current_.assignment[j];
                clash = antichain_ ? comparable(s, t) : s == t;
            }
            if (clash) continue;
            current_.assignment[i] = s;
            if (prune(i + 1, current_)) continue;
            recurse(i + 1, fn, prune);
            if (stop_) return;
        }
    }

    const ConceptClass& c_;
    bool antichain_;
    bool stop_ = false;
    std::vector<std::vector<LabeledSample>> options_;
};

// A partial assignment of the first `assigned` concepts cannot extend to a
// greedy matching when a sample skipped by an assigned concept is unused and
// consistent with no unassigned concept.
bool dead_end(const ConceptClass& c, std::size_t assigned, const SaturatingMatching& m)
{
    for (std::size_t i = 0; i < assigned; ++i) {
        bool dead = false;
        for_each_subset(c.domain_mask(), 0, m.assignment[i].size() - 1, [&](std::uint64_t t) {
            const auto s = LabeledSample::of_row(c.row(i), t);
            for (std::size_t j = 0; j < assigned; ++j) {
                if (m.assignment[j] == s) return true;
            }
            for (std::size_t j = assigned; j < c.k(); ++j) {
                if (((c.row(j) ^ s.labels()) & s.mask()) == 0) return true;
            }
            dead = true;
            return false;
        });
        if (dead) return true;
    }
    return false;
}

}  // namespace

int oracle_param(const ConceptClass& c, OracleParam which)
{
    check_oracle_guard(c, "oracle_param");
    if (which == OracleParam::gmn) {
        int best = -1;
        for (const auto& m : enumerate_greedy_matchings(c)) best = std::max(best, m.cost());
        return best;
    }
    const bool antichain = which == OracleParam::amn;
    for (int d = 0; d <= c.n(); ++d) {
        AssignmentEnumerator e(c, d, antichain);
        bool found = false;
        e.run([&](const SaturatingMatching&) {
            found = true;
            return false;
        },
              [](std::size_t, const SaturatingMatching&) { return false; });
        if (found) return d;
    }
    throw std::logic_error("oracle_param: full samples always saturate");
}

std::vector<SaturatingMatching> enumerate_greedy_matchings(const ConceptClass& c)
{
    check_oracle_guard(c, "enumerate_greedy_matchings");
    std::vector<SaturatingMatching> out;
    AssignmentEnumerator e(c, c.n(), false);
    e.run(
        [&](const SaturatingMatching& m) {
            if (!find_direct_improvement(c, m)) out.push_back(m);
            return true;
        },
        [&](std::size_t assigned, const SaturatingMatching& m) { return dead_end(c, assigned, m); });
    return out;
}

namespace {

struct MatchingLess {
    bool operator()(const SaturatingMatching& a, const SaturatingMatching& b) const
    {
        return std::lexicographical_compare(a.assignment.begin(), a.assignment.end(),
                                            b.assignment.begin(), b.assignment.end(),
                                            [](const LabeledSample& x, const LabeledSample& y) {
                                                if (x.mask() != y.mask()) return x.mask() < y.mask();
                                                return x.labels() < y.labels();
                                            });
    }
};

class GreedyProcedureExplorer {
public:
    explicit GreedyProcedureExplorer(const ConceptClass& c) : c_(c)
    {
        partial_.assign(c.k(), std::nullopt);
    }

    std::vector<GreedyOutcome> run()
    {
        explore();
        std::vector<GreedyOutcome> out;
        for (auto& [m, o] : results_) out.push_back(o);
        return out;
    }

private:
    std::string key() const
    {
        std::string k;
        for (const auto& s : partial_) {
            if (!s) {
                k += '-';
            } else {
                k += std::to_string(s->mask()) + ':' + std::to_string(s->labels());
            }
            k += ';';
        }
        return k;
    }

    void explore()
    {
        if (!seen_.insert(key()).second) return;
        if (order_.size() == c_.k()) {
            SaturatingMatching m;
            for (const auto& s : partial_) m.assignment.push_back(*s);
            if (!results_.contains(m)) {
                GreedyOrdering o;
                o.concept_order = order_;
                o.sample_order = linear_extension(c_.n(), choices_);
                results_.emplace(m, GreedyOutcome{m, std::move(o)});
            }
            return;
        }
        for (std::size_t i = 0; i < c_.k(); ++i) {
            if (partial_[i]) continue;
            // The procedure's free choice: any cheapest available sample.
            std::vector<LabeledSample> cheapest;
            for (int s = 0; s <= c_.n() && cheapest.empty(); ++s) {
                for (const auto& smp : consistent_samples(c_.row(i), c_.n(), s, s)) {
                    const bool taken = std::any_of(partial_.begin(), partial_.end(), [&](const auto& p) {
                        return p && *p == smp;
                    });
                    if (!taken) cheapest.push_back(smp);
                }
            }
            for (const auto& smp : cheapest) {
                partial_[i] = smp;
                order_.push_back(i);
                choices_.push_back(smp);
                explore();
                choices_.pop_back();
                order_.pop_back();
                partial_[i].reset();
            }
        }
    }

    const ConceptClass& c_;
    std::vector<std::optional<LabeledSample>> partial_;
    std::vector<std::size_t> order_;
    std::vector<LabeledSample> choices_;
    std::unordered_set<std::string> seen_;
    std::map<SaturatingMatching, GreedyOutcome, MatchingLess> results_;
};

}  // namespace

std::vector<GreedyOutcome> enumerate_greedy_outputs(const ConceptClass& c)
{
    check_oracle_guard(c, "enumerate_greedy_outputs");
    return GreedyProcedureExplorer(c).run();
}

}  // namespace tmatch
