#include "tmatch/core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tmatch {

LabeledSample::LabeledSample(std::uint64_t mask, std::uint64_t labels)
    : mask_(mask), labels_(labels)
{
    if ((labels & ~mask) != 0) {
        throw InputError("labeled sample: label bit set outside the instance mask");
    }
}

LabeledSample LabeledSample::from_pairs(std::span<const std::pair<int, int>> pairs)
{
    std::uint64_t mask = 0;
    std::uint64_t labels = 0;
    for (auto [j, b] : pairs) {
        if (j < 0 || j > kMaxInstances) {
            throw InputError("labeled sample: instance index " + std::to_string(j) +
                             " out of range");
        }
        if (b != 0 && b != 1) {
            throw InputError("labeled sample: label must be 0 or 1");
        }
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (mask & bit) {
            throw InputError("labeled sample: instance " + std::to_string(j) + " appears twice");
        }
        mask |= bit;
        if (b) labels |= bit;
    }
    return LabeledSample(mask, labels);
}

std::vector<std::pair<int, int>> LabeledSample::pairs() const
{
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
        const int j = std::countr_zero(m);
        out.emplace_back(j, static_cast<int>((labels_ >> j) & 1U));
    }
    return out;
}

std::string LabeledSample::to_string() const
{
    std::string out;
    for (auto [j, b] : pairs()) {
        if (!out.empty()) out += ' ';
        out += '(' + std::to_string(j) + ',' + std::to_string(b) + ')';
    }
    return out;
}

bool canonical_less(const LabeledSample& a, const LabeledSample& b) noexcept
{
    const int sa = a.size();
    const int sb = b.size();
    if (sa != sb) return sa < sb;
    std::uint64_t ma = a.mask();
    std::uint64_t mb = b.mask();
    while (ma != 0) {
        const int ja = std::countr_zero(ma);
        const int jb = std::countr_zero(mb);
        if (ja != jb) return ja < jb;
        const auto la = (a.labels() >> ja) & 1U;
        const auto lb = (b.labels() >> jb) & 1U;
        if (la != lb) return la < lb;
        ma &= ma - 1;
        mb &= mb - 1;
    }
    return false;
}

ConceptClass::ConceptClass(int n, std::vector<std::uint64_t> rows) : n_(n), rows_(std::move(rows))
{
    if (n_ < 1 || n_ > kMaxInstances) {
        throw InputError("concept class: instance count must lie in [1, 63], got " +
                         std::to_string(n_));
    }
    if (rows_.empty()) {
        throw InputError("concept class: at least one concept required");
    }
    const std::uint64_t mask = low_bits(n_);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if ((rows_[i] & ~mask) != 0) {
            throw InputError("concept class: row " + std::to_string(i) + " exceeds " +
                             std::to_string(n_) + " instances");
        }
        if (!seen.insert(rows_[i]).second) {
            throw InputError("concept class: duplicate row " + std::to_string(i));
        }
    }
}

std::optional<std::size_t> ConceptClass::index_of(std::uint64_t row) const noexcept
{
    const auto it = std::find(rows_.begin(), rows_.end(), row);
    if (it == rows_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - rows_.begin());
}

bool ConceptClass::same_rows(const ConceptClass& other) const
{
    if (n_ != other.n_ || rows_.size() != other.rows_.size()) return false;
    auto a = rows_;
    auto b = other.rows_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

int SaturatingMatching::cost() const noexcept
{
    int c = 0;
    for (const auto& s : assignment) c = std::max(c, s.size());
    return c;
}

ParamResult ParamResult::interval(int value, int lower, int upper, std::string method, Witness w)
{
    ParamResult r{value, lower == upper, lower, upper, std::move(method), std::move(w)};
    return r;
}

void check_sample_domain(const LabeledSample& s, int n)
{
    if ((s.mask() & ~low_bits(n)) != 0) {
        throw InputError("sample {" + s.to_string() + "} uses an instance outside 0.." +
                         std::to_string(n - 1));
    }
}

bool consistent(std::uint64_t row, int n, const LabeledSample& s)
{
    check_sample_domain(s, n);
    return ((row ^ s.labels()) & s.mask()) == 0;
}

bool consistent(const ConceptClass& c, std::size_t i, const LabeledSample& s)
{
    return consistent(c.row(i), c.n(), s);
}

bool realizable(const ConceptClass& c, const LabeledSample& s)
{
    check_sample_domain(s, c.n());
    return std::any_of(c.rows().begin(), c.rows().end(), [&](std::uint64_t r) {
        return ((r ^ s.labels()) & s.mask()) == 0;
    });
}

std::uint64_t sample_count(int n, int d)
{
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // binom(n, i)
    for (int i = 0; i <= d && i <= n; ++i) {
        if (i > 0) {
            // binom(n,i) = binom(n,i-1) * (n-i+1) / i, exact in 128 bits.
            const auto next = static_cast<unsigned __int128>(binom) * static_cast<unsigned>(n - i + 1) /
                              static_cast<unsigned>(i);
            if (next > kMax) return kMax;
            binom = static_cast<std::uint64_t>(next);
        }
        if (i >= 64) return kMax;
        const auto term = static_cast<unsigned __int128>(binom) << i;
        if (term > kMax || total > kMax - static_cast<std::uint64_t>(term)) return kMax;
        total += static_cast<std::uint64_t>(term);
    }
    return total;
}

namespace {

void check_sample_bounds(int n, int d)
{
    if (n < 0 || n > kMaxInstances) {
        throw InputError("enumerate_samples: n must lie in [0, 63]");
    }
    if (d < 0 || d > n) {
        throw InputError("enumerate_samples: size cap d=" + std::to_string(d) +
                         " must lie in [0, n=" + std::to_string(n) + "]");
    }
}

// Emits all samples of exactly `remaining` more pairs, instances > `last`.
bool emit_samples(int n, int remaining, int next_instance, std::uint64_t mask, std::uint64_t labels,
                  const std::function<bool(const LabeledSample&)>& fn)
{
    if (remaining == 0) return fn(LabeledSample::of_row(labels, mask));
    for (int j = next_instance; j <= n - remaining; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (!emit_samples(n, remaining - 1, j + 1, mask | bit, labels, fn)) return false;
        if (!emit_samples(n, remaining - 1, j + 1, mask | bit, labels | bit, fn)) return false;
    }
    return true;
}

bool emit_subsets(std::span<const int> elems, std::size_t from, int remaining, std::uint64_t acc,
                  const std::function<bool(std::uint64_t)>& fn)
{
    if (remaining == 0) return fn(acc);
    for (std::size_t i = from; i + static_cast<std::size_t>(remaining) <= elems.size(); ++i) {
        if (!emit_subsets(elems, i + 1, remaining - 1, acc | (std::uint64_t{1} << elems[i]), fn)) {
            return false;
        }
    }
    return true;
}

}  // namespace

void for_each_sample(int n, int d, const std::function<bool(const LabeledSample&)>& fn)
{
    check_sample_bounds(n, d);
    for (int size = 0; size <= d; ++size) {
        if (!emit_samples(n, size, 0, 0, 0, fn)) return;
    }
}

std::vector<LabeledSample> enumerate_samples(int n, int d)
{
    check_sample_bounds(n, d);
    std::vector<LabeledSample> out;
    for_each_sample(n, d, [&](const LabeledSample& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

void for_each_subset(std::uint64_t universe, int lo, int hi,
                     const std::function<bool(std::uint64_t)>& fn)
{
    std::vector<int> elems;
    for (std::uint64_t m = universe; m != 0; m &= m - 1) elems.push_back(std::countr_zero(m));
    lo = std::max(lo, 0);
    hi = std::min(hi, static_cast<int>(elems.size()));
    for (int size = lo; size <= hi; ++size) {
        if (!emit_subsets(elems, 0, size, 0, fn)) return;
    }
}

bool is_antichain(std::span<const LabeledSample> samples)
{
    std::vector<LabeledSample> set(samples.begin(), samples.end());
    std::sort(set.begin(), set.end(), CanonicalLess{});
    set.erase(std::unique(set.begin(), set.end()), set.end());
    // After sorting by size, only a smaller-or-equal-size element can be
    // contained in a later one.
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            if (set[i].subset_of(set[j])) return false;
        }
    }
    return true;
}

std::string to_string(MatchingViolation::Kind kind)
{
    switch (kind) {
    case MatchingViolation::Kind::wrong_size: return "wrong-size";
    case MatchingViolation::Kind::out_of_domain: return "out-of-domain";
    case MatchingViolation::Kind::inconsistent: return "inconsistent";
    case MatchingViolation::Kind::not_injective: return "not-injective";
    }
    return "unknown";
}

MatchingCheck validate_matching(const ConceptClass& c, const SaturatingMatching& m)
{
    MatchingCheck out;
    if (m.assignment.size() != c.k()) {
        out.violations.push_back({MatchingViolation::Kind::wrong_size, {}});
        return out;
    }
    const std::uint64_t dom = c.domain_mask();
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::size_t>> owners;
    for (std::size_t i = 0; i < c.k(); ++i) {
        const auto& s = m.assignment[i];
        if ((s.mask() & ~dom) != 0) {
            out.violations.push_back({MatchingViolation::Kind::out_of_domain, {i}});
            continue;
        }
        if (((c.row(i) ^ s.labels()) & s.mask()) != 0) {
            out.violations.push_back({MatchingViolation::Kind::inconsistent, {i}});
        }
        owners[{s.mask(), s.labels()}].push_back(i);
    }
    std::vector<std::vector<std::size_t>> clashes;
    for (auto& [key, idx] : owners) {
        if (idx.size() > 1) clashes.push_back(idx);
    }
    std::sort(clashes.begin(), clashes.end());
    for (auto& idx : clashes) {
        out.violations.push_back({MatchingViolation::Kind::not_injective, std::move(idx)});
    }
    out.valid = out.violations.empty();
    out.cost = m.cost();
    return out;
}

std::optional<DirectImprovement> find_direct_improvement(const ConceptClass& c,
                                                         const SaturatingMatching& m)
{
    if (!validate_matching(c, m).valid) {
        throw InputError("find_direct_improvement: not a valid saturating matching");
    }
    std::unordered_set<LabeledSample, SampleHash> used(m.assignment.begin(), m.assignment.end());
    for (std::size_t i = 0; i < c.k(); ++i) {
        const int current = m.assignment[i].size();
        if (current == 0) continue;
        std::optional<DirectImprovement> found;
        // Consistent samples of c_i in canonical order are its restrictions to
        // instance subsets in size-then-lexicographic order.
        for_each_subset(c.domain_mask(), 0, current - 1, [&](std::uint64_t t) {
            const auto s = LabeledSample::of_row(c.row(i), t);
            if (!used.contains(s)) {
                found = DirectImprovement{i, s};
                return false;
            }
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;
}

ConceptClass free_combination(const ConceptClass& c1, const ConceptClass& c2)
{
    const int n = c1.n() + c2.n();
    if (n > kMaxInstances) {
        throw SizeGuardError("free_combination: combined domain exceeds 63 instances");
    }
    std::vector<std::uint64_t> rows;
    rows.reserve(c1.k() * c2.k());
    for (auto r1 : c1.rows()) {
        for (auto r2 : c2.rows()) rows.push_back(r1 | (r2 << c1.n()));
    }
    return ConceptClass(n, std::move(rows));
}

bool shattered(const ConceptClass& c, std::uint64_t instances)
{
    if ((instances & ~c.domain_mask()) != 0) {
        throw InputError("shattered: instance set leaves the domain");
    }
    const int t = std::popcount(instances);
    if (t >= 63 || (std::uint64_t{1} << t) > c.k()) return false;
    std::unordered_set<std::uint64_t> patterns;
    for (auto r : c.rows()) patterns.insert(r & instances);
    return patterns.size() == (std::size_t{1} << t);
}

std::uint64_t instance_mask(std::span<const int> instances, int n)
{
    std::uint64_t mask = 0;
    for (int j : instances) {
        if (j < 0 || j >= n) {
            throw InputError("instance index " + std::to_string(j) + " outside 0.." +
                             std::to_string(n - 1));
        }
        mask |= std::uint64_t{1} << j;
    }
    return mask;
}

bool shattered(const ConceptClass& c, std::span<const int> instances)
{
    return shattered(c, instance_mask(instances, c.n()));
}

Restriction restrict_to(const ConceptClass& c, std::span<const int> instances)
{
    const std::uint64_t mask = instance_mask(instances, c.n());
    if (mask == 0) throw InputError("restrict: empty instance subset");
    std::vector<int> cols;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) cols.push_back(std::countr_zero(m));

    std::vector<std::uint64_t> rows;
    std::unordered_set<std::uint64_t> seen;
    bool distinguishing = true;
    for (auto r : c.rows()) {
        std::uint64_t p = 0;
        for (std::size_t t = 0; t < cols.size(); ++t) {
            p |= ((r >> cols[t]) & 1U) << t;
        }
        if (seen.insert(p).second) {
            rows.push_back(p);
        } else {
            distinguishing = false;
        }
    }
    return Restriction{ConceptClass(static_cast<int>(cols.size()), std::move(rows)), distinguishing};
}

}  // namespace tmatch
