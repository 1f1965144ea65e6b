#include "tmatch/counting.hpp"

#include "tmatch/bipartite.hpp"
#include "tmatch/families.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace tmatch {

namespace {

void check_profile_args(int n, int d_cap)
{
    if (n > 20) throw SizeGuardError("realizable profile: n must be <= 20");
    if (d_cap < 0 || d_cap > n) throw InputError("realizable profile: need 0 <= d_cap <= n");
}

// Number of distinct restrictions of the rows to `mask`.
std::uint64_t distinct_projections(const ConceptClass& c, std::uint64_t mask,
                                   std::vector<std::uint64_t>& scratch)
{
    scratch.clear();
    for (auto r : c.rows()) scratch.push_back(r & mask);
    std::sort(scratch.begin(), scratch.end());
    return static_cast<std::uint64_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

std::uint64_t count_of_size(const ConceptClass& c, int d, std::vector<std::uint64_t>& scratch)
{
    std::uint64_t total = 0;
    for_each_subset(c.domain_mask(), d, d, [&](std::uint64_t t) {
        total += distinct_projections(c, t, scratch);
        return true;
    });
    return total;
}

}  // namespace

RealizableProfile realizable_profile(const ConceptClass& c, int d_cap)
{
    check_profile_args(c.n(), d_cap);
    RealizableProfile p{c.n(), {}};
    std::vector<std::uint64_t> scratch;
    for (int d = 0; d <= d_cap; ++d) p.counts.push_back(count_of_size(c, d, scratch));
    return p;
}

RealizableProfile realizable_profile_binary_counter(std::uint64_t k, int n, int d_cap)
{
    check_profile_args(n, d_cap);
    RealizableProfile p{n, std::vector<std::uint64_t>(static_cast<std::size_t>(d_cap) + 1, 0)};
    for_each_sample(n, d_cap, [&](const LabeledSample& s) {
        if (realizable_binary_counter(s, k)) ++p.counts[static_cast<std::size_t>(s.size())];
        return true;
    });
    return p;
}

std::vector<LabeledSample> realizable_samples(const ConceptClass& c, int d)
{
    check_profile_args(c.n(), d);
    std::vector<LabeledSample> out;
    std::vector<std::uint64_t> scratch;
    for_each_subset(c.domain_mask(), 0, d, [&](std::uint64_t t) {
        const auto m = distinct_projections(c, t, scratch);
        for (std::uint64_t i = 0; i < m; ++i) out.push_back(LabeledSample::of_row(scratch[i], t));
        return true;
    });
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

int smn_prime(const ConceptClass& c)
{
    if (c.n() > 20) throw SizeGuardError("smn_prime: n must be <= 20");
    std::vector<std::uint64_t> scratch;
    std::uint64_t total = 0;
    for (int d = 0; d <= c.n(); ++d) {
        total += count_of_size(c, d, scratch);
        if (total >= c.k()) return d;
    }
    return c.n();  // unreachable: the k full samples are realizable
}

AntichainResult max_antichain(const ConceptClass& c, int d, std::size_t max_elements)
{
    if (d < 0 || d > c.n()) throw InputError("max_antichain: need 0 <= d <= n");
    if (c.n() > 20) throw SizeGuardError("max_antichain: n must be <= 20");
    if (sample_count(c.n(), d) > max_elements) {
        std::uint64_t n_real = 0;
        for (auto x : realizable_profile(c, d).counts) n_real += x;
        if (n_real > max_elements) {
            throw SizeGuardError("max_antichain: " + std::to_string(n_real) +
                                 " realizable samples exceed the guard");
        }
    }
    const auto elems = realizable_samples(c, d);
    std::unordered_map<LabeledSample, std::size_t, SampleHash> index;
    index.reserve(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);

    // Left copy u -> right copy v whenever u is a proper subset of v. Every
    // subset of a realizable sample is realizable, so all of them are present.
    BipartiteMatcher g(elems.size(), elems.size());
    for (std::size_t v = 0; v < elems.size(); ++v) {
        const auto& sv = elems[v];
        const std::uint64_t full = sv.mask();
        if (full == 0) continue;
        for (std::uint64_t sub = (full - 1) & full;; sub = (sub - 1) & full) {
            g.add_edge(index.at(LabeledSample::of_row(sv.labels(), sub)), v);
            if (sub == 0) break;
        }
    }
    const std::size_t m = g.solve();

    std::vector<bool> left_reached;
    std::vector<bool> right_reached;
    g.alternating_reach(left_reached, right_reached);
    AntichainResult out;
    out.size = elems.size() - m;
    for (std::size_t x = 0; x < elems.size(); ++x) {
        if (left_reached[x] && !right_reached[x]) out.antichain.push_back(elems[x]);
    }
    return out;
}

std::pair<int, std::vector<LabeledSample>> an_prime_with_witness(const ConceptClass& c)
{
    for (int d = smn_prime(c); d <= c.n(); ++d) {
        auto r = max_antichain(c, d);
        if (r.size >= c.k()) {
            r.antichain.resize(c.k());
            return {d, std::move(r.antichain)};
        }
    }
    // The k full samples form an antichain of size k at d = n.
    throw std::logic_error("an_prime: no antichain found at d = n");
}

int an_prime(const ConceptClass& c)
{
    return an_prime_with_witness(c).first;
}

int an_double_prime(const ConceptClass& c)
{
    if (c.n() > 20) throw SizeGuardError("an_double_prime: n must be <= 20");
    std::vector<std::uint64_t> scratch;
    for (int d = 0; d <= c.n(); ++d) {
        if (count_of_size(c, d, scratch) >= c.k()) return d;
    }
    return c.n();
}

BigCount binomial(int n, int i)
{
    if (i < 0 || n < 0 || i > n) return 0;
    i = std::min(i, n - i);
    BigCount r = 1;
    for (int t = 1; t <= i; ++t) {
        r *= n - i + t;
        r /= t;
    }
    return r;
}

BigCount phi(int n, int d)
{
    BigCount total = 0;
    BigCount b = 1;
    for (int i = 0; i <= std::min(d, n); ++i) {
        if (i > 0) {
            b *= n - i + 1;
            b /= i;
        }
        total += b;
    }
    return total;
}

int gmn_prime(const BigCount& k, int n)
{
    if (n < 0) throw InputError("gmn_prime: n must be non-negative");
    if (k < 1) throw InputError("gmn_prime: k must be positive");
    if (k > (BigCount(1) << n)) throw InputError("gmn_prime: k exceeds 2^n");
    BigCount total = 0;
    BigCount b = 1;
    for (int d = 0; d <= n; ++d) {
        if (d > 0) {
            b *= n - d + 1;
            b /= d;
        }
        total += b;
        if (total >= k) return d;
    }
    return n;
}

int gmn_prime(const ConceptClass& c)
{
    return gmn_prime(BigCount(c.k()), c.n());
}

PowersetClosedForms powerset_closed_forms(int n)
{
    if (n < 1) throw InputError("powerset_closed_forms: n must be positive");
    const BigCount target = BigCount(1) << n;
    PowersetClosedForms out{-1, -1, n};
    BigCount b = 1;  // binom(n, d)
    BigCount cumulative = 0;
    for (int d = 0; d <= n && (out.an < 0 || out.smn_prime < 0); ++d) {
        if (d > 0) {
            b *= n - d + 1;
            b /= d;
        }
        const BigCount layer = b << d;
        cumulative += layer;
        if (out.an < 0 && layer >= target) out.an = d;
        if (out.smn_prime < 0 && cumulative >= target) out.smn_prime = d;
    }
    return out;
}

bool theorem7_check(int n)
{
    const auto f = powerset_closed_forms(n);
    return f.an - 1 <= f.smn_prime && f.smn_prime <= f.an;
}

int ks_threshold(int n)
{
    if (n < 1) throw InputError("ks_threshold: n must be positive");
    return n <= 12 ? (n + 2) / 3 : n / 3 + 1;
}

GmnPowersetBound gmn_powerset_upper(int n)
{
    if (n < 1) throw InputError("gmn_powerset_upper: n must be positive");
    GmnPowersetBound out;

    // Weighted (2^j binom) and plain cumulative sums up to r_star.
    BigCount b = 1;
    BigCount weighted = 1;
    BigCount plain = 1;
    for (int r = 1; r <= n; ++r) {
        BigCount nb = b * (n - r + 1) / r;
        BigCount nw = weighted + (nb << r);
        if (nw > (BigCount(1) << (n - r))) break;
        b = nb;
        weighted = nw;
        plain += nb;
        out.r_star = r;
    }

    // Largest q with Phi_{q-1}(n) + plain <= weighted.
    BigCount lhs = plain;  // q = 0
    BigCount bq = 1;       // binom(n, q)
    out.q_max = 0;
    for (int q = 1; q <= n; ++q) {
        lhs += bq;  // adds binom(n, q-1)
        if (lhs > weighted) break;
        out.q_max = q;
        bq = bq * (n - q + 1) / q;
    }
    out.bound = std::min(n, n - out.q_max);
    return out;
}

double entropy(double p)
{
    if (!(p > 0.0 && p < 1.0)) throw InputError("entropy: p must lie in (0, 1)");
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::pair<double, double> p_star(double tol)
{
    if (!(tol > 0.0)) throw InputError("p_star: tolerance must be positive");
    // f(p) = H(p) - (1 - 2p) is negative near 0 and equals 1 at p = 1/2.
    double lo = 1e-12;
    double hi = 0.5;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (entropy(mid) - (1.0 - 2.0 * mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

}  // namespace tmatch
