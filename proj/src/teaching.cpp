#include "tmatch/teaching.hpp"

#include "tmatch/families.hpp"

#include <algorithm>
#include <queue>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace tmatch {

namespace {

void check_guard(const ConceptClass& c, const char* what)
{
    if (c.n() > 20 || c.k() > 4096) {
        throw SizeGuardError(std::string(what) + ": requires n <= 20 and k <= 4096");
    }
}

int teaching_dim_among(std::uint64_t row, const std::vector<std::uint64_t>& rows, int n,
                       LabeledSample* witness)
{
    int found = -1;
    for_each_subset(low_bits(n), 0, n, [&](std::uint64_t t) {
        for (auto r : rows) {
            if (r != row && ((r ^ row) & t) == 0) return true;
        }
        found = std::popcount(t);
        if (witness) *witness = LabeledSample::of_row(row, t);
        return false;
    });
    return found;  // the full sample always distinguishes distinct rows
}

}  // namespace

ParamResult vcd(const ConceptClass& c)
{
    check_guard(c, "vcd");
    std::vector<int> best;
    const int top = std::min(c.n(), floor_log2(c.k()));
    for (int d = 1; d <= top; ++d) {
        std::uint64_t hit = 0;
        for_each_subset(c.domain_mask(), d, d, [&](std::uint64_t t) {
            if (!shattered(c, t)) return true;
            hit = t;
            return false;
        });
        // Subsets of shattered sets are shattered, so the scan stops at the
        // first size without one.
        if (hit == 0) break;
        best.clear();
        for (std::uint64_t m = hit; m != 0; m &= m - 1) best.push_back(std::countr_zero(m));
    }
    const int value = static_cast<int>(best.size());
    return ParamResult::exact_value(value, "shatter-scan", std::move(best));
}

TeachingSet teaching_dim(std::uint64_t row, const ConceptClass& c)
{
    if (!c.contains(row)) throw InputError("teaching_dim: concept is not in the class");
    std::vector<std::uint64_t> rows(c.rows().begin(), c.rows().end());
    TeachingSet out;
    out.size = teaching_dim_among(row, rows, c.n(), &out.sample);
    return out;
}

ParamResult rtd(const ConceptClass& c)
{
    check_guard(c, "rtd");
    std::vector<std::uint64_t> remaining(c.rows().begin(), c.rows().end());
    std::vector<int> minima;
    int value = 0;
    while (!remaining.empty()) {
        std::vector<int> td;
        td.reserve(remaining.size());
        for (auto r : remaining) td.push_back(teaching_dim_among(r, remaining, c.n(), nullptr));
        const int m = *std::min_element(td.begin(), td.end());
        std::vector<std::uint64_t> next;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (td[i] != m) next.push_back(remaining[i]);
        }
        remaining.swap(next);
        minima.push_back(m);
        value = std::max(value, m);
    }
    return ParamResult::exact_value(value, "peeling", std::move(minima));
}

// --- subset teaching sequences ---------------------------------------------

std::string to_string(SequenceViolation::Kind kind)
{
    using K = SequenceViolation::Kind;
    switch (kind) {
    case K::empty_sequence: return "empty-sequence";
    case K::wrong_size: return "wrong-size";
    case K::out_of_domain: return "out-of-domain";
    case K::not_full_start: return "condition-1";
    case K::grows: return "condition-2";
    case K::contained: return "condition-3";
    case K::not_saturating: return "not-saturating";
    case K::not_fixed_point: return "not-fixed-point";
    }
    return "unknown";
}

SequenceCheck validate_sequence(const ConceptClass& c, const SubsetTeachingSequence& seq)
{
    using K = SequenceViolation::Kind;
    SequenceCheck out;
    if (seq.steps.empty()) {
        out.violations.push_back({K::empty_sequence, 0, {}});
        return out;
    }
    const std::size_t k = c.k();
    for (std::size_t t = 0; t < seq.steps.size(); ++t) {
        const auto& step = seq.steps[t].assignment;
        if (step.size() != k) {
            out.violations.push_back({K::wrong_size, t, {}});
            return out;
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (step[i].mask() & ~c.domain_mask()) {
                out.violations.push_back({K::out_of_domain, t, {i}});
                return out;
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!(seq.steps[0].assignment[i] == c.full_sample(i))) {
            out.violations.push_back({K::not_full_start, 0, {i}});
        }
    }
    for (std::size_t t = 0; t + 1 < seq.steps.size(); ++t) {
        const auto& prev = seq.steps[t].assignment;
        const auto& next = seq.steps[t + 1].assignment;
        for (std::size_t i = 0; i < k; ++i) {
            if (!next[i].subset_of(prev[i])) out.violations.push_back({K::grows, t + 1, {i}});
            for (std::size_t j = 0; j < k; ++j) {
                if (j != i && next[i].subset_of(prev[j])) {
                    out.violations.push_back({K::contained, t + 1, {i, j}});
                }
            }
        }
    }
    for (std::size_t t = 0; t < seq.steps.size(); ++t) {
        const auto check = validate_matching(c, seq.steps[t]);
        if (!check.valid) {
            std::vector<std::size_t> who;
            for (const auto& v : check.violations) who.insert(who.end(), v.concepts.begin(), v.concepts.end());
            out.violations.push_back({K::not_saturating, t, std::move(who)});
        }
    }
    const std::size_t last = seq.steps.size() - 1;
    const auto& fin = seq.steps[last].assignment;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (j != i && fin[i].subset_of(fin[j])) {
                out.violations.push_back({K::not_fixed_point, last, {i, j}});
            }
        }
    }
    out.valid = out.violations.empty();
    if (out.valid) out.cost = seq.steps[last].cost();
    return out;
}

SubsetTeachingSequence parse_sequence(const std::string& text, const ConceptClass& c)
{
    static const std::regex line_re(R"(^\s*(\d+)\s*:(.*)$)");
    static const std::regex pair_re(R"(\(\s*(\d+)\s*,\s*([01])\s*\))");
    static const std::regex rest_re(R"(^[\s]*$)");

    SubsetTeachingSequence seq;
    std::vector<std::optional<LabeledSample>> stanza;
    std::size_t filled = 0;
    auto flush = [&](std::size_t line_no) {
        if (filled == 0) return;
        if (filled != c.k()) {
            throw InputError("sequence: stanza ending at line " + std::to_string(line_no) + " has " +
                             std::to_string(filled) + " concepts, expected " + std::to_string(c.k()));
        }
        SaturatingMatching m;
        for (auto& s : stanza) m.assignment.push_back(*s);
        seq.steps.push_back(std::move(m));
        stanza.assign(c.k(), std::nullopt);
        filled = 0;
    };
    stanza.assign(c.k(), std::nullopt);

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            flush(line_no);
            continue;
        }
        if (line[first] == '#') continue;
        std::smatch m;
        if (!std::regex_match(line, m, line_re)) {
            throw InputError("sequence: malformed line " + std::to_string(line_no));
        }
        const std::size_t idx = std::stoul(m[1].str());
        if (idx >= c.k()) throw InputError("sequence: concept index out of range at line " + std::to_string(line_no));
        if (stanza[idx]) throw InputError("sequence: concept repeated at line " + std::to_string(line_no));
        const std::string body = m[2].str();
        std::vector<std::pair<int, int>> pairs;
        std::string leftover;
        std::size_t pos = 0;
        for (auto it = std::sregex_iterator(body.begin(), body.end(), pair_re); it != std::sregex_iterator(); ++it) {
            leftover += body.substr(pos, static_cast<std::size_t>(it->position()) - pos);
            pos = static_cast<std::size_t>(it->position() + it->length());
            const int j = std::stoi((*it)[1].str());
            if (j >= c.n()) throw InputError("sequence: instance out of range at line " + std::to_string(line_no));
            pairs.emplace_back(j, std::stoi((*it)[2].str()));
        }
        leftover += body.substr(pos);
        if (!std::regex_match(leftover, rest_re)) {
            throw InputError("sequence: malformed pair at line " + std::to_string(line_no));
        }
        stanza[idx] = LabeledSample::from_pairs(pairs);
        ++filled;
    }
    flush(line_no + 1);
    if (seq.steps.empty()) throw InputError("sequence: no steps");
    return seq;
}

std::string write_sequence(const SubsetTeachingSequence& seq)
{
    std::string out;
    for (std::size_t t = 0; t < seq.steps.size(); ++t) {
        if (t > 0) out += '\n';
        const auto& a = seq.steps[t].assignment;
        for (std::size_t i = 0; i < a.size(); ++i) {
            out += std::to_string(i) + ':';
            if (!a[i].empty()) out += ' ' + a[i].to_string();
            out += '\n';
        }
    }
    return out;
}

// --- STD_min search --------------------------------------------------------

namespace {

using State = std::vector<std::uint64_t>;  // instance mask per concept

std::string state_key(const State& s)
{
    return std::string(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(std::uint64_t));
}

// Sample of concept a on mask ta is contained in concept b's sample on tb.
bool contained(std::uint64_t ra, std::uint64_t ta, std::uint64_t rb, std::uint64_t tb) noexcept
{
    return (ta & ~tb) == 0 && ((ra ^ rb) & ta) == 0;
}

bool is_fixed_point(const ConceptClass& c, const State& s)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i != j && contained(c.row(i), s[i], c.row(j), s[j])) return false;
        }
    }
    return true;
}

// Moving concept i to mask t keeps condition 3 against `from`.
bool admissible(const ConceptClass& c, const State& from, std::size_t i, std::uint64_t t)
{
    for (std::size_t j = 0; j < from.size(); ++j) {
        if (j != i && contained(c.row(i), t, c.row(j), from[j])) return false;
    }
    return true;
}

int state_cost(const State& s)
{
    int m = 0;
    for (auto t : s) m = std::max(m, std::popcount(t));
    return m;
}

int state_total(const State& s)
{
    int m = 0;
    for (auto t : s) m += std::popcount(t);
    return m;
}

SaturatingMatching to_matching(const ConceptClass& c, const State& s)
{
    SaturatingMatching m;
    for (std::size_t i = 0; i < s.size(); ++i) m.assignment.push_back(LabeledSample::of_row(c.row(i), s[i]));
    return m;
}

State initial_state(const ConceptClass& c)
{
    return State(c.k(), c.domain_mask());
}

struct SearchOutcome {
    int best = -1;
    std::vector<State> path;
    bool complete = false;
};

SearchOutcome best_first(const ConceptClass& c, int lower, int stop_at, std::uint64_t budget)
{
    std::vector<State> states;
    std::vector<std::size_t> parent;
    std::unordered_map<std::string, std::size_t> seen;
    using Entry = std::tuple<int, int, std::size_t>;  // cost, total size, id
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

    auto push = [&](State s, std::size_t from) {
        auto [it, inserted] = seen.try_emplace(state_key(s), states.size());
        if (!inserted) return;
        frontier.emplace(state_cost(s), state_total(s), states.size());
        states.push_back(std::move(s));
        parent.push_back(from);
    };
    push(initial_state(c), 0);

    SearchOutcome out;
    std::size_t best_id = 0;
    std::uint64_t expanded = 0;
    while (!frontier.empty()) {
        if (out.best >= 0 && out.best <= std::max(lower, stop_at)) break;
        if (expanded >= budget) break;
        const auto [cost, total, id] = frontier.top();
        frontier.pop();
        ++expanded;
        if (is_fixed_point(c, states[id]) && (out.best < 0 || cost < out.best)) {
            out.best = cost;
            best_id = id;
        }
        const State cur = states[id];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            for (std::uint64_t m = cur[i]; m != 0; m &= m - 1) {
                const std::uint64_t t = cur[i] & ~(m & -m);
                if (!admissible(c, cur, i, t)) continue;
                State next = cur;
                next[i] = t;
                push(std::move(next), id);
            }
        }
    }
    out.complete = frontier.empty();
    if (out.best >= 0) {
        for (std::size_t id = best_id;; id = parent[id]) {
            out.path.push_back(states[id]);
            if (id == 0) break;
        }
        std::reverse(out.path.begin(), out.path.end());
    }
    return out;
}

SubsetTeachingSequence to_sequence(const ConceptClass& c, const std::vector<State>& path)
{
    SubsetTeachingSequence seq;
    for (const auto& s : path) seq.steps.push_back(to_matching(c, s));
    return seq;
}

ParamResult finish(int lower, int best, bool exhausted_search, SubsetTeachingSequence witness,
                   const std::string& method)
{
    if (best <= lower || exhausted_search) return ParamResult::exact_value(best, method, std::move(witness));
    return ParamResult::interval(best, lower, best, method + "-budget", std::move(witness));
}

}  // namespace

ParamResult std_min(const ConceptClass& c, const SearchLimits& limits)
{
    const int lower = amn(c, limits).lower;
    const auto r = best_first(c, lower, -1, limits.node_budget);
    return finish(lower, r.best, r.complete, to_sequence(c, r.path), "best-first");
}

ParamResult std_min_with_certificate(const ConceptClass& c, const SubsetTeachingSequence& certificate,
                                     const SearchLimits& limits)
{
    const auto check = validate_sequence(c, certificate);
    if (!check.valid) throw InputError("std_min_with_certificate: certificate is not a valid sequence");
    const int lower = amn(c, limits).lower;
    if (check.cost <= lower) return ParamResult::exact_value(check.cost, "certificate", certificate);
    const auto r = best_first(c, lower, -1, limits.node_budget);
    if (r.best >= 0 && r.best < check.cost) {
        return finish(lower, r.best, r.complete, to_sequence(c, r.path), "best-first");
    }
    return finish(lower, check.cost, r.complete, certificate, "certificate");
}

std::vector<std::vector<std::uint64_t>> reachable_states(const ConceptClass& c, bool general_moves)
{
    if (c.k() > 4 || c.n() > 3) throw SizeGuardError("reachable_states: requires k <= 4 and n <= 3");
    std::vector<State> states{initial_state(c)};
    std::unordered_map<std::string, std::size_t> seen{{state_key(states[0]), 0}};
    for (std::size_t head = 0; head < states.size(); ++head) {
        const State cur = states[head];
        auto visit = [&](const State& s) {
            if (seen.try_emplace(state_key(s), states.size()).second) states.push_back(s);
        };
        if (!general_moves) {
            for (std::size_t i = 0; i < cur.size(); ++i) {
                for (std::uint64_t m = cur[i]; m != 0; m &= m - 1) {
                    const std::uint64_t t = cur[i] & ~(m & -m);
                    if (!admissible(c, cur, i, t)) continue;
                    State next = cur;
                    next[i] = t;
                    visit(next);
                }
            }
            continue;
        }
        // Every simultaneous choice of submasks, checked against `cur`.
        State next = cur;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == cur.size()) {
                if (next != cur) visit(next);
                return;
            }
            for (std::uint64_t t = cur[i];; t = (t - 1) & cur[i]) {
                if (admissible(c, cur, i, t)) {
                    next[i] = t;
                    rec(i + 1);
                }
                if (t == 0) break;
            }
            next[i] = cur[i];
        };
        rec(0);
    }
    std::sort(states.begin(), states.end());
    return states;
}

}  // namespace tmatch
