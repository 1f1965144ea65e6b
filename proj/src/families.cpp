#include "tmatch/families.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace tmatch {

ConceptClass powerset(int n)
{
    if (n < 1 || n > 20) {
        throw InputError("powerset: n must lie in [1, 20], got " + std::to_string(n));
    }
    std::vector<std::uint64_t> rows(std::size_t{1} << n);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return ConceptClass(n, std::move(rows));
}

ConceptClass binary_counter_class(std::uint64_t k, int n)
{
    if (n < 1 || n > kMaxInstances) {
        throw InputError("binary_counter_class: n must lie in [1, 63]");
    }
    if (k < 2 || k - 1 > low_bits(n)) {
        throw InputError("binary_counter_class: need 2 <= k <= 2^n");
    }
    if (k > (std::uint64_t{1} << 24)) {
        throw SizeGuardError("binary_counter_class: too many rows to materialize");
    }
    std::vector<std::uint64_t> rows(k);
    for (std::uint64_t i = 0; i < k; ++i) rows[i] = i;
    return ConceptClass(n, std::move(rows));
}

int floor_log2(std::uint64_t k)
{
    if (k == 0) throw InputError("floor_log2: k must be positive");
    return std::bit_width(k) - 1;
}

bool realizable_binary_counter(const LabeledSample& s, std::uint64_t k)
{
    if (k == 0) throw InputError("realizable_binary_counter: k must be positive");
    // The 1-labels pin bits of i; the smallest consistent i sets every other bit to 0.
    return s.labels() <= k - 1;
}

namespace {

// Columns x_1..x_6 written left to right; bit j of a row is column x_{j+1}.
constexpr std::array<const char*, 10> kWarmuthExtended = {
    "110000",  // c_1
    "011000",  // c_2
    "001101",  // c_3
    "000110",  // c_4
    "100011",  // c_5
    "010110",  // c_6
    "011011",  // c_7
    "101011",  // c_8
    "101100",  // c_9
    "110101",  // c_10
};

std::uint64_t parse_row(const char* bits)
{
    std::uint64_t r = 0;
    for (int j = 0; bits[j] != '\0'; ++j) {
        if (bits[j] == '1') r |= std::uint64_t{1} << j;
    }
    return r;
}

}  // namespace

ConceptClass warmuth_extended()
{
    std::vector<std::uint64_t> rows;
    for (const char* r : kWarmuthExtended) rows.push_back(parse_row(r));
    return ConceptClass(6, std::move(rows));
}

ConceptClass warmuth()
{
    std::vector<std::uint64_t> rows;
    for (const char* r : kWarmuthExtended) rows.push_back(parse_row(r) & low_bits(5));
    return ConceptClass(5, std::move(rows));
}

std::pair<ConceptClass, ConceptClass> std_example_pair()
{
    return {powerset(2), ConceptClass(4, {0b1111})};
}

ConceptClass add_all_ones(const ConceptClass& c)
{
    const std::uint64_t ones = c.domain_mask();
    if (c.contains(ones)) throw InputError("add_all_ones: all-ones concept already present");
    std::vector<std::uint64_t> rows(c.rows().begin(), c.rows().end());
    rows.push_back(ones);
    return ConceptClass(c.n(), std::move(rows));
}

LabeledSample theorem4_map(std::span<const int> unlabeled, std::uint64_t k, int n, int d)
{
    if (k < 2 || n < 1 || n > kMaxInstances || k - 1 > low_bits(n)) {
        throw InputError("theorem4_map: need 2 <= k <= 2^n");
    }
    const int l = floor_log2(k);
    if (d < 1 || d > l) {
        throw InputError("theorem4_map: need 1 <= d <= floor(log2 k) = " + std::to_string(l));
    }
    const std::uint64_t u = instance_mask(unlabeled, n);
    if (std::popcount(u) != static_cast<int>(unlabeled.size())) {
        throw InputError("theorem4_map: repeated instance in U");
    }
    if (std::popcount(u) > d) throw InputError("theorem4_map: |U| exceeds d");

    const std::uint64_t low = low_bits(l);
    std::uint64_t mask = u;
    const std::uint64_t labels = u & low;  // j < l -> (j, 1); j >= l -> (j, 0)
    for (int j = 0; std::popcount(mask) < d; ++j) {
        mask |= std::uint64_t{1} << j;  // |U ∩ [0,l)| <= d <= l leaves room
    }
    return LabeledSample(mask, labels);
}

ConceptClass make_family(const FamilySpec& spec)
{
    switch (spec.kind) {
    case FamilyKind::powerset: return powerset(spec.n);
    case FamilyKind::binary_counter: return binary_counter_class(spec.k, spec.n);
    case FamilyKind::warmuth: return warmuth();
    case FamilyKind::warmuth_extended: return warmuth_extended();
    case FamilyKind::std_pair_left: return std_example_pair().first;
    case FamilyKind::std_pair_right: return std_example_pair().second;
    }
    throw InputError("unknown family");
}

FamilyKind parse_family_kind(const std::string& name)
{
    if (name == "powerset") return FamilyKind::powerset;
    if (name == "binary_counter") return FamilyKind::binary_counter;
    if (name == "warmuth") return FamilyKind::warmuth;
    if (name == "warmuth_extended") return FamilyKind::warmuth_extended;
    if (name == "std_pair_left") return FamilyKind::std_pair_left;
    if (name == "std_pair_right") return FamilyKind::std_pair_right;
    throw InputError("unknown family '" + name + "'");
}

std::string family_name(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::powerset: return "powerset";
    case FamilyKind::binary_counter: return "binary_counter";
    case FamilyKind::warmuth: return "warmuth";
    case FamilyKind::warmuth_extended: return "warmuth_extended";
    case FamilyKind::std_pair_left: return "std_pair_left";
    case FamilyKind::std_pair_right: return "std_pair_right";
    }
    return "unknown";
}

}  // namespace tmatch
