#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vaxtag {

// The 12 concern categories, in canonical ordinal order.
enum class ConcernLabel : uint8_t {
    Unnecessary = 0,
    Mandatory,
    Pharma,
    Conspiracy,
    Political,
    Country,
    Rushed,
    Ingredients,
    SideEffect,
    Ineffective,
    Religious,
    None,
};

inline constexpr int kNumLabels = 12;

/// Canonical lowercase name of a label ("side-effect", "none", ...).
std::string_view label_name(ConcernLabel label);

/// All 12 labels in ordinal order.
const std::array<ConcernLabel, kNumLabels>& all_labels();

/// Case-insensitive parse; accepts "side effect" for "side-effect".
/// Returns nullopt for anything else.
std::optional<ConcernLabel> parse_label(std::string_view token);

// Subset of the 12 labels, stored as a 12-bit mask keyed by ordinal.
class LabelSet {
public:
    LabelSet() = default;
    explicit LabelSet(std::initializer_list<ConcernLabel> labels) {
        for (auto l : labels) insert(l);
    }

    static LabelSet from_bits(uint16_t bits);
    uint16_t bits() const { return bits_; }

    bool contains(ConcernLabel l) const { return (bits_ >> ordinal(l)) & 1u; }
    void insert(ConcernLabel l) { bits_ = static_cast<uint16_t>(bits_ | (1u << ordinal(l))); }
    void erase(ConcernLabel l) { bits_ = static_cast<uint16_t>(bits_ & ~(1u << ordinal(l))); }

    bool empty() const { return bits_ == 0; }
    int size() const;

    std::vector<ConcernLabel> to_vector() const;

    LabelSet set_union(const LabelSet& other) const { return from_bits(bits_ | other.bits_); }
    LabelSet set_intersection(const LabelSet& other) const { return from_bits(bits_ & other.bits_); }

    /// Drops "none" when it co-occurs with any other label.
    LabelSet normalized() const;

    bool operator==(const LabelSet& other) const = default;

private:
    static int ordinal(ConcernLabel l) { return static_cast<int>(l); }
    uint16_t bits_ = 0;
};

/// Space-separated canonical names in ordinal order; "" for the empty set.
std::string render_labels(const LabelSet& set);

/// Parses a space-separated label field. Unknown tokens land in *bad_token
/// (first offender) and the parse fails with nullopt.
std::optional<LabelSet> parse_labels(std::string_view field, std::string* bad_token = nullptr);

} // namespace vaxtag
