#include "vaxtag/labels.hpp"

#include <algorithm>
#include <cctype>

namespace vaxtag {

namespace {

constexpr std::array<std::string_view, kNumLabels> kNames = {
    "unnecessary", "mandatory",   "pharma",     "conspiracy",
    "political",   "country",     "rushed",     "ingredients",
    "side-effect", "ineffective", "religious",  "none",
};

std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

std::string_view label_name(ConcernLabel label) {
    return kNames[static_cast<size_t>(label)];
}

const std::array<ConcernLabel, kNumLabels>& all_labels() {
    static const std::array<ConcernLabel, kNumLabels> labels = [] {
        std::array<ConcernLabel, kNumLabels> a{};
        for (int i = 0; i < kNumLabels; ++i) a[i] = static_cast<ConcernLabel>(i);
        return a;
    }();
    return labels;
}

std::optional<ConcernLabel> parse_label(std::string_view token) {
    std::string t = lowercase_ascii(token);
    if (t == "side effect") t = "side-effect";
    for (int i = 0; i < kNumLabels; ++i) {
        if (t == kNames[i]) return static_cast<ConcernLabel>(i);
    }
    return std::nullopt;
}

LabelSet LabelSet::from_bits(uint16_t bits) {
    LabelSet s;
    s.bits_ = static_cast<uint16_t>(bits & 0x0fffu);
    return s;
}

int LabelSet::size() const {
    int n = 0;
    for (int i = 0; i < kNumLabels; ++i) n += (bits_ >> i) & 1;
    return n;
}

std::vector<ConcernLabel> LabelSet::to_vector() const {
    std::vector<ConcernLabel> out;
    for (int i = 0; i < kNumLabels; ++i) {
        if ((bits_ >> i) & 1) out.push_back(static_cast<ConcernLabel>(i));
    }
    return out;
}

LabelSet LabelSet::normalized() const {
    LabelSet s = *this;
    if (s.contains(ConcernLabel::None) && s.size() > 1) s.erase(ConcernLabel::None);
    return s;
}

std::string render_labels(const LabelSet& set) {
    std::string out;
    for (ConcernLabel l : set.to_vector()) {
        if (!out.empty()) out += ' ';
        out += label_name(l);
    }
    return out;
}

std::optional<LabelSet> parse_labels(std::string_view field, std::string* bad_token) {
    LabelSet set;
    size_t pos = 0;
    while (pos < field.size()) {
        while (pos < field.size() && field[pos] == ' ') ++pos;
        size_t end = pos;
        while (end < field.size() && field[end] != ' ') ++end;
        if (end > pos) {
            std::string_view token = field.substr(pos, end - pos);
            auto label = parse_label(token);
            if (!label) {
                if (bad_token) *bad_token = std::string(token);
                return std::nullopt;
            }
            set.insert(*label);
        }
        pos = end;
    }
    return set;
}

} // namespace vaxtag
