#include <algorithm>

#include "vaxtag/assets.hpp"
#include "vaxtag/errors.hpp"
#include "vaxtag/llm.hpp"
#include "vaxtag/rng.hpp"

namespace vaxtag {

PromptAssets PromptAssets::load(const std::string& asset_dir) {
    PromptAssets assets;
    std::array<bool, kNumLabels> have_desc{}, have_kw{};
    for (const auto& line : load_asset_table(asset_dir + "/concern_descriptions.tsv")) {
        if (line.cols.size() < 2) throw ConfigError("concern description table needs two columns");
        auto label = parse_label(line.cols[0]);
        if (!label) throw ConfigError("unknown label in descriptions: " + line.cols[0]);
        assets.descriptions[size_t(*label)] = line.cols[1];
        have_desc[size_t(*label)] = true;
    }
    for (const auto& line : load_asset_table(asset_dir + "/concern_keywords.tsv")) {
        auto label = parse_label(line.cols[0]);
        if (!label) throw ConfigError("unknown label in keywords: " + line.cols[0]);
        assets.keywords[size_t(*label)] = line.cols.size() > 1 ? line.cols[1] : "";
        have_kw[size_t(*label)] = true;
    }
    for (int i = 0; i < kNumLabels; ++i) {
        if (!have_desc[i] || assets.descriptions[i].empty()) {
            throw ConfigError("missing description for label '" +
                              std::string(label_name(static_cast<ConcernLabel>(i))) + "'");
        }
        if (!have_kw[i]) {
            throw ConfigError("missing keyword row for label '" +
                              std::string(label_name(static_cast<ConcernLabel>(i))) + "'");
        }
    }
    return assets;
}

void PromptAssets::validate() const {
    for (int i = 0; i < kNumLabels; ++i) {
        if (descriptions[i].empty()) {
            throw ConfigError("missing description for label '" +
                              std::string(label_name(static_cast<ConcernLabel>(i))) + "'");
        }
    }
}

ExemplarSet select_exemplars(const Dataset& train, size_t n, uint64_t seed) {
    if (n < size_t(kNumLabels)) {
        throw ConfigError("need at least 12 exemplars to cover every label, asked for " +
                          std::to_string(n));
    }
    if (n > train.size()) {
        throw DataError("asked for " + std::to_string(n) + " exemplars from " +
                        std::to_string(train.size()) + " records");
    }

    std::array<std::vector<size_t>, kNumLabels> by_label;
    for (size_t r = 0; r < train.records.size(); ++r) {
        const auto& rec = train.records[r];
        if (!rec.gold) throw DataError("record '" + rec.id + "' has no gold labels");
        for (ConcernLabel l : rec.gold->to_vector()) by_label[size_t(l)].push_back(r);
    }
    for (int i = 0; i < kNumLabels; ++i) {
        if (by_label[i].empty()) {
            throw DataError("label '" + std::string(label_name(static_cast<ConcernLabel>(i))) +
                            "' never occurs in the exemplar pool");
        }
    }

    // rarest first; ties by ordinal
    std::array<int, kNumLabels> label_order{};
    for (int i = 0; i < kNumLabels; ++i) label_order[i] = i;
    std::stable_sort(label_order.begin(), label_order.end(),
                     [&](int a, int b) { return by_label[a].size() < by_label[b].size(); });

    Rng rng(seed);
    std::vector<uint8_t> chosen(train.size(), 0);
    std::array<bool, kNumLabels> covered{};
    std::vector<size_t> picks;

    for (int li : label_order) {
        if (covered[li]) continue;
        std::vector<size_t> candidates;
        for (size_t r : by_label[li]) {
            if (!chosen[r]) candidates.push_back(r);
        }
        if (candidates.empty()) continue; // already covered via a chosen multi-label record
        size_t pick = candidates[rng.bounded(candidates.size())];
        chosen[pick] = 1;
        picks.push_back(pick);
        for (ConcernLabel l : train.records[pick].gold->to_vector()) covered[size_t(l)] = true;
    }

    std::vector<size_t> rest;
    for (size_t r = 0; r < train.size(); ++r) {
        if (!chosen[r]) rest.push_back(r);
    }
    rng.shuffle(rest);
    for (size_t r : rest) {
        if (picks.size() >= n) break;
        picks.push_back(r);
    }

    ExemplarSet out;
    out.items.reserve(picks.size());
    for (size_t r : picks) {
        out.items.push_back({train.records[r].text, *train.records[r].gold});
    }
    return out;
}

std::string render_concern_line(const LabelSet& labels) {
    std::string out = "Concern: [";
    bool first = true;
    for (ConcernLabel l : labels.to_vector()) {
        if (!first) out += ", ";
        first = false;
        out += '\'';
        out += label_name(l);
        out += '\'';
    }
    out += ']';
    return out;
}

namespace {

std::string strip_backticks(std::string_view text, bool* stripped) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '`') *stripped = true;
        else out += c;
    }
    return out;
}

} // namespace

PromptBundle build_prompt(std::string_view tweet, const PromptAssets& assets,
                          const ExemplarSet& exemplars) {
    assets.validate();
    PromptBundle bundle;
    bool stripped = false;
    const std::string safe_tweet = strip_backticks(tweet, &stripped);
    if (stripped) bundle.warnings.push_back("backticks stripped from tweet before prompting");

    std::string& p = bundle.text;
    p += "Task: You are given a tweet about vaccines, delimited by triple backticks. "
         "Pick every concern label that applies to the tweet from the options below, and "
         "explain the logical reasoning behind each choice, quoting the relevant words from "
         "the tweet. Learn from the examples by noting the common words, keywords and "
         "feelings associated with each label. Only choose labels you are confident about. "
         "Each label comes with a description and common keywords to clarify the concern it "
         "covers.\n\n";

    p += "Concern List:\n";
    for (int i = 0; i < kNumLabels; ++i) {
        p += std::to_string(i + 1) + ". " +
             std::string(label_name(static_cast<ConcernLabel>(i))) + "\n";
    }

    p += "\n###\nDescription of the 12 different vaccine concerns:\n";
    for (int i = 0; i < kNumLabels; ++i) {
        p += std::to_string(i + 1) + ". " +
             std::string(label_name(static_cast<ConcernLabel>(i))) + ": " +
             assets.descriptions[i] + "\n";
    }

    p += "\n###\nSome of the keywords associated with tweets for each label:\n";
    for (int i = 0; i < kNumLabels; ++i) {
        const std::string& kw = assets.keywords[i];
        p += std::to_string(i + 1) + ". " +
             std::string(label_name(static_cast<ConcernLabel>(i))) + ": Keywords - " +
             (kw.empty() ? std::string("(none)") : kw) + "\n";
    }

    p += "\n###\nExamples:\n";
    for (const auto& ex : exemplars.items) {
        bool ex_stripped = false;
        p += "Tweet: \"" + strip_backticks(ex.text, &ex_stripped) + "\"\n";
        p += render_concern_line(ex.labels) + "\n\n";
    }

    p += "###\nFormat of response (Response should include Concern in the same format as in "
         "examples):\n";
    p += "Concern: [List of all the relevant applicable concern labels]\n";
    p += "Reasoning: [logical reasoning followed to decide each of the applicable labels]\n\n";

    p += "Tweet: ```" + safe_tweet + "```\n\n";

    p += "Note: Include only the most relevant concern labels in your response. Weigh the "
         "sentiment and hidden meaning of the tweet against the sentiments and keywords of "
         "the examples before responding. Compare the descriptions and keywords of every "
         "concern label with the meaning of the tweet, and verify each and every label "
         "before including it in your response.\n";

    return bundle;
}

} // namespace vaxtag
