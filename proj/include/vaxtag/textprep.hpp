#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace vaxtag {

enum class PosTag { Noun, Verb, Adj, Adv, Other };

std::string_view pos_tag_name(PosTag tag);
PosTag parse_pos_tag(std::string_view name); // throws ConfigError on unknown

struct TaggedToken {
    std::string surface; // lowercase token
    PosTag tag = PosTag::Noun;
    std::string lemma;   // empty until lemmatize() runs
};

// Step toggles for the cleaning pipeline plus the table ids the stage loads.
// Defaults enable every step.
struct PipelineConfig {
    bool lowercase = true;
    bool remove_urls = true;
    bool remove_handles = true;
    bool translate_emoji = true;
    bool expand_contractions = true;
    bool strip_nonalnum = true; // hashtags, underscores and digits survive
    bool collapse_whitespace = true;
    bool drop_stopwords = true;

    std::string stopword_list = "stopwords.txt";
    std::string emoji_table = "emoji.tsv";
    std::string contraction_table = "contractions.tsv";
};

// Immutable lookup tables backing the pipeline; load once, share freely
// across threads.
class PrepTables {
public:
    static PrepTables load(const std::string& asset_dir, const PipelineConfig& cfg = {});

    bool is_stopword(const std::string& token) const { return stopwords_.count(token) > 0; }
    const std::unordered_map<std::string, std::string>& contractions() const { return contractions_; }
    /// Longest contraction key measured in apostrophe-separated atoms.
    size_t max_contraction_atoms() const { return max_contraction_atoms_; }
    const std::unordered_map<std::string, std::string>& emoji() const { return emoji_; }

    PosTag lexicon_tag(const std::string& token, bool* found) const;
    std::string lemma_exception(PosTag tag, const std::string& surface) const;

    struct LemmaRule {
        std::string suffix;
        std::string replacement;
        size_t min_stem;
    };
    const std::vector<LemmaRule>& lemma_rules(PosTag tag) const;

    // emoji keys grouped by first byte, longest first, for greedy matching
    const std::vector<std::pair<std::string, std::string>>& emoji_candidates(unsigned char first) const;

private:
    std::unordered_set<std::string> stopwords_;
    std::unordered_map<std::string, std::string> contractions_;
    size_t max_contraction_atoms_ = 1;
    std::unordered_map<std::string, std::string> emoji_;
    std::vector<std::vector<std::pair<std::string, std::string>>> emoji_by_first_byte_;
    std::unordered_map<std::string, PosTag> lexicon_;
    std::unordered_map<std::string, std::string> lemma_exc_[5];
    std::vector<LemmaRule> lemma_rules_[5];
};

/// Cleaning pipeline, fixed step order: lowercase, strip URLs, strip @handles,
/// emoji -> words, expand contractions, strip non-alphanumerics (keeping # and _),
/// collapse whitespace. Output alphabet under the default config is
/// [a-z0-9#_ ] with single spaces; clean is idempotent.
std::string clean(std::string_view text, const PipelineConfig& cfg, const PrepTables& tables);

/// Splits cleaned text on space runs; never yields empty tokens.
std::vector<std::string> tokenize(std::string_view cleaned);

/// Drops stoplisted tokens, preserving order. Hashtag tokens always survive.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PrepTables& tables);

/// Lexicon lookup with suffix-rule fallback (-ing/-ed -> VERB, -ly -> ADV,
/// -ous/-ful -> ADJ); unknown tokens default to NOUN. Hashtags tag as NOUN.
std::vector<TaggedToken> pos_tag(const std::vector<std::string>& tokens,
                                 const PrepTables& tables);

/// Exception-list lookup first, then the first matching detachment rule for
/// the token's tag, in table order. No rule -> lemma = surface. Hashtags are
/// their own lemma.
void lemmatize(std::vector<TaggedToken>& tagged, const PrepTables& tables);

/// clean -> tokenize -> remove_stopwords -> pos_tag -> lemmatize, projected
/// onto lemmas.
std::vector<std::string> preprocess(std::string_view text, const PipelineConfig& cfg,
                                    const PrepTables& tables);

} // namespace vaxtag
