#include "vaxtag/textprep.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "vaxtag/assets.hpp"
#include "vaxtag/errors.hpp"

namespace vaxtag {

namespace {

constexpr std::array<std::string_view, 5> kTagNames = {"NOUN", "VERB", "ADJ", "ADV", "OTHER"};

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

inline bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

bool starts_with_at(std::string_view s, size_t pos, std::string_view prefix) {
    return s.compare(pos, prefix.size(), prefix) == 0;
}

} // namespace

std::string_view pos_tag_name(PosTag tag) { return kTagNames[static_cast<size_t>(tag)]; }

PosTag parse_pos_tag(std::string_view name) {
    for (size_t i = 0; i < kTagNames.size(); ++i) {
        if (name == kTagNames[i]) return static_cast<PosTag>(i);
    }
    throw ConfigError("unknown part-of-speech tag: " + std::string(name));
}

PrepTables PrepTables::load(const std::string& asset_dir, const PipelineConfig& cfg) {
    PrepTables t;
    auto path = [&](const std::string& file) { return asset_dir + "/" + file; };

    for (const auto& line : load_asset_table(path(cfg.stopword_list))) {
        t.stopwords_.insert(line.cols[0]);
    }
    for (const auto& line : load_asset_table(path(cfg.contraction_table))) {
        if (line.cols.size() < 2) throw ConfigError("contraction table needs two columns");
        t.contractions_[line.cols[0]] = line.cols[1];
        size_t atoms = 1 + size_t(std::count(line.cols[0].begin(), line.cols[0].end(), '\''));
        t.max_contraction_atoms_ = std::max(t.max_contraction_atoms_, atoms);
    }
    for (const auto& line : load_asset_table(path(cfg.emoji_table))) {
        if (line.cols.size() < 2) throw ConfigError("emoji table needs two columns");
        t.emoji_[line.cols[0]] = line.cols[1];
    }
    t.emoji_by_first_byte_.resize(256);
    for (const auto& [key, name] : t.emoji_) {
        if (key.empty()) continue;
        t.emoji_by_first_byte_[static_cast<unsigned char>(key[0])].emplace_back(key, name);
    }
    for (auto& bucket : t.emoji_by_first_byte_) {
        std::sort(bucket.begin(), bucket.end(), [](const auto& a, const auto& b) {
            if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
            return a.first < b.first;
        });
    }

    for (const auto& line : load_asset_table(path("pos_lexicon.tsv"))) {
        if (line.cols.size() < 2) throw ConfigError("pos lexicon needs two columns");
        t.lexicon_[line.cols[0]] = parse_pos_tag(line.cols[1]);
    }
    for (const auto& line : load_asset_table(path("lemma_exceptions.tsv"))) {
        if (line.cols.size() < 3) throw ConfigError("lemma exception table needs three columns");
        PosTag tag = parse_pos_tag(line.cols[0]);
        t.lemma_exc_[static_cast<size_t>(tag)][line.cols[1]] = line.cols[2];
    }
    for (const auto& line : load_asset_table(path("lemma_rules.tsv"))) {
        if (line.cols.size() < 4) throw ConfigError("lemma rule table needs four columns");
        PosTag tag = parse_pos_tag(line.cols[0]);
        LemmaRule rule{line.cols[1], line.cols[2] == "-" ? "" : line.cols[2],
                       static_cast<size_t>(std::stoul(line.cols[3]))};
        t.lemma_rules_[static_cast<size_t>(tag)].push_back(std::move(rule));
    }
    return t;
}

PosTag PrepTables::lexicon_tag(const std::string& token, bool* found) const {
    auto it = lexicon_.find(token);
    if (found) *found = it != lexicon_.end();
    return it != lexicon_.end() ? it->second : PosTag::Noun;
}

std::string PrepTables::lemma_exception(PosTag tag, const std::string& surface) const {
    const auto& exc = lemma_exc_[static_cast<size_t>(tag)];
    auto it = exc.find(surface);
    return it != exc.end() ? it->second : std::string();
}

const std::vector<PrepTables::LemmaRule>& PrepTables::lemma_rules(PosTag tag) const {
    return lemma_rules_[static_cast<size_t>(tag)];
}

const std::vector<std::pair<std::string, std::string>>&
PrepTables::emoji_candidates(unsigned char first) const {
    return emoji_by_first_byte_[first];
}

namespace {

std::string step_lowercase(const std::string& text) {
    std::string out = text;
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string step_remove_urls(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        bool at_token_start = (i == 0) || is_space(text[i - 1]);
        bool is_url = starts_with_at(text, i, "http://") || starts_with_at(text, i, "https://") ||
                      (at_token_start && starts_with_at(text, i, "www."));
        if (is_url) {
            while (i < text.size() && !is_space(text[i])) ++i;
        } else {
            out += text[i++];
        }
    }
    return out;
}

std::string step_remove_handles(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '@' && i + 1 < text.size() && is_word_char(text[i + 1])) {
            ++i;
            while (i < text.size() && is_word_char(text[i])) ++i;
        } else {
            out += text[i++];
        }
    }
    return out;
}

std::string step_translate_emoji(const std::string& text, const PrepTables& tables) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        const auto& candidates = tables.emoji_candidates(static_cast<unsigned char>(text[i]));
        bool matched = false;
        for (const auto& [key, name] : candidates) {
            if (text.compare(i, key.size(), key) == 0) {
                out += ' ';
                out += name;
                out += ' ';
                i += key.size();
                matched = true;
                break;
            }
        }
        if (!matched) out += text[i++];
    }
    return out;
}

// Expands contractions inside each maximal [a-z0-9'] run. A run splits into
// atoms at apostrophes; a greedy longest match joins atoms back into table
// keys ("don't'gonna" expands both pieces). Every surviving atom has been
// looked up alone, so the later punctuation split cannot reveal a fresh
// contraction and clean() stays idempotent.
std::string step_expand_contractions(const std::string& text, const PrepTables& tables) {
    auto is_core_char = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'';
    };
    // curly apostrophes fold to ASCII so runs and lookups see one spelling
    std::string folded;
    folded.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        if (text.compare(i, 3, "\xe2\x80\x99") == 0) {
            folded += '\'';
            i += 3;
        } else {
            folded += text[i++];
        }
    }

    std::string out;
    out.reserve(folded.size());
    const size_t max_atoms = tables.max_contraction_atoms();
    size_t i = 0;
    while (i < folded.size()) {
        if (!is_core_char(folded[i])) {
            out += folded[i++];
            continue;
        }
        size_t end = i;
        while (end < folded.size() && is_core_char(folded[end])) ++end;

        // atom spans between apostrophes; empty atoms keep edge apostrophes honest
        std::vector<std::pair<size_t, size_t>> atoms;
        size_t atom_begin = i;
        for (size_t k = i; k <= end; ++k) {
            if (k == end || folded[k] == '\'') {
                atoms.emplace_back(atom_begin, k);
                atom_begin = k + 1;
            }
        }

        size_t ai = 0;
        while (ai < atoms.size()) {
            size_t matched_end = atoms.size(); // sentinel: no match
            size_t last_join = std::min(atoms.size() - 1, ai + max_atoms - 1);
            for (size_t aj = last_join; ; --aj) {
                std::string candidate =
                    folded.substr(atoms[ai].first, atoms[aj].second - atoms[ai].first);
                auto it = tables.contractions().find(candidate);
                if (it != tables.contractions().end()) {
                    out += it->second;
                    matched_end = aj;
                    break;
                }
                if (aj == ai) break;
            }
            if (matched_end == atoms.size()) {
                out += folded.substr(atoms[ai].first, atoms[ai].second - atoms[ai].first);
                matched_end = ai;
            }
            ai = matched_end + 1;
            if (ai < atoms.size()) out += '\''; // separator before the next atom
        }
        i = end;
    }
    return out;
}

std::string step_strip_nonalnum(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '#' || c == '_' || is_space(c);
        out += keep ? c : ' ';
    }
    return out;
}

std::string step_collapse_whitespace(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out += ' ';
            pending_space = false;
            out += c;
        }
    }
    return out;
}

} // namespace

std::string clean(std::string_view text, const PipelineConfig& cfg, const PrepTables& tables) {
    std::string s(text);
    if (cfg.lowercase) s = step_lowercase(s);
    if (cfg.remove_urls) s = step_remove_urls(s);
    if (cfg.remove_handles) s = step_remove_handles(s);
    if (cfg.translate_emoji) s = step_translate_emoji(s, tables);
    if (cfg.expand_contractions) s = step_expand_contractions(s, tables);
    if (cfg.strip_nonalnum) s = step_strip_nonalnum(s);
    if (cfg.collapse_whitespace) s = step_collapse_whitespace(s);
    return s;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < cleaned.size()) {
        while (i < cleaned.size() && is_space(cleaned[i])) ++i;
        size_t end = i;
        while (end < cleaned.size() && !is_space(cleaned[end])) ++end;
        if (end > i) tokens.emplace_back(cleaned.substr(i, end - i));
        i = end;
    }
    return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PrepTables& tables) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        if (!token.empty() && token[0] == '#') {
            out.push_back(token);
        } else if (!tables.is_stopword(token)) {
            out.push_back(token);
        }
    }
    return out;
}

std::vector<TaggedToken> pos_tag(const std::vector<std::string>& tokens,
                                 const PrepTables& tables) {
    auto ends_with = [](const std::string& s, std::string_view suffix) {
        return s.size() > suffix.size() &&
               s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        TaggedToken tt;
        tt.surface = token;
        if (!token.empty() && token[0] == '#') {
            tt.tag = PosTag::Noun;
        } else {
            bool found = false;
            PosTag tag = tables.lexicon_tag(token, &found);
            if (found) {
                tt.tag = tag;
            } else if (ends_with(token, "ing") || ends_with(token, "ed")) {
                tt.tag = PosTag::Verb;
            } else if (ends_with(token, "ly")) {
                tt.tag = PosTag::Adv;
            } else if (ends_with(token, "ous") || ends_with(token, "ful")) {
                tt.tag = PosTag::Adj;
            } else {
                tt.tag = PosTag::Noun;
            }
        }
        out.push_back(std::move(tt));
    }
    return out;
}

void lemmatize(std::vector<TaggedToken>& tagged, const PrepTables& tables) {
    for (auto& tt : tagged) {
        if (!tt.surface.empty() && tt.surface[0] == '#') {
            tt.lemma = tt.surface;
            continue;
        }
        std::string exc = tables.lemma_exception(tt.tag, tt.surface);
        if (!exc.empty()) {
            tt.lemma = exc;
            continue;
        }
        tt.lemma = tt.surface;
        for (const auto& rule : tables.lemma_rules(tt.tag)) {
            if (tt.surface.size() <= rule.suffix.size()) continue;
            size_t stem_len = tt.surface.size() - rule.suffix.size();
            if (stem_len < rule.min_stem) continue;
            if (tt.surface.compare(stem_len, rule.suffix.size(), rule.suffix) != 0) continue;
            tt.lemma = tt.surface.substr(0, stem_len) + rule.replacement;
            break;
        }
        if (tt.lemma.empty()) tt.lemma = tt.surface;
    }
}

std::vector<std::string> preprocess(std::string_view text, const PipelineConfig& cfg,
                                    const PrepTables& tables) {
    std::string cleaned = clean(text, cfg, tables);
    std::vector<std::string> tokens = tokenize(cleaned);
    if (cfg.drop_stopwords) tokens = remove_stopwords(tokens, tables);
    std::vector<TaggedToken> tagged = pos_tag(tokens, tables);
    lemmatize(tagged, tables);
    std::vector<std::string> lemmas;
    lemmas.reserve(tagged.size());
    for (auto& tt : tagged) {
        if (!tt.lemma.empty()) lemmas.push_back(std::move(tt.lemma));
    }
    return lemmas;
}

} // namespace vaxtag
