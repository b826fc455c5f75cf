#include <algorithm>

#include "vaxtag/llm.hpp"

namespace vaxtag {

namespace {

std::string_view ltrim(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

std::string trim_token(std::string_view s) {
    auto is_junk = [](char c) {
        return c == ' ' || c == '\t' || c == '\'' || c == '"' || c == '\n' || c == '\r';
    };
    size_t b = 0, e = s.size();
    while (b < e && is_junk(s[b])) ++b;
    while (e > b && is_junk(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

// line start offsets, treating the whole text as \n-separated
std::vector<std::pair<size_t, size_t>> line_spans(std::string_view text) {
    std::vector<std::pair<size_t, size_t>> spans;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            spans.emplace_back(start, i);
            start = i + 1;
        }
    }
    return spans;
}

} // namespace

std::optional<ParsedLlmOutput> parse_response(std::string_view raw, std::string* error) {
    auto fail = [&](const std::string& why) -> std::optional<ParsedLlmOutput> {
        if (error) *error = why;
        return std::nullopt;
    };

    ParsedLlmOutput out;
    const auto spans = line_spans(raw);

    // first line that begins with "Concern:"
    std::string_view concern_rest;
    size_t concern_line_idx = spans.size();
    for (size_t li = 0; li < spans.size(); ++li) {
        std::string_view line = raw.substr(spans[li].first, spans[li].second - spans[li].first);
        std::string_view t = ltrim(line);
        if (t.rfind("Concern:", 0) == 0) {
            concern_rest = t.substr(std::string_view("Concern:").size());
            concern_line_idx = li;
            break;
        }
    }
    if (concern_line_idx == spans.size()) return fail("no 'Concern:' line in completion");

    const size_t open = concern_rest.find('[');
    if (open == std::string_view::npos) return fail("no bracketed label list after 'Concern:'");
    const size_t close = concern_rest.find(']', open + 1);
    std::string_view list = close == std::string_view::npos
                                ? concern_rest.substr(open + 1) // truncated list: parse what we got
                                : concern_rest.substr(open + 1, close - open - 1);

    size_t pos = 0;
    bool any_token = false;
    while (pos <= list.size()) {
        size_t comma = list.find(',', pos);
        std::string_view piece =
            comma == std::string_view::npos ? list.substr(pos) : list.substr(pos, comma - pos);
        std::string token = trim_token(piece);
        if (!token.empty()) {
            any_token = true;
            auto label = parse_label(token);
            if (label) {
                out.labels.insert(*label);
            } else {
                out.warnings.push_back("unknown label token '" + token + "' dropped");
            }
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (!any_token) return fail("empty label list after 'Concern:'");
    if (out.labels.empty()) return fail("no valid label survived normalization");
    if (out.labels.contains(ConcernLabel::None) && out.labels.size() > 1) {
        out.labels = out.labels.normalized();
    }

    // reasoning: everything after the first "Reasoning:" marker
    for (size_t li = concern_line_idx; li < spans.size(); ++li) {
        std::string_view line = raw.substr(spans[li].first, spans[li].second - spans[li].first);
        std::string_view t = ltrim(line);
        if (t.rfind("Reasoning:", 0) == 0) {
            size_t marker = raw.find("Reasoning:", spans[li].first);
            std::string_view rest = raw.substr(marker + std::string_view("Reasoning:").size());
            out.reasoning = trim_token(rest);
            break;
        }
    }

    // flag likely mid-sentence cutoffs (max_tokens truncation)
    std::string_view trimmed = raw;
    while (!trimmed.empty() &&
           (trimmed.back() == ' ' || trimmed.back() == '\n' || trimmed.back() == '\r' ||
            trimmed.back() == '\t')) {
        trimmed.remove_suffix(1);
    }
    if (!trimmed.empty()) {
        const char last = trimmed.back();
        if (last != '.' && last != '!' && last != '?' && last != ']') {
            out.truncated = true;
            out.warnings.push_back("completion ends mid-sentence; reasoning may be truncated");
        }
    }
    return out;
}

} // namespace vaxtag
