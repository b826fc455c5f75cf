#include "vaxtag/model_bundle.hpp"

#include <fstream>
#include <sstream>

#include "vaxtag/errors.hpp"

namespace vaxtag {

namespace {

std::string bools_line(const PipelineConfig& prep) {
    std::ostringstream out;
    out << prep.lowercase << ' ' << prep.remove_urls << ' ' << prep.remove_handles << ' '
        << prep.translate_emoji << ' ' << prep.expand_contractions << ' '
        << prep.strip_nonalnum << ' ' << prep.collapse_whitespace << ' '
        << prep.drop_stopwords;
    return out.str();
}

} // namespace

void save_bundle(const ModelBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model bundle: " + path);
    out << "vaxtag-model 1 " << bundle.method << ' ' << bundle.seed << '\n';
    out << "prep " << bools_line(bundle.prep) << ' ' << bundle.prep.stopword_list << ' '
        << bundle.prep.emoji_table << ' ' << bundle.prep.contraction_table << '\n';
    save_tfidf(bundle.tfidf, out);
    bundle.model->save(out);
    if (!out) throw DataError("short write: " + path);
}

ModelBundle load_bundle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model bundle: " + path);

    ModelBundle bundle;
    std::string line;
    if (!std::getline(in, line)) throw DataError("model bundle: missing header");
    {
        std::istringstream hs(line);
        std::string magic;
        int version = 0;
        hs >> magic >> version >> bundle.method >> bundle.seed;
        if (magic != "vaxtag-model" || version != 1) {
            throw DataError("model bundle: bad header: " + line);
        }
    }
    if (!std::getline(in, line)) throw DataError("model bundle: missing prep line");
    {
        std::istringstream ps(line);
        std::string word;
        ps >> word;
        if (word != "prep") throw DataError("model bundle: expected prep line");
        auto& prep = bundle.prep;
        ps >> prep.lowercase >> prep.remove_urls >> prep.remove_handles >>
            prep.translate_emoji >> prep.expand_contractions >> prep.strip_nonalnum >>
            prep.collapse_whitespace >> prep.drop_stopwords >> prep.stopword_list >>
            prep.emoji_table >> prep.contraction_table;
        if (!ps) throw DataError("model bundle: malformed prep line");
    }
    bundle.tfidf = load_tfidf(in);
    bundle.model = load_multilabel(in);
    return bundle;
}

SparseVector featurize(const ModelBundle& bundle, const std::vector<std::string>& tokens) {
    return bundle.uses_counts() ? count_vector(tokens, bundle.tfidf)
                                : transform(tokens, bundle.tfidf);
}

} // namespace vaxtag
