#include "n905/commonsense/sequence.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

namespace {
constexpr int kUnknownId = -1;
constexpr int kEndId = -2;
const char* kBeginMarker = "<s>";
}  // namespace

std::string SequenceModel::context_key(const std::vector<std::string>& history) const {
    // Last n-1 tokens, begin-padded, unknown-folded.
    std::vector<std::string> ctx;
    int need = n_ - 1;
    for (int i = static_cast<int>(history.size()) - need; i < static_cast<int>(history.size());
         ++i) {
        if (i < 0) {
            ctx.push_back(kBeginMarker);
        } else {
            auto it = vocab_.find(history[static_cast<size_t>(i)]);
            ctx.push_back(it == vocab_.end() ? "<unk>" : history[static_cast<size_t>(i)]);
        }
    }
    return join(ctx, "\x1f");
}

double SequenceModel::conditional(const std::vector<std::string>& context,
                                  const std::string& token) const {
    std::string key = context_key(context);
    auto vit = vocab_.find(token);
    int token_id = vit == vocab_.end() ? kUnknownId : vit->second;

    int pair_count = 0;
    int total = 0;
    auto cit = counts_.find(key);
    if (cit != counts_.end()) {
        auto tit = cit->second.find(token_id);
        if (tit != cit->second.end()) pair_count = tit->second;
        auto tot = context_totals_.find(key);
        if (tot != context_totals_.end()) total = tot->second;
    }
    return (pair_count + alpha_) / (total + alpha_ * vocab_size());
}

double SequenceModel::score(const std::vector<std::string>& history,
                            const std::string& candidate) const {
    return std::log(conditional(history, candidate));
}

SequenceModel fit_sequence_model(const std::vector<std::vector<std::string>>& corpus, int n,
                                 double alpha) {
    if (corpus.empty()) throw std::invalid_argument("sequence model: empty corpus");
    if (n < 1) throw std::invalid_argument("sequence model: order must be >= 1");
    if (alpha <= 0.0) throw std::invalid_argument("sequence model: alpha must be > 0");

    SequenceModel m;
    m.n_ = n;
    m.alpha_ = alpha;
    for (const auto& seq : corpus) {
        for (const auto& tok : seq) {
            if (!m.vocab_.count(tok)) {
                int id = static_cast<int>(m.vocab_.size());
                m.vocab_[tok] = id;
            }
        }
    }
    for (const auto& seq : corpus) {
        for (size_t t = 0; t <= seq.size(); ++t) {
            std::vector<std::string> hist(seq.begin(),
                                          seq.begin() + static_cast<long>(std::min(t, seq.size())));
            std::string key = m.context_key(hist);
            if (t < seq.size()) {
                m.counts_[key][m.vocab_.at(seq[t])] += 1;
                m.context_totals_[key] += 1;
            } else {
                // End marker: counted as an event but excluded from the
                // context total so in-vocabulary continuations normalize.
                m.counts_[key][kEndId] += 1;
            }
        }
    }
    return m;
}

std::vector<std::vector<std::string>> parse_corpus(const std::string& content) {
    std::vector<std::vector<std::string>> corpus;
    std::vector<std::string> cur;
    std::istringstream in(content);
    std::string line;
    auto flush = [&] {
        if (!cur.empty()) {
            corpus.push_back(cur);
            cur.clear();
        }
    };
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) {
            flush();
        } else if (t[0] != '#') {
            cur.push_back(t);
        }
    }
    flush();
    return corpus;
}

std::vector<std::vector<std::string>> load_corpus(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open corpus: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_corpus(ss.str());
}

Eigen::VectorXd rerank(const std::vector<ActionCommand>& candidates,
                       const Eigen::VectorXd& probs, const SequenceModel& model,
                       const std::vector<std::string>& history, const ShapingConfig& cfg) {
    const int n = static_cast<int>(candidates.size());
    if (n == 0 || probs.size() != n) {
        throw std::invalid_argument("rerank: candidates and probabilities disagree");
    }
    if (std::abs(probs.sum() - 1.0) > 1e-6) {
        throw std::invalid_argument("rerank: input distribution does not sum to 1");
    }
    if (cfg.top_k < 1) throw std::invalid_argument("rerank: k must be >= 1");

    std::vector<int> order(candidates.size());
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (probs[a] != probs[b]) return probs[a] > probs[b];
        return candidates[static_cast<size_t>(a)].surface <
               candidates[static_cast<size_t>(b)].surface;
    });
    const int k = std::min(cfg.top_k, n);

    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    if (cfg.lambda == 0.0) {
        // Exact top-k truncation of the input distribution.
        for (int r = 0; r < k; ++r) out[order[static_cast<size_t>(r)]] = probs[order[static_cast<size_t>(r)]];
    } else {
        for (int r = 0; r < k; ++r) {
            int i = order[static_cast<size_t>(r)];
            if (probs[i] <= 0.0) continue;  // zero support stays zero
            double blended = (1.0 - cfg.lambda) * std::log(probs[i]) +
                             cfg.lambda * model.score(history, candidates[static_cast<size_t>(i)].surface);
            out[i] = std::exp(blended);
        }
    }
    double total = out.sum();
    if (total <= 0.0) {
        // Degenerate corner: fall back to the truncated policy weights.
        for (int r = 0; r < k; ++r) out[order[static_cast<size_t>(r)]] = probs[order[static_cast<size_t>(r)]];
        total = out.sum();
    }
    out /= total;
    return out;
}

}  // namespace n905
