#include "lorentzseq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

namespace {

std::size_t index_of(const std::vector<std::string>& sorted, const std::string& value) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

ConfusionMatrix confusion_matrix(const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& truth) {
    if (predictions.size() != truth.size()) {
        throw Error(ErrorCode::DimensionMismatch, "predictions and truth differ in length");
    }
    ConfusionMatrix cm;
    cm.classes = truth;
    cm.classes.insert(cm.classes.end(), predictions.begin(), predictions.end());
    std::sort(cm.classes.begin(), cm.classes.end());
    cm.classes.erase(std::unique(cm.classes.begin(), cm.classes.end()), cm.classes.end());
    cm.counts.assign(cm.classes.size(), std::vector<std::size_t>(cm.classes.size(), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++cm.counts[index_of(cm.classes, truth[i])][index_of(cm.classes, predictions[i])];
    }
    return cm;
}

double binary_auc(std::span<const double> scores, const std::vector<bool>& positive) {
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Sum of mid-ranks of the positives (Mann-Whitney U).
    double rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && scores[order[hi]] == scores[order[lo]]) ++hi;
        const double mid_rank = 0.5 * static_cast<double>(lo + 1 + hi);
        for (std::size_t r = lo; r < hi; ++r) {
            if (positive[order[r]]) {
                rank_sum += mid_rank;
                ++n_pos;
            }
        }
        lo = hi;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) return std::numeric_limits<double>::quiet_NaN();
    const double p = static_cast<double>(n_pos);
    const double u = rank_sum - p * (p + 1.0) / 2.0;
    return u / (p * static_cast<double>(n_neg));
}

MetricBlock evaluate(const std::vector<std::string>& predictions, const Eigen::MatrixXd& scores,
                     const std::vector<std::string>& score_classes,
                     const std::vector<std::string>& truth) {
    if (truth.empty()) throw Error(ErrorCode::EmptyEvaluation, "nothing to evaluate");
    if (static_cast<std::size_t>(scores.rows()) != truth.size() ||
        static_cast<std::size_t>(scores.cols()) != score_classes.size()) {
        throw Error(ErrorCode::DimensionMismatch, "score matrix shape does not match inputs");
    }
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        if (std::abs(scores.row(i).sum() - 1.0) > 1e-9) {
            throw Error(ErrorCode::InvalidArgument, "score row " + std::to_string(i) + " does not sum to 1");
        }
    }

    const ConfusionMatrix cm = confusion_matrix(predictions, truth);
    const std::size_t c = cm.classes.size();
    const double n = static_cast<double>(truth.size());

    MetricBlock m;
    double correct = 0.0;
    double f1_sum = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
        const double tp = static_cast<double>(cm.counts[k][k]);
        double support = 0.0;
        double predicted = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            support += static_cast<double>(cm.counts[k][j]);
            predicted += static_cast<double>(cm.counts[j][k]);
        }
        const double precision = safe_ratio(tp, predicted);
        const double recall = safe_ratio(tp, support);
        const double f1 = safe_ratio(2.0 * precision * recall, precision + recall);
        correct += tp;
        m.precision_weighted += support * precision;
        m.recall_weighted += support * recall;
        m.f1_weighted += support * f1;
        f1_sum += f1;
    }
    m.accuracy = correct / n;
    m.precision_weighted /= n;
    m.recall_weighted /= n;
    m.f1_weighted /= n;
    m.f1_macro = f1_sum / static_cast<double>(c);

    std::vector<std::string> truth_classes = truth;
    std::sort(truth_classes.begin(), truth_classes.end());
    truth_classes.erase(std::unique(truth_classes.begin(), truth_classes.end()), truth_classes.end());

    double auc_sum = 0.0;
    std::size_t auc_count = 0;
    std::vector<double> column(truth.size());
    std::vector<bool> positive(truth.size());
    for (const auto& cls : truth_classes) {
        const auto it = std::find(score_classes.begin(), score_classes.end(), cls);
        for (std::size_t i = 0; i < truth.size(); ++i) {
            column[i] = it == score_classes.end()
                            ? 0.0
                            : scores(Eigen::Index(i), Eigen::Index(it - score_classes.begin()));
            positive[i] = truth[i] == cls;
        }
        const double auc = binary_auc(column, positive);
        if (!std::isnan(auc)) {
            auc_sum += auc;
            ++auc_count;
        }
    }
    m.roc_auc_ovr = auc_count == 0 ? std::numeric_limits<double>::quiet_NaN()
                                   : auc_sum / static_cast<double>(auc_count);
    return m;
}

}  // namespace lorentzseq
