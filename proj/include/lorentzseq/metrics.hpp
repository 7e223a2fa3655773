#ifndef LORENTZSEQ_METRICS_HPP
#define LORENTZSEQ_METRICS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace lorentzseq {

struct ConfusionMatrix {
    std::vector<std::string> classes;               // sorted union of truth and predictions
    std::vector<std::vector<std::size_t>> counts;   // [truth][predicted]
};

ConfusionMatrix confusion_matrix(const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& truth);

struct MetricBlock {
    double accuracy = 0.0;
    double precision_weighted = 0.0;
    double recall_weighted = 0.0;
    double f1_weighted = 0.0;
    double f1_macro = 0.0;
    double roc_auc_ovr = 0.0;  // NaN when no class has both positives and negatives
};

/// Area under the ROC curve as a rank statistic; tied scores count one half.
/// NaN when `positive` has no positives or no negatives.
double binary_auc(std::span<const double> scores, const std::vector<bool>& positive);

/// Accuracy plus support-weighted and macro precision/recall/F1 (0/0 := 0)
/// and one-vs-rest ROC-AUC. `scores` columns follow `score_classes`; a truth
/// class without a score column is scored 0 everywhere.
/// Throws EmptyEvaluation on empty input, DimensionMismatch on size
/// disagreement, InvalidArgument if a score row does not sum to 1.
MetricBlock evaluate(const std::vector<std::string>& predictions, const Eigen::MatrixXd& scores,
                     const std::vector<std::string>& score_classes,
                     const std::vector<std::string>& truth);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_METRICS_HPP
