#ifndef LORENTZSEQ_CLASSIFIERS_HPP
#define LORENTZSEQ_CLASSIFIERS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace lorentzseq {

struct Classification {
    std::vector<std::string> predictions;  // one per test row
    std::vector<std::string> classes;      // sorted training labels; score columns
    Eigen::MatrixXd scores;                // test rows x classes, rows sum to 1
};

/// Majority vote among the `neighbors` nearest training rows (Euclidean).
/// Equal distances are ordered by training index. Vote ties go to the label
/// with the smaller summed neighbor distance, then the lexicographically
/// smaller label. Scores are vote fractions.
/// Throws NoTrainingData for an empty training set and InvalidArgument when
/// neighbors is 0 or exceeds the training size.
Classification knn_classify(const Eigen::MatrixXd& train, const std::vector<std::string>& train_labels,
                            const Eigen::MatrixXd& test, std::size_t neighbors);

/// Nearest class mean; ties go to the lexicographically smaller label.
/// Scores are a softmax over negative centroid distances.
Classification nearest_centroid_classify(const Eigen::MatrixXd& train,
                                         const std::vector<std::string>& train_labels,
                                         const Eigen::MatrixXd& test);

enum class ClassifierKind { Knn, Centroid };

std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view name);  // "knn" | "centroid"

}  // namespace lorentzseq

#endif  // LORENTZSEQ_CLASSIFIERS_HPP
