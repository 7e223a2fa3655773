#include "lorentzseq/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

namespace {

double squared_distance(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b,
                        Eigen::Index j) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        const double d = a(i, c) - b(j, c);
        sum += d * d;
    }
    return sum;
}

void check_inputs(const Eigen::MatrixXd& train, const std::vector<std::string>& train_labels,
                  const Eigen::MatrixXd& test) {
    if (train.rows() == 0) throw Error(ErrorCode::NoTrainingData, "training set is empty");
    if (static_cast<std::size_t>(train.rows()) != train_labels.size()) {
        throw Error(ErrorCode::DimensionMismatch, "training rows and labels differ in count");
    }
    if (test.rows() > 0 && test.cols() != train.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "train and test dimensions differ");
    }
}

std::vector<std::string> sorted_classes(const std::vector<std::string>& labels) {
    std::vector<std::string> classes(labels);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

std::vector<std::size_t> class_ids(const std::vector<std::string>& labels,
                                   const std::vector<std::string>& classes) {
    std::vector<std::size_t> ids(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ids[i] = static_cast<std::size_t>(
            std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin());
    }
    return ids;
}

}  // namespace

Classification knn_classify(const Eigen::MatrixXd& train, const std::vector<std::string>& train_labels,
                            const Eigen::MatrixXd& test, std::size_t neighbors) {
    check_inputs(train, train_labels, test);
    const auto n_train = static_cast<std::size_t>(train.rows());
    if (neighbors == 0 || neighbors > n_train) {
        throw Error(ErrorCode::InvalidArgument, "neighbors must lie in [1, " + std::to_string(n_train) + "]");
    }

    Classification out;
    out.classes = sorted_classes(train_labels);
    const auto ids = class_ids(train_labels, out.classes);
    const std::size_t c = out.classes.size();
    out.scores = Eigen::MatrixXd::Zero(test.rows(), static_cast<Eigen::Index>(c));

    std::vector<std::pair<double, std::size_t>> dist(n_train);
    std::vector<std::size_t> votes(c);
    std::vector<double> summed(c);
    for (Eigen::Index t = 0; t < test.rows(); ++t) {
        for (std::size_t i = 0; i < n_train; ++i) {
            dist[i] = {squared_distance(test, t, train, Eigen::Index(i)), i};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(neighbors), dist.end());

        std::fill(votes.begin(), votes.end(), 0);
        std::fill(summed.begin(), summed.end(), 0.0);
        for (std::size_t r = 0; r < neighbors; ++r) {
            const std::size_t cls = ids[dist[r].second];
            ++votes[cls];
            summed[cls] += std::sqrt(dist[r].first);
        }
        // Classes are sorted, so a strict comparison keeps the smaller label.
        std::size_t best = 0;
        for (std::size_t cls = 1; cls < c; ++cls) {
            if (votes[cls] > votes[best] || (votes[cls] == votes[best] && summed[cls] < summed[best])) {
                best = cls;
            }
        }
        out.predictions.push_back(out.classes[best]);
        for (std::size_t cls = 0; cls < c; ++cls) {
            out.scores(t, Eigen::Index(cls)) = static_cast<double>(votes[cls]) / static_cast<double>(neighbors);
        }
    }
    return out;
}

Classification nearest_centroid_classify(const Eigen::MatrixXd& train,
                                         const std::vector<std::string>& train_labels,
                                         const Eigen::MatrixXd& test) {
    check_inputs(train, train_labels, test);
    Classification out;
    out.classes = sorted_classes(train_labels);
    const auto ids = class_ids(train_labels, out.classes);
    const auto c = static_cast<Eigen::Index>(out.classes.size());

    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(c, train.cols());
    std::vector<double> counts(static_cast<std::size_t>(c), 0.0);
    for (Eigen::Index i = 0; i < train.rows(); ++i) {
        const auto cls = static_cast<Eigen::Index>(ids[static_cast<std::size_t>(i)]);
        centroids.row(cls) += train.row(i);
        counts[static_cast<std::size_t>(cls)] += 1.0;
    }
    for (Eigen::Index cls = 0; cls < c; ++cls) centroids.row(cls) /= counts[static_cast<std::size_t>(cls)];

    out.scores.resize(test.rows(), c);
    std::vector<double> dist(static_cast<std::size_t>(c));
    for (Eigen::Index t = 0; t < test.rows(); ++t) {
        Eigen::Index best = 0;
        for (Eigen::Index cls = 0; cls < c; ++cls) {
            dist[static_cast<std::size_t>(cls)] = std::sqrt(squared_distance(test, t, centroids, cls));
            if (dist[static_cast<std::size_t>(cls)] < dist[static_cast<std::size_t>(best)]) best = cls;
        }
        out.predictions.push_back(out.classes[static_cast<std::size_t>(best)]);

        const double nearest = dist[static_cast<std::size_t>(best)];
        double total = 0.0;
        for (Eigen::Index cls = 0; cls < c; ++cls) {
            const double w = std::exp(nearest - dist[static_cast<std::size_t>(cls)]);
            out.scores(t, cls) = w;
            total += w;
        }
        out.scores.row(t) /= total;
    }
    return out;
}

std::string_view to_string(ClassifierKind kind) {
    return kind == ClassifierKind::Knn ? "knn" : "centroid";
}

ClassifierKind parse_classifier(std::string_view name) {
    if (name == "knn") return ClassifierKind::Knn;
    if (name == "centroid") return ClassifierKind::Centroid;
    throw Error(ErrorCode::InvalidArgument, "unknown classifier '" + std::string(name) + "'");
}

}  // namespace lorentzseq
