#include "lorentzseq/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

Heatmap class_heatmap(const Eigen::MatrixXd& embedding, const std::vector<std::string>& labels) {
    if (static_cast<std::size_t>(embedding.rows()) != labels.size()) {
        throw Error(ErrorCode::DimensionMismatch, "embedding rows and labels differ in count");
    }

    // Unit rows, with zero-norm rows dropped.
    std::vector<Eigen::Index> kept;
    std::vector<double> squared(labels.size(), 0.0);
    for (Eigen::Index i = 0; i < embedding.rows(); ++i) {
        double sq = 0.0;
        for (Eigen::Index c = 0; c < embedding.cols(); ++c) sq += embedding(i, c) * embedding(i, c);
        squared[static_cast<std::size_t>(i)] = sq;
        if (sq > 0.0) kept.push_back(i);
    }

    Heatmap h;
    h.excluded_rows = labels.size() - kept.size();
    if (h.excluded_rows > 0) {
        h.warnings.push_back(std::to_string(h.excluded_rows) + " zero-norm rows excluded from heatmap");
    }
    if (kept.empty()) throw Error(ErrorCode::InvalidArgument, "no nonzero embedding rows");

    for (Eigen::Index i : kept) h.classes.push_back(labels[static_cast<std::size_t>(i)]);
    std::sort(h.classes.begin(), h.classes.end());
    h.classes.erase(std::unique(h.classes.begin(), h.classes.end()), h.classes.end());
    const auto c = static_cast<Eigen::Index>(h.classes.size());

    std::vector<Eigen::Index> cls(kept.size());
    std::vector<double> class_size(h.classes.size(), 0.0);
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const auto& label = labels[static_cast<std::size_t>(kept[r])];
        cls[r] = std::lower_bound(h.classes.begin(), h.classes.end(), label) - h.classes.begin();
        class_size[static_cast<std::size_t>(cls[r])] += 1.0;
    }

    // Each unordered pair is visited once and accumulated into the upper
    // triangle; the lower triangle is mirrored, so the result is exactly symmetric.
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(c, c);
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const Eigen::Index i = kept[r];
        for (std::size_t s = r + 1; s < kept.size(); ++s) {
            const Eigen::Index j = kept[s];
            double dot = 0.0;
            for (Eigen::Index k = 0; k < embedding.cols(); ++k) dot += embedding(i, k) * embedding(j, k);
            // sqrt(|a|^2 |b|^2) makes identical rows come out at exactly 1
            const double norm = std::sqrt(squared[static_cast<std::size_t>(i)] * squared[static_cast<std::size_t>(j)]);
            const double cosine = std::clamp(dot / norm, -1.0, 1.0);
            sum(std::min(cls[r], cls[s]), std::max(cls[r], cls[s])) += cosine;
        }
    }

    h.mean_cosine.resize(c, c);
    for (Eigen::Index a = 0; a < c; ++a) {
        const double na = class_size[static_cast<std::size_t>(a)];
        for (Eigen::Index b = a; b < c; ++b) {
            const double nb = class_size[static_cast<std::size_t>(b)];
            double value;
            if (a == b) {
                value = na < 2.0 ? 1.0 : sum(a, a) / (na * (na - 1.0) / 2.0);
            } else {
                value = sum(a, b) / (na * nb);
            }
            h.mean_cosine(a, b) = value;
            h.mean_cosine(b, a) = value;
        }
    }

    const double lo = h.mean_cosine.minCoeff();
    const double hi = h.mean_cosine.maxCoeff();
    if (hi > lo) {
        h.normalized = (h.mean_cosine.array() - lo) / (hi - lo);
    } else {
        h.normalized = Eigen::MatrixXd::Ones(c, c);
    }
    return h;
}

void write_heatmap_csv(std::ostream& out, const Heatmap& heatmap) {
    out << "class";
    for (const auto& name : heatmap.classes) out << ',' << name;
    out << '\n';
    char buf[32];
    for (Eigen::Index a = 0; a < heatmap.normalized.rows(); ++a) {
        out << heatmap.classes[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < heatmap.normalized.cols(); ++b) {
            std::snprintf(buf, sizeof buf, "%.17g", heatmap.normalized(a, b));
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace lorentzseq
