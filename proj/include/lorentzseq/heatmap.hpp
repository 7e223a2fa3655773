#ifndef LORENTZSEQ_HEATMAP_HPP
#define LORENTZSEQ_HEATMAP_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace lorentzseq {

struct Heatmap {
    std::vector<std::string> classes;  // sorted
    Eigen::MatrixXd mean_cosine;       // before normalization
    Eigen::MatrixXd normalized;        // min-max scaled to [0, 1]
    std::size_t excluded_rows = 0;     // zero-norm rows left out
    std::vector<std::string> warnings;
};

/// Mean pairwise cosine similarity between the rows of each pair of classes
/// (distinct rows only on the diagonal; a class with one usable row gets 1
/// there), then min-max normalized over all cells. A constant matrix
/// normalizes to all ones. Throws InvalidArgument if no usable row remains.
Heatmap class_heatmap(const Eigen::MatrixXd& embedding, const std::vector<std::string>& labels);

/// CSV with class names as the header row and first column.
void write_heatmap_csv(std::ostream& out, const Heatmap& heatmap);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_HEATMAP_HPP
