#include "lorentzseq/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lorentzseq/error.hpp"
#include "lorentzseq/random.hpp"

namespace lorentzseq {

namespace {

std::size_t test_count(std::size_t size, double fraction) {
    const auto rounded = static_cast<std::size_t>(std::llround(static_cast<double>(size) * fraction));
    return std::clamp<std::size_t>(rounded, 1, size - 1);
}

}  // namespace

Split stratified_split(const std::vector<std::string>& labels, const SplitSpec& spec,
                       std::size_t run_index) {
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "test fraction must lie in (0, 1)");
    }
    const std::size_t n = labels.size();
    if (n < 2) throw Error(ErrorCode::SplitInfeasible, "need at least two samples to split");

    RandomStream rng(spec.base_seed, run_index);
    Split split;

    if (!spec.stratified) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        rng.shuffle(order);
        const std::size_t t = test_count(n, spec.test_fraction);
        split.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
        split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(t), order.end());
    } else {
        std::map<std::string, std::vector<std::size_t>> members;
        for (std::size_t i = 0; i < n; ++i) members[labels[i]].push_back(i);

        bool any_splittable = false;
        for (auto& [label, idx] : members) {
            if (idx.size() == 1) {
                split.train.push_back(idx.front());
                split.warnings.push_back("class '" + label + "' has one member; kept in train only");
                continue;
            }
            any_splittable = true;
            rng.shuffle(idx);
            const std::size_t t = test_count(idx.size(), spec.test_fraction);
            split.test.insert(split.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(t));
            split.train.insert(split.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(t), idx.end());
        }
        if (!any_splittable) {
            throw Error(ErrorCode::SplitInfeasible, "every class has a single member");
        }
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

}  // namespace lorentzseq
