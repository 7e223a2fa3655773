#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "../oracles.hpp"
#include "lorentzseq/classifiers.hpp"
#include "lorentzseq/error.hpp"
#include "lorentzseq/heatmap.hpp"
#include "lorentzseq/metrics.hpp"
#include "lorentzseq/random.hpp"
#include "lorentzseq/split.hpp"
#include "lorentzseq/stats.hpp"

using namespace lorentzseq;
using Eigen::MatrixXd;

namespace {

MatrixXd column(std::initializer_list<double> values) {
    MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
    Eigen::Index i = 0;
    for (double v : values) m(i++, 0) = v;
    return m;
}

std::vector<std::string> take(const std::vector<std::string>& labels, const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(labels[i]);
    return out;
}

}  // namespace

TEST_CASE("stratified_split examples") {
    const std::vector<std::string> abab{"A", "A", "B", "B"};
    const SplitSpec half{0.5, 5, 123, true};
    const auto s = stratified_split(abab, half, 0);
    REQUIRE(s.train.size() == 2);
    REQUIRE(s.test.size() == 2);
    CHECK(take(abab, s.train) == std::vector<std::string>{"A", "B"});
    CHECK(take(abab, s.test) == std::vector<std::string>{"A", "B"});

    const auto again = stratified_split(abab, half, 0);
    CHECK(again.train == s.train);
    CHECK(again.test == s.test);

    const std::vector<std::string> tens(10, "A");
    const auto t = stratified_split(tens, {0.3, 1, 0, true}, 0);
    CHECK(t.test.size() == 3);
    CHECK(t.train.size() == 7);
}

TEST_CASE("stratified_split singletons and infeasible inputs") {
    const auto s = stratified_split({"A", "A", "A", "B"}, {0.5, 1, 0, true}, 0);
    CHECK(std::find(s.train.begin(), s.train.end(), 3u) != s.train.end());
    CHECK_FALSE(s.warnings.empty());
    try {
        stratified_split({"A", "B", "C"}, {0.5, 1, 0, true}, 0);
        FAIL("expected SplitInfeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SplitInfeasible);
    }
}

TEST_CASE("stratified_split partitions and keeps classes on both sides") {
    RandomStream rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> labels;
        const auto n = 2 + rng.below(80);
        for (std::uint64_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('A' + rng.below(4))));
        const SplitSpec spec{0.05 + 0.9 * rng.uniform(), 5, rng.next_u64(), true};
        std::map<std::string, std::size_t> sizes;
        for (const auto& l : labels) ++sizes[l];
        if (std::none_of(sizes.begin(), sizes.end(), [](const auto& kv) { return kv.second >= 2; })) continue;
        const auto s = stratified_split(labels, spec, rng.below(5));
        std::vector<std::size_t> all = s.train;
        all.insert(all.end(), s.test.begin(), s.test.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < n; ++i) CHECK(all[i] == i);
        CHECK(std::is_sorted(s.train.begin(), s.train.end()));
        const auto tr = take(labels, s.train), te = take(labels, s.test);
        for (const auto& [label, size] : sizes) {
            if (size < 2) continue;
            CHECK(std::count(tr.begin(), tr.end(), label) >= 1);
            CHECK(std::count(te.begin(), te.end(), label) >= 1);
        }
    }
}

TEST_CASE("different run indices give different splits") {
    std::vector<std::string> labels(40, "A");
    for (std::size_t i = 20; i < 40; ++i) labels[i] = "B";
    const SplitSpec spec{0.3, 5, 7, true};
    CHECK(stratified_split(labels, spec, 0).test != stratified_split(labels, spec, 1).test);
}

TEST_CASE("knn_classify examples") {
    auto c = knn_classify(column({0.0, 10.0}), {"A", "B"}, column({1.0}), 1);
    CHECK(c.predictions[0] == "A");
    CHECK(c.classes == std::vector<std::string>{"A", "B"});
    CHECK(c.scores(0, 0) == 1.0);
    CHECK(c.scores(0, 1) == 0.0);

    c = knn_classify(column({0.0, 1.0, 10.0}), {"A", "A", "B"}, column({2.0}), 3);
    CHECK(c.predictions[0] == "A");
    CHECK(c.scores(0, 0) == doctest::Approx(2.0 / 3.0));

    c = knn_classify(column({0.0, 5.0, 9.0}), {"A", "B", "C"}, column({5.0}), 1);
    CHECK(c.predictions[0] == "B");

    // vote tie broken by summed distance, then label
    c = knn_classify(column({0.0, 3.0}), {"B", "A"}, column({1.0}), 2);
    CHECK(c.predictions[0] == "B");
    c = knn_classify(column({0.0, 2.0}), {"B", "A"}, column({1.0}), 2);
    CHECK(c.predictions[0] == "A");

    try {
        knn_classify(MatrixXd(0, 1), {}, column({1.0}), 1);
        FAIL("expected NoTrainingData");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoTrainingData);
    }
}

TEST_CASE("knn_classify agrees with the exhaustive oracle") {
    RandomStream rng(31);
    const Eigen::Index n = 200, dim = 3;
    MatrixXd pts(n, dim);
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) pts(i, j) = rng.uniform();
        labels.push_back("c" + std::to_string(rng.below(4)));
    }
    const MatrixXd train = pts.topRows(150), test = pts.bottomRows(50);
    const std::vector<std::string> train_labels(labels.begin(), labels.begin() + 150);
    for (std::size_t k : {1u, 3u, 5u}) {
        const auto got = knn_classify(train, train_labels, test, k);
        for (Eigen::Index i = 0; i < test.rows(); ++i) {
            CHECK(got.predictions[static_cast<std::size_t>(i)] ==
                  oracle::knn_exhaustive(train, train_labels, test.row(i).transpose(), k));
            CHECK(got.scores.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("nearest_centroid_classify examples") {
    auto c = nearest_centroid_classify(column({0.0, 10.0}), {"A", "B"}, column({4.0, 5.0}));
    CHECK(c.predictions[0] == "A");
    CHECK(c.predictions[1] == "A");
    c = nearest_centroid_classify(column({0.0, 10.0}), {"B", "A"}, column({5.0}));
    CHECK(c.predictions[0] == "A");
    c = nearest_centroid_classify(column({0.0, 2.0, 10.0}), {"A", "A", "B"}, column({3.0}));
    CHECK(c.predictions[0] == "A");
    CHECK(c.scores.row(0).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(parse_classifier("centroid") == ClassifierKind::Centroid);
    CHECK_THROWS_AS(parse_classifier("svm"), Error);
}

TEST_CASE("evaluate hand example") {
    const std::vector<std::string> preds{"A", "A", "B"}, truth{"A", "B", "B"};
    MatrixXd scores(3, 2);
    scores << 1, 0, 1, 0, 0, 1;
    const auto m = evaluate(preds, scores, {"A", "B"}, truth);
    CHECK(m.accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(m.f1_macro == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(m.f1_weighted == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(m.precision_weighted == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(m.recall_weighted == doctest::Approx(2.0 / 3.0));

    const auto cm = confusion_matrix(preds, truth);
    CHECK(cm.counts == std::vector<std::vector<std::size_t>>{{1, 0}, {1, 1}});
}

TEST_CASE("evaluate edge cases") {
    MatrixXd scores(2, 2);
    scores << 1, 0, 0, 1;
    const auto perfect = evaluate({"A", "B"}, scores, {"A", "B"}, {"A", "B"});
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.precision_weighted == 1.0);
    CHECK(perfect.recall_weighted == 1.0);
    CHECK(perfect.f1_weighted == 1.0);
    CHECK(perfect.f1_macro == 1.0);
    CHECK(perfect.roc_auc_ovr == 1.0);

    // an unseen predicted label becomes its own confusion row
    const auto cm = confusion_matrix({"Z", "A"}, {"A", "A"});
    CHECK(cm.classes == std::vector<std::string>{"A", "Z"});

    MatrixXd one(1, 1);
    one << 1;
    CHECK(std::isnan(evaluate({"A"}, one, {"A"}, {"A"}).roc_auc_ovr));
    CHECK_THROWS_AS(evaluate({}, MatrixXd(0, 1), {"A"}, {}), Error);
    CHECK_THROWS_AS(evaluate({"A"}, one, {"A"}, {"A", "B"}), Error);
}

TEST_CASE("binary AUC equals the pairwise Mann-Whitney fraction") {
    const std::vector<double> ex{0.9, 0.8, 0.3};
    CHECK(binary_auc(ex, {true, true, false}) == 1.0);
    RandomStream rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 2 + rng.below(60);
        std::vector<double> scores(n);
        std::vector<bool> pos(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rng.below(8)) / 8.0;  // frequent ties
            pos[i] = rng.below(2) == 1;
        }
        pos[0] = true;
        pos[1] = false;
        CHECK(std::abs(binary_auc(scores, pos) - oracle::auc_pairwise(scores, pos)) <= 1e-12);
    }
}

TEST_CASE("weighted F1 matches the confusion matrix recomputation") {
    RandomStream rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = 1 + rng.below(50);
        std::vector<std::string> preds, truth;
        for (std::size_t i = 0; i < n; ++i) {
            preds.push_back(std::string(1, static_cast<char>('A' + rng.below(3))));
            truth.push_back(std::string(1, static_cast<char>('A' + rng.below(3))));
        }
        const std::vector<std::string> classes{"A", "B", "C"};
        MatrixXd scores(static_cast<Eigen::Index>(n), 3);
        for (std::size_t i = 0; i < n; ++i)
            for (Eigen::Index c = 0; c < 3; ++c) scores(static_cast<Eigen::Index>(i), c) = preds[i][0] - 'A' == c ? 1.0 : 0.0;
        const auto m = evaluate(preds, scores, classes, truth);
        const auto cm = confusion_matrix(preds, truth);
        double weighted = 0.0;
        for (std::size_t c = 0; c < cm.classes.size(); ++c) {
            double support = 0.0, predicted = 0.0;
            for (std::size_t j = 0; j < cm.classes.size(); ++j) {
                support += static_cast<double>(cm.counts[c][j]);
                predicted += static_cast<double>(cm.counts[j][c]);
            }
            const double tp = static_cast<double>(cm.counts[c][c]);
            const double p = predicted > 0 ? tp / predicted : 0.0;
            const double r = support > 0 ? tp / support : 0.0;
            const double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
            weighted += support * f1;
        }
        CHECK(m.f1_weighted == doctest::Approx(weighted / static_cast<double>(n)).epsilon(1e-12));
        CHECK(m.accuracy >= 0.0);
        CHECK(m.accuracy <= 1.0);
    }
}

TEST_CASE("summarize") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(v);
    CHECK(s.mean == 2.5);
    CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
    const std::vector<double> one{0.7};
    CHECK(summarize(one).sd == 0.0);
}

TEST_CASE("t_test_summary examples") {
    auto r = t_test_summary(0.5, 0.1, 5, 0.5, 0.3, 5);
    CHECK(r.t == 0.0);
    CHECK(r.p_value == 1.0);

    r = t_test_summary(0.849, 0.002, 5, 0.800, 0.002, 5);
    CHECK(r.t == doctest::Approx(38.737901337062592646).epsilon(1e-6));
    CHECK(r.df == doctest::Approx(8.0));
    CHECK(r.p_value == doctest::Approx(2.1667864052064189193e-10).epsilon(1e-5));
    CHECK(r.p_value < 1e-6);

    const auto swapped = t_test_summary(0.800, 0.002, 5, 0.849, 0.002, 5);
    CHECK(swapped.t == -r.t);
    CHECK(swapped.p_value == r.p_value);

    r = t_test_summary(0.9, 0.0, 5, 0.9, 0.0, 5);
    CHECK(r.t == 0.0);
    CHECK(r.p_value == 1.0);
    r = t_test_summary(0.9, 0.0, 5, 0.8, 0.0, 5);
    CHECK(r.infinite_t);
    CHECK(r.p_value == 0.0);
    CHECK_THROWS_AS(t_test_summary(0.9, 0.1, 1, 0.8, 0.1, 5), Error);
    CHECK_THROWS_AS(t_test_summary(0.9, -0.1, 5, 0.8, 0.1, 5), Error);
}

TEST_CASE("t-test p-values agree with direct quadrature") {
    RandomStream rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const double m1 = rng.uniform(), m2 = rng.uniform();
        const double s1 = 0.01 + 0.2 * rng.uniform(), s2 = 0.01 + 0.2 * rng.uniform();
        const std::size_t n1 = 2 + rng.below(10), n2 = 2 + rng.below(10);
        const auto r = t_test_summary(m1, s1, n1, m2, s2, n2);
        CHECK(std::abs(r.p_value - oracle::t_two_sided_quadrature(r.t, r.df)) <= 1e-8);
    }
}

TEST_CASE("class_heatmap examples") {
    MatrixXd e(2, 2);
    e << 1, 0, 0, 1;
    auto h = class_heatmap(e, {"A", "B"});
    CHECK(h.mean_cosine.isIdentity(1e-15));
    CHECK(h.normalized.isIdentity(1e-15));

    MatrixXd same(3, 2);
    same << 1, 2, 1, 2, 1, 2;
    h = class_heatmap(same, {"A", "B", "A"});
    CHECK(h.mean_cosine.isOnes(1e-15));
    CHECK(h.normalized.isOnes(0.0));

    MatrixXd opp(3, 2);
    opp << 1, 0, 1, 0, -1, 0;
    h = class_heatmap(opp, {"A", "A", "B"});
    MatrixXd pre(2, 2), post(2, 2);
    pre << 1, -1, -1, 1;
    post << 1, 0, 0, 1;
    CHECK(h.mean_cosine == pre);
    CHECK(h.normalized == post);

    MatrixXd zero(3, 2);
    zero << 1, 0, 0, 0, 0, 1;
    h = class_heatmap(zero, {"A", "A", "B"});
    CHECK(h.excluded_rows == 1);
    CHECK_FALSE(h.warnings.empty());
}

TEST_CASE("class_heatmap is symmetric, bounded and order invariant") {
    RandomStream rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<Eigen::Index>(4 + rng.below(40));
        MatrixXd e(n, 5);
        std::vector<std::string> labels;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < 5; ++j) e(i, j) = 2.0 * rng.uniform() - 1.0;
            labels.push_back("k" + std::to_string(rng.below(3)));
        }
        const auto h = class_heatmap(e, labels);
        CHECK(h.normalized == h.normalized.transpose());
        CHECK(h.normalized.minCoeff() >= 0.0);
        CHECK(h.normalized.maxCoeff() <= 1.0);

        std::vector<std::size_t> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        MatrixXd pe(n, 5);
        std::vector<std::string> pl;
        for (Eigen::Index i = 0; i < n; ++i) {
            pe.row(i) = e.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]));
            pl.push_back(labels[perm[static_cast<std::size_t>(i)]]);
        }
        const auto hp = class_heatmap(pe, pl);
        CHECK(hp.classes == h.classes);
        CHECK((hp.normalized - h.normalized).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
