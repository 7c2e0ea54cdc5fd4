#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "autocd/dataset.hpp"
#include "autocd/forest.hpp"
#include "autocd/metrics.hpp"
#include "autocd/rng.hpp"

using namespace autocd;

namespace {

Dataset xy_dataset(const std::vector<double>& x, const std::vector<double>& y) {
    return Dataset({continuous_column("x", x), continuous_column("y", y)});
}

} // namespace

TEST_SUITE("learner") {

TEST_CASE("regression forest fits a linear signal") {
    Rng rng(701);
    int n = 300;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform(-2, 2);
        y[i] = x[i];
    }
    Dataset train = xy_dataset(x, y);
    Forest f = Forest::train(train, 1, {0}, {});
    CHECK_FALSE(f.classification());
    CHECK_FALSE(f.degenerate());

    std::vector<double> xt(n), yt(n);
    for (int i = 0; i < n; ++i) {
        xt[i] = rng.uniform(-2, 2);
        yt[i] = xt[i];
    }
    Dataset test = xy_dataset(xt, yt);
    Prediction p = f.predict(test);
    CHECK(r2_score(yt, p.values) > 0.95);
}

TEST_CASE("regression forest does not invent signal from noise") {
    Rng rng(702);
    int n = 300;
    std::vector<double> x(n), y(n), xt(n), yt(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = rng.normal();
        xt[i] = rng.normal();
        yt[i] = rng.normal();
    }
    ForestSpec spec;
    spec.min_leaf = 5;
    Forest f = Forest::train(xy_dataset(x, y), 1, {0}, spec);
    Prediction p = f.predict(xy_dataset(xt, yt));
    CHECK(r2_score(yt, p.values) < 0.05);
}

TEST_CASE("same seed gives identical forests, different seeds do not") {
    Rng rng(703);
    int n = 120;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = std::sin(x[i]) + 0.1 * rng.normal();
    }
    Dataset d = xy_dataset(x, y);
    ForestSpec a;
    a.seed = 5;
    ForestSpec b;
    b.seed = 6;
    Prediction p1 = Forest::train(d, 1, {0}, a).predict(d);
    Prediction p2 = Forest::train(d, 1, {0}, a).predict(d);
    Prediction p3 = Forest::train(d, 1, {0}, b).predict(d);
    CHECK(p1.values == p2.values);
    CHECK(p1.values != p3.values);
}

TEST_CASE("ensemble prediction is the mean of the per-tree predictions") {
    Rng rng(704);
    int n = 80;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = x[i] * x[i] + 0.2 * rng.normal();
    }
    Dataset d = xy_dataset(x, y);
    ForestSpec pair;
    pair.n_trees = 2;
    pair.seed = 40;
    ForestSpec first;
    first.n_trees = 1;
    first.seed = 40;
    ForestSpec second;
    second.n_trees = 1;
    second.seed = 41; // tree t reseeds from spec.seed + t, so this is tree 1 of the pair
    Prediction both = Forest::train(d, 1, {0}, pair).predict(d);
    Prediction t0 = Forest::train(d, 1, {0}, first).predict(d);
    Prediction t1 = Forest::train(d, 1, {0}, second).predict(d);
    for (int i = 0; i < n; ++i)
        CHECK(both.values[i] == (t0.values[i] + t1.values[i]) / 2.0);
}

TEST_CASE("a size-capped tree predicts its bootstrap mean") {
    Rng rng(705);
    int n = 50;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = rng.normal();
    }
    ForestSpec spec;
    spec.n_trees = 1;
    spec.min_leaf = n;
    spec.seed = 77;
    Forest f = Forest::train(xy_dataset(x, y), 1, {0}, spec);
    CHECK(f.to_json()["trees"][0].size() == 1);

    // replay the documented draw order: the tree rng emits the bootstrap rows first
    Rng replay(Rng::mix(77));
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += y[replay.uniform_int(n)];
    mean /= n;
    Prediction p = f.predict(xy_dataset({0.0, 5.0}, {0.0, 0.0}));
    CHECK(p.values[0] == mean);
    CHECK(p.values[1] == mean);
}

TEST_CASE("a single tree recovers a clean step function") {
    std::vector<double> x, y;
    for (int i = 0; i < 40; ++i) {
        x.push_back(i < 20 ? -1.0 - i * 0.01 : 1.0 + i * 0.01);
        y.push_back(i < 20 ? 0.0 : 1.0);
    }
    ForestSpec spec;
    spec.n_trees = 1;
    spec.feature_rule = ForestSpec::FeatureRule::All;
    spec.seed = 9;
    Forest f = Forest::train(xy_dataset(x, y), 1, {0}, spec);
    Prediction p = f.predict(xy_dataset({-3.0, 3.0}, {0.0, 0.0}));
    CHECK(p.values[0] == 0.0);
    CHECK(p.values[1] == 1.0);
}

TEST_CASE("classification forest separates labeled clusters") {
    Rng rng(706);
    int n = 200;
    std::vector<double> x(n);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = static_cast<int>(rng.uniform_int(2));
        x[i] = (y[i] == 0 ? -2.0 : 2.0) + 0.3 * rng.normal();
    }
    Dataset d({continuous_column("x", x), categorical_column("y", y, {"neg", "pos"})});
    Forest f = Forest::train(d, 1, {0}, {});
    CHECK(f.classification());
    CHECK(f.n_classes() == 2);
    Prediction p = f.predict(d);
    int correct = 0;
    for (int i = 0; i < n; ++i) {
        double total = p.probs[i][0] + p.probs[i][1];
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.labels[i] == (p.probs[i][1] > p.probs[i][0] ? 1 : 0));
        if (p.labels[i] == y[i]) correct++;
    }
    CHECK(correct >= n * 95 / 100);
}

TEST_CASE("categorical predictors are one-hot expanded") {
    Rng rng(707);
    int n = 240;
    std::vector<int> g(n), y(n);
    for (int i = 0; i < n; ++i) {
        g[i] = static_cast<int>(rng.uniform_int(3));
        y[i] = g[i] == 1 ? 1 : 0;
    }
    Dataset d({categorical_column("g", g, {"a", "b", "c"}),
               categorical_column("y", y, {"no", "yes"})});
    ForestSpec spec;
    spec.feature_rule = ForestSpec::FeatureRule::All;
    Forest f = Forest::train(d, 1, {0}, spec);
    Prediction p = f.predict(d);
    for (int i = 0; i < n; ++i) CHECK(p.labels[i] == y[i]);
}

TEST_CASE("constant target yields a degenerate forest") {
    Dataset d({continuous_column("x", {1, 2, 3, 4}), continuous_column("y", {7, 7, 7, 7})});
    Forest f = Forest::train(d, 1, {0}, {});
    CHECK(f.degenerate());
    Prediction p = f.predict(d);
    for (double v : p.values) CHECK(v == 7.0);
}

TEST_CASE("json round trip preserves predictions exactly") {
    Rng rng(708);
    int n = 100;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = 2.0 * x[i] + rng.normal();
    }
    Dataset d = xy_dataset(x, y);
    Forest f = Forest::train(d, 1, {0}, {});
    Forest g = Forest::from_json(f.to_json());
    Prediction pf = f.predict(d), pg = g.predict(d);
    CHECK(pf.values == pg.values);
    CHECK(g.target_name() == "y");
}

TEST_CASE("train input validation") {
    Dataset d = xy_dataset({1, 2, 3}, {1, 2, 3});
    CHECK_THROWS_AS(Forest::train(d, 5, {0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Forest::train(d, 1, {1}, {}), std::invalid_argument);
    ForestSpec bad;
    bad.n_trees = 0;
    CHECK_THROWS_AS(Forest::train(d, 1, {0}, bad), std::invalid_argument);
    bad.n_trees = 10;
    bad.min_leaf = 0;
    CHECK_THROWS_AS(Forest::train(d, 1, {0}, bad), std::invalid_argument);
}

TEST_CASE("fold plans partition rows evenly") {
    FoldPlan plan = make_folds(23, 5, 11);
    CHECK(plan.k == 5);
    std::vector<int> sizes(5, 0);
    for (int f : plan.assignment) sizes[f]++;
    CHECK(*std::max_element(sizes.begin(), sizes.end()) -
              *std::min_element(sizes.begin(), sizes.end()) <=
          1);
    for (int f = 0; f < 5; ++f) {
        auto train = plan.train_rows(f);
        auto test = plan.test_rows(f);
        CHECK(static_cast<int>(train.size() + test.size()) == 23);
        for (int r : test) CHECK(plan.assignment[r] == f);
    }
    CHECK(make_folds(23, 5, 11).assignment == plan.assignment);
    CHECK(make_folds(23, 5, 12).assignment != plan.assignment);
    CHECK_THROWS_AS(make_folds(10, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_folds(3, 5, 0), std::invalid_argument);
}

TEST_CASE("stratified folds balance every class") {
    Rng rng(709);
    int n = 83;
    std::vector<int> y(n);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        y[i] = i < 60 ? 0 : (i < 75 ? 1 : 2);
        x[i] = rng.normal();
    }
    Dataset d({continuous_column("x", x), categorical_column("y", y, {"a", "b", "c"})});
    FoldPlan plan = make_folds(d, 1, 4, 21);
    for (int cls = 0; cls < 3; ++cls) {
        std::vector<int> counts(4, 0);
        for (int i = 0; i < n; ++i)
            if (y[i] == cls) counts[plan.assignment[i]]++;
        CHECK(*std::max_element(counts.begin(), counts.end()) -
                  *std::min_element(counts.begin(), counts.end()) <=
              1);
    }
    std::vector<int> sizes(4, 0);
    for (int f : plan.assignment) sizes[f]++;
    CHECK(*std::max_element(sizes.begin(), sizes.end()) -
              *std::min_element(sizes.begin(), sizes.end()) <=
          1);
}

} // TEST_SUITE
