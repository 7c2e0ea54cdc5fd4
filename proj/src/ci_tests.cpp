#include "autocd/ci_tests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace autocd {

namespace {

double normal_two_sided_p(double stat) {
    static const boost::math::normal_distribution<double> norm(0.0, 1.0);
    return 2.0 * boost::math::cdf(boost::math::complement(norm, std::abs(stat)));
}

double chi2_p(double stat, int dof) {
    if (dof <= 0) return 1.0;
    const boost::math::chi_squared_distribution<double> chi2(dof);
    return boost::math::cdf(boost::math::complement(chi2, std::max(0.0, stat)));
}

CiResult degenerate(int n_eff) {
    return CiResult{0.0, 1.0, n_eff, CiResult::Flag::Degenerate};
}

// S is the correlation matrix over [x, y, z...]; n is the row count.
CiResult fisher_z_from_corr(const Eigen::MatrixXd& S, int n) {
    const int k = static_cast<int>(S.rows());
    const int n_eff = n - (k - 2) - 3;
    if (n_eff <= 0) throw std::invalid_argument("fisher_z_test: too few rows");
    if (!S.allFinite()) return degenerate(n_eff);

    double r;
    if (k == 2) {
        r = S(0, 1);
    } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
        if (!lu.isInvertible()) return degenerate(n_eff);
        const Eigen::MatrixXd omega = lu.inverse();
        const double denom = omega(0, 0) * omega(1, 1);
        if (denom <= 0.0) return degenerate(n_eff);
        r = -omega(0, 1) / std::sqrt(denom);
    }
    const double cap = 1.0 - 1e-12;
    r = std::clamp(r, -cap, cap);
    const double stat = 0.5 * std::log((1.0 + r) / (1.0 - r)) * std::sqrt(double(n_eff));
    return CiResult{stat, normal_two_sided_p(stat), n_eff, CiResult::Flag::Ok};
}

Eigen::MatrixXd correlation_submatrix(const Dataset& d, const std::vector<int>& cols) {
    const int k = static_cast<int>(cols.size());
    const int n = d.n_rows();
    Eigen::MatrixXd x(n, k);
    for (int j = 0; j < k; ++j) {
        const Column& c = d.col(cols[j]);
        if (c.type != ColumnType::Continuous)
            throw std::invalid_argument("fisher_z_test requires continuous columns, got " +
                                        c.name);
        for (int r = 0; r < n; ++r) x(r, j) = c.values[r];
    }
    x.rowwise() -= x.colwise().mean();
    Eigen::MatrixXd cov = x.transpose() * x;
    Eigen::VectorXd sd = cov.diagonal().array().sqrt();
    Eigen::MatrixXd corr(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            corr(i, j) = (sd(i) > 0 && sd(j) > 0)
                             ? cov(i, j) / (sd(i) * sd(j))
                             : std::numeric_limits<double>::quiet_NaN();
    return corr;
}

} // namespace

CiResult fisher_z_test(const Dataset& d, int x, int y, const std::vector<int>& z) {
    std::vector<int> cols{x, y};
    cols.insert(cols.end(), z.begin(), z.end());
    const int n_eff = d.n_rows() - static_cast<int>(z.size()) - 3;
    if (n_eff <= 0) throw std::invalid_argument("fisher_z_test: too few rows");
    return fisher_z_from_corr(correlation_submatrix(d, cols), d.n_rows());
}

CiResult g_squared_test(const Dataset& d, int x, int y, const std::vector<int>& z) {
    const Column& cx = d.col(x);
    const Column& cy = d.col(y);
    if (cx.type != ColumnType::Categorical || cy.type != ColumnType::Categorical)
        throw std::invalid_argument("g_squared_test requires categorical columns");
    for (int zi : z)
        if (d.col(zi).type != ColumnType::Categorical)
            throw std::invalid_argument("g_squared_test requires categorical columns");

    const int n = d.n_rows();
    const int lx = cx.n_levels(), ly = cy.n_levels();

    // stratum id: mixed-radix code over the z columns
    std::map<long long, std::vector<int>> strata;
    for (int r = 0; r < n; ++r) {
        long long code = 0;
        for (int zi : z) {
            const Column& cz = d.col(zi);
            code = code * cz.n_levels() + cz.codes[r];
        }
        auto& table = strata[code];
        if (table.empty()) table.assign(static_cast<size_t>(lx) * ly, 0);
        ++table[static_cast<size_t>(cx.codes[r]) * ly + cy.codes[r]];
    }

    double g2 = 0.0;
    int dof = 0;
    for (const auto& [code, table] : strata) {
        std::vector<double> row(lx, 0.0), col(ly, 0.0);
        double total = 0.0;
        for (int i = 0; i < lx; ++i)
            for (int j = 0; j < ly; ++j) {
                const double o = table[static_cast<size_t>(i) * ly + j];
                row[i] += o;
                col[j] += o;
                total += o;
            }
        int nz_rows = 0, nz_cols = 0;
        for (int i = 0; i < lx; ++i) nz_rows += row[i] > 0;
        for (int j = 0; j < ly; ++j) nz_cols += col[j] > 0;
        dof += std::max(0, nz_rows - 1) * std::max(0, nz_cols - 1);
        for (int i = 0; i < lx; ++i)
            for (int j = 0; j < ly; ++j) {
                const double o = table[static_cast<size_t>(i) * ly + j];
                if (o > 0) g2 += 2.0 * o * std::log(o * total / (row[i] * col[j]));
            }
    }

    if (dof <= 0) return degenerate(0);
    if (n < 10 * dof) return CiResult{g2, 1.0, dof, CiResult::Flag::LowPower};
    return CiResult{g2, chi2_p(g2, dof), dof, CiResult::Flag::Ok};
}

namespace {

// One-hot expansion (levels minus one per categorical column) appended to an
// intercept column.
Eigen::MatrixXd design_matrix(const Dataset& d, const std::vector<int>& cols) {
    const int n = d.n_rows();
    int width = 1;
    for (int c : cols) {
        const Column& col = d.col(c);
        width += col.type == ColumnType::Continuous ? 1 : std::max(1, col.n_levels() - 1);
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, width);
    a.col(0).setOnes();
    int at = 1;
    for (int c : cols) {
        const Column& col = d.col(c);
        if (col.type == ColumnType::Continuous) {
            for (int r = 0; r < n; ++r) a(r, at) = col.values[r];
            ++at;
        } else {
            const int k = std::max(1, col.n_levels() - 1);
            for (int r = 0; r < n; ++r)
                if (col.codes[r] < k) a(r, at + col.codes[r]) = 1.0;
            at += k;
        }
    }
    return a;
}

struct OlsFit {
    double rss = 0.0;
    int rank = 0;
};

OlsFit ols_fit(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::VectorXd beta = qr.solve(y);
    const double rss = (y - a * beta).squaredNorm();
    return OlsFit{rss, static_cast<int>(qr.rank())};
}

struct LogitFit {
    double ll = 0.0;
    bool ok = false;
};

// Multinomial logistic log-likelihood via Newton iterations; the last class
// is the reference. y holds codes 0..k-1 with every class present.
LogitFit multinomial_loglik(const Eigen::MatrixXd& a, const std::vector<int>& y, int k) {
    const int n = static_cast<int>(a.rows());
    const int p = static_cast<int>(a.cols());
    const int m = k - 1;
    if (m == 0) return LogitFit{0.0, true};

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p * m);
    Eigen::MatrixXd eta(n, m), prob(n, m);
    auto loglik = [&](const Eigen::VectorXd& b) {
        for (int j = 0; j < m; ++j) eta.col(j) = a * b.segment(j * p, p);
        double ll = 0.0;
        for (int r = 0; r < n; ++r) {
            double mx = 0.0;
            for (int j = 0; j < m; ++j) mx = std::max(mx, eta(r, j));
            double denom = std::exp(-mx);
            for (int j = 0; j < m; ++j) denom += std::exp(eta(r, j) - mx);
            const double log_denom = mx + std::log(denom);
            for (int j = 0; j < m; ++j) prob(r, j) = std::exp(eta(r, j) - log_denom);
            ll += (y[r] < m ? eta(r, y[r]) : 0.0) - log_denom;
        }
        return ll;
    };

    double ll = loglik(beta);
    for (int iter = 0; iter < 100; ++iter) {
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(p * m);
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(p * m, p * m);
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd resid = -prob.col(j);
            for (int r = 0; r < n; ++r)
                if (y[r] == j) resid(r) += 1.0;
            grad.segment(j * p, p) = a.transpose() * resid;
            for (int l = j; l < m; ++l) {
                Eigen::VectorXd w(n);
                for (int r = 0; r < n; ++r)
                    w(r) = prob(r, j) * ((j == l ? 1.0 : 0.0) - prob(r, l));
                const Eigen::MatrixXd block = a.transpose() * w.asDiagonal() * a;
                hess.block(j * p, l * p, p, p) = block;
                if (l != j) hess.block(l * p, j * p, p, p) = block;
            }
        }
        hess += 1e-8 * Eigen::MatrixXd::Identity(p * m, p * m);
        const Eigen::VectorXd step = hess.ldlt().solve(grad);
        if (!step.allFinite()) return LogitFit{ll, false};

        double scale = 1.0;
        double new_ll = ll;
        Eigen::VectorXd cand = beta;
        for (int half = 0; half < 30; ++half) {
            cand = beta + scale * step;
            new_ll = loglik(cand);
            if (std::isfinite(new_ll) && new_ll >= ll - 1e-12) break;
            scale *= 0.5;
        }
        if (!std::isfinite(new_ll)) return LogitFit{ll, false};
        beta = cand;
        const double gain = new_ll - ll;
        ll = new_ll;
        if (beta.cwiseAbs().maxCoeff() > 30.0) return LogitFit{ll, false}; // separation
        if (gain < 1e-10 * (1.0 + std::abs(ll))) break;
    }
    return LogitFit{ll, true};
}

// Remaps codes so every class observed in y is present as 0..k-1.
std::vector<int> compact_codes(const std::vector<int>& codes, int levels, int& k_out) {
    std::vector<int> remap(levels, -1);
    int k = 0;
    std::vector<int> out(codes.size());
    for (size_t i = 0; i < codes.size(); ++i) {
        if (remap[codes[i]] < 0) remap[codes[i]] = k++;
        out[i] = remap[codes[i]];
    }
    k_out = k;
    return out;
}

// LRT of y ~ z vs y ~ z + x.
CiResult lr_direction(const Dataset& d, int y, int x, const std::vector<int>& z) {
    const int n = d.n_rows();
    std::vector<int> with_x = z;
    with_x.push_back(x);
    const Eigen::MatrixXd a0 = design_matrix(d, z);
    const Eigen::MatrixXd a1 = design_matrix(d, with_x);
    if (n <= static_cast<int>(a1.cols()) + 1)
        return CiResult{0.0, 1.0, 0, CiResult::Flag::LowPower};

    const Column& cy = d.col(y);
    if (cy.type == ColumnType::Continuous) {
        Eigen::VectorXd yv(n);
        for (int r = 0; r < n; ++r) yv(r) = cy.values[r];
        const OlsFit f0 = ols_fit(a0, yv);
        const OlsFit f1 = ols_fit(a1, yv);
        const int dof = f1.rank - f0.rank;
        if (dof <= 0) return degenerate(0);
        const double rss0 = std::max(f0.rss, 1e-300);
        const double rss1 = std::max(f1.rss, 1e-300);
        const double stat = std::max(0.0, n * std::log(rss0 / rss1));
        return CiResult{stat, chi2_p(stat, dof), dof, CiResult::Flag::Ok};
    }

    int k = 0;
    const std::vector<int> codes = compact_codes(cy.codes, cy.n_levels(), k);
    if (k < 2) return degenerate(0);
    const LogitFit f0 = multinomial_loglik(a0, codes, k);
    const LogitFit f1 = multinomial_loglik(a1, codes, k);
    if (!f0.ok || !f1.ok) return degenerate(0);
    const int dof = (k - 1) * static_cast<int>(a1.cols() - a0.cols());
    if (dof <= 0) return degenerate(0);
    const double stat = std::max(0.0, 2.0 * (f1.ll - f0.ll));
    return CiResult{stat, chi2_p(stat, dof), dof, CiResult::Flag::Ok};
}

} // namespace

CiResult regression_ci_test(const Dataset& d, int x, int y, const std::vector<int>& z) {
    const CiResult forward = lr_direction(d, y, x, z);
    const CiResult backward = lr_direction(d, x, y, z);
    return backward.p_value > forward.p_value ? backward : forward;
}

std::string to_string(CiKind k) {
    switch (k) {
        case CiKind::Auto: return "auto";
        case CiKind::FisherZ: return "fisher_z";
        case CiKind::GSquared: return "g_squared";
        default: return "regression_ci";
    }
}

CiKind ci_kind_from_string(const std::string& s) {
    if (s == "auto") return CiKind::Auto;
    if (s == "fisher_z") return CiKind::FisherZ;
    if (s == "g_squared") return CiKind::GSquared;
    if (s == "regression_ci") return CiKind::RegressionCi;
    throw std::invalid_argument("unknown ci test: " + s);
}

CiTester::CiTester(const Dataset& d, CiKind kind) : d_(&d), kind_(kind) {}

const Eigen::MatrixXd& CiTester::correlation() {
    if (corr_ready_) return corr_;
    std::vector<int> cont;
    cont_pos_.assign(d_->n_cols(), -1);
    for (int c = 0; c < d_->n_cols(); ++c)
        if (d_->col(c).type == ColumnType::Continuous) {
            cont_pos_[c] = static_cast<int>(cont.size());
            cont.push_back(c);
        }
    corr_ = correlation_submatrix(*d_, cont);
    corr_ready_ = true;
    return corr_;
}

CiResult CiTester::test(int x, int y, const std::vector<int>& z) {
    auto continuous = [this](int c) { return d_->col(c).type == ColumnType::Continuous; };
    CiKind kind = kind_;
    if (kind == CiKind::Auto) {
        bool all_cont = continuous(x) && continuous(y);
        bool all_cat = !continuous(x) && !continuous(y);
        for (int c : z) {
            all_cont = all_cont && continuous(c);
            all_cat = all_cat && !continuous(c);
        }
        kind = all_cont ? CiKind::FisherZ : (all_cat ? CiKind::GSquared : CiKind::RegressionCi);
    }
    if (kind == CiKind::GSquared) return g_squared_test(*d_, x, y, z);
    if (kind == CiKind::RegressionCi) return regression_ci_test(*d_, x, y, z);

    const Eigen::MatrixXd& corr = correlation();
    std::vector<int> cols{x, y};
    cols.insert(cols.end(), z.begin(), z.end());
    const int k = static_cast<int>(cols.size());
    Eigen::MatrixXd sub(k, k);
    for (int i = 0; i < k; ++i) {
        if (cont_pos_[cols[i]] < 0)
            throw std::invalid_argument("fisher_z_test requires continuous columns, got " +
                                        d_->col(cols[i]).name);
        for (int j = 0; j < k; ++j)
            sub(i, j) = corr(cont_pos_[cols[i]], cont_pos_[cols[j]]);
    }
    return fisher_z_from_corr(sub, d_->n_rows());
}

CiResult SeparationOracle::test(int x, int y, const std::vector<int>& z) {
    const bool sep = is_m_separated(*g_, x, y, z);
    return CiResult{sep ? 0.0 : 1.0, sep ? 1.0 : 0.0, 0, CiResult::Flag::Ok};
}

} // namespace autocd
