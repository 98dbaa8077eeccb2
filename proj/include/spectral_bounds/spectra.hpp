#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "spectral_bounds/error.hpp"
#include "spectral_bounds/geometry.hpp"
#include "spectral_bounds/problem.hpp"

namespace spectral_bounds::spectra {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct OperatorKind {
    enum class Kind { dirichlet_laplacian, clamped_bilaplacian, quadratic };

    Kind kind = Kind::dirichlet_laplacian;
    double a = 0.0;

    static OperatorKind laplacian() { return {Kind::dirichlet_laplacian, 0.0}; }
    static OperatorKind bilaplacian() { return {Kind::clamped_bilaplacian, 0.0}; }
    static OperatorKind quadratic(double a)
    {
        detail::require(a >= 0.0 && std::isfinite(a), ErrorKind::invalid_argument, "quadratic needs a >= 0");
        return {Kind::quadratic, a};
    }

    std::string name() const
    {
        switch (kind) {
        case Kind::dirichlet_laplacian: return "dirichlet_laplacian";
        case Kind::clamped_bilaplacian: return "clamped_bilaplacian";
        case Kind::quadratic: return "quadratic";
        }
        return "unknown";
    }

    /// The matching bound-side problem description on the given domain.
    ProblemSpec problem(const geometry::Domain& d) const
    {
        switch (kind) {
        case Kind::dirichlet_laplacian: return ProblemSpec::poly(d, 1);
        case Kind::clamped_bilaplacian: return ProblemSpec::poly(d, 2);
        case Kind::quadratic: return ProblemSpec::quadratic(d, a);
        }
        throw Error(ErrorKind::invalid_argument, "unknown operator");
    }
};

struct Provenance {
    enum class Source { analytic, fd };

    Source source = Source::analytic;
    std::vector<int> grids;                          ///< intervals per side, coarse to fine
    std::vector<double> h;                           ///< mesh width along the first axis
    bool extrapolated = false;
    std::vector<std::optional<double>> observed_order; ///< per eigenvalue, needs >= 3 grids
    std::vector<std::size_t> flagged;                  ///< indices with suspicious convergence
};

class SpectrumTable {
public:
    SpectrumTable(OperatorKind op, geometry::Domain domain, std::vector<double> eigenvalues, Provenance provenance)
        : op_(op), domain_(std::move(domain)), eigenvalues_(std::move(eigenvalues)), provenance_(std::move(provenance))
    {
        detail::require(!eigenvalues_.empty(), ErrorKind::invalid_argument, "spectrum table is empty");
        double sum = 0.0;
        for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
            detail::require(eigenvalues_[i] > 0.0, ErrorKind::numerical_breakdown, "eigenvalue is not positive");
            detail::require(i == 0 || eigenvalues_[i] >= eigenvalues_[i - 1], ErrorKind::invalid_argument,
                            "eigenvalues are not ascending");
            sum += eigenvalues_[i];
            means_.push_back(sum / static_cast<double>(i + 1));
        }
    }

    const OperatorKind& op() const { return op_; }
    const geometry::Domain& domain() const { return domain_; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    const std::vector<double>& cumulative_means() const { return means_; }
    const Provenance& provenance() const { return provenance_; }
    std::size_t count() const { return eigenvalues_.size(); }

    /// (1/k) sum_{j<=k} lambda_j, k is 1-based.
    double cumulative_mean(std::size_t k) const { return means_.at(k - 1); }

private:
    OperatorKind op_;
    geometry::Domain domain_;
    std::vector<double> eigenvalues_;
    std::vector<double> means_;
    Provenance provenance_;
};

/// Smallest `count` Dirichlet-Laplacian eigenvalues of a box,
/// pi^2 sum_i (p_i / s_i)^2 with p_i >= 1, multiplicities kept.
inline std::vector<double> box_laplacian_eigenvalues(const std::vector<double>& sides, std::size_t count)
{
    detail::require(!sides.empty(), ErrorKind::invalid_argument, "box needs sides");
    detail::require(count >= 1, ErrorKind::invalid_argument, "count must be >= 1");
    for (double s : sides) detail::require(s > 0.0, ErrorKind::invalid_argument, "sides must be positive");

    const int n = static_cast<int>(sides.size());
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double volume = 1.0;
    double lambda_min = 0.0;
    for (double s : sides) {
        volume *= s;
        lambda_min += pi2 / (s * s);
    }

    struct Entry {
        double value;
        std::vector<int> index;
    };

    auto collect = [&](double cutoff, std::vector<Entry>* out) {
        std::size_t found = 0;
        std::vector<int> idx(static_cast<std::size_t>(n), 1);
        // depth-first over p_1..p_n with the partial sum pruned against cutoff;
        // p_i <= s_i sqrt(cutoff) / pi makes the enumeration exhaustive
        std::function<void(int, double)> walk = [&](int axis, double partial) {
            if (axis == n) {
                ++found;
                if (out) out->push_back({partial, idx});
                return;
            }
            double rest = 0.0;
            for (int j = axis + 1; j < n; ++j) rest += pi2 / (sides[j] * sides[j]);
            for (int p = 1;; ++p) {
                const double term = pi2 * p * p / (sides[axis] * sides[axis]);
                if (partial + term + rest > cutoff) break;
                idx[static_cast<std::size_t>(axis)] = p;
                walk(axis + 1, partial + term);
            }
        };
        walk(0, 0.0);
        return found;
    };

    // Weyl count estimate to seed the cutoff, doubled until enough lattice points fit.
    const double omega = geometry::unit_ball_volume(n);
    double cutoff = std::max(lambda_min, std::pow((2.0 * count + 8.0) * std::pow(2.0 * std::numbers::pi, n) /
                                                      (omega * volume),
                                                  2.0 / n));
    while (collect(cutoff, nullptr) < count) cutoff *= 2.0;

    std::vector<Entry> entries;
    collect(cutoff, &entries);
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.value != y.value) return x.value < y.value;
        return x.index < y.index;
    });
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(entries[i].value);
    return out;
}

inline SpectrumTable box_laplacian(const geometry::Domain& domain, std::size_t count)
{
    const auto* box = domain.as_box();
    detail::require(box != nullptr, ErrorKind::not_applicable, "analytic spectrum is available for boxes only");
    return SpectrumTable(OperatorKind::laplacian(), domain, box_laplacian_eigenvalues(box->sides, count), {});
}

inline SpectrumTable rectangle_laplacian(double a_side, double b_side, std::size_t count)
{
    return box_laplacian(geometry::Domain::box({a_side, b_side}), count);
}

/// Finite-difference matrix on the interior nodes of a 2-D box split into
/// `grid` intervals per side. Laplacian: 5-point stencil with Dirichlet
/// elimination. Bilaplacian: 13-point stencil, u = 0 on the boundary and the
/// clamped condition through the ghost reflection u_{-1} = u_1.
/// Quadratic: bilaplacian + a * Laplacian.
inline SparseMatrix fd_matrix(const geometry::Domain& domain, int grid, const OperatorKind& op)
{
    const auto* box = domain.as_box();
    detail::require(box != nullptr && box->sides.size() == 2, ErrorKind::not_applicable,
                    "finite differences are implemented for 2-D boxes only");
    detail::require(grid >= 16, ErrorKind::invalid_argument, "grid must have at least 16 intervals per side");

    const int m = grid - 1; // interior nodes per direction
    const double hx = box->sides[0] / grid;
    const double hy = box->sides[1] / grid;
    const auto index = [m](int i, int j) { return i + m * j; }; // i, j in [0, m)

    std::vector<Eigen::Triplet<double>> triplets;
    const auto add = [&](int i, int j, int di, int dj, double v) {
        const int ii = i + di;
        const int jj = j + dj;
        if (ii < 0 || jj < 0 || ii >= m || jj >= m) return; // boundary node, u = 0
        triplets.emplace_back(index(i, j), index(ii, jj), v);
    };

    const bool has_laplacian =
        op.kind == OperatorKind::Kind::dirichlet_laplacian || (op.kind == OperatorKind::Kind::quadratic && op.a != 0.0);
    const bool has_bilaplacian = op.kind != OperatorKind::Kind::dirichlet_laplacian;
    const double lap_scale = op.kind == OperatorKind::Kind::quadratic ? op.a : 1.0;

    const double ix2 = 1.0 / (hx * hx);
    const double iy2 = 1.0 / (hy * hy);
    triplets.reserve(static_cast<std::size_t>(m) * m * (has_bilaplacian ? 13 : 5));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            double center = 0.0;
            if (has_laplacian) {
                center += lap_scale * 2.0 * (ix2 + iy2);
                add(i, j, -1, 0, -lap_scale * ix2);
                add(i, j, 1, 0, -lap_scale * ix2);
                add(i, j, 0, -1, -lap_scale * iy2);
                add(i, j, 0, 1, -lap_scale * iy2);
            }
            if (has_bilaplacian) {
                const double x4 = ix2 * ix2;
                const double y4 = iy2 * iy2;
                const double xy = ix2 * iy2;
                center += 6.0 * x4 + 6.0 * y4 + 8.0 * xy;
                // ghost node two steps out mirrors onto this node
                if (i == 0) center += x4;
                if (i == m - 1) center += x4;
                if (j == 0) center += y4;
                if (j == m - 1) center += y4;
                add(i, j, -1, 0, -4.0 * x4 - 4.0 * xy);
                add(i, j, 1, 0, -4.0 * x4 - 4.0 * xy);
                add(i, j, 0, -1, -4.0 * y4 - 4.0 * xy);
                add(i, j, 0, 1, -4.0 * y4 - 4.0 * xy);
                add(i, j, -2, 0, x4);
                add(i, j, 2, 0, x4);
                add(i, j, 0, -2, y4);
                add(i, j, 0, 2, y4);
                add(i, j, -1, -1, 2.0 * xy);
                add(i, j, 1, -1, 2.0 * xy);
                add(i, j, -1, 1, 2.0 * xy);
                add(i, j, 1, 1, 2.0 * xy);
            }
            triplets.emplace_back(index(i, j), index(i, j), center);
        }
    }
    SparseMatrix a(m * m, m * m);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();
    return a;
}

enum class EigenPath { automatic, dense, iterative };

struct EigenOptions {
    EigenPath path = EigenPath::automatic;
    Eigen::Index dense_limit = 4096;
    int block_size = 6;
    double residual_tol = 1e-9;  ///< on ||A^{-1}x - theta x||, relative to the largest theta
    double stagnation_tol = 1e-7; ///< accepted once progress stops
    std::uint64_t seed = 20240601;
};

namespace detail {

using spectral_bounds::detail::require;

// Orthogonalize the columns of x against basis[:, :m] (twice) and among
// themselves. Columns that collapse are replaced by random directions.
template <class Rng>
void orthonormalize_block(const Eigen::MatrixXd& basis, Eigen::Index m, Eigen::MatrixXd& x, Rng& rng)
{
    std::normal_distribution<double> normal;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            auto col = x.col(c);
            const double before = col.norm();
            for (int pass = 0; pass < 2; ++pass) {
                if (m > 0) col -= basis.leftCols(m) * (basis.leftCols(m).transpose() * col);
                if (c > 0) col -= x.leftCols(c) * (x.leftCols(c).transpose() * col);
            }
            const double after = col.norm();
            if (after > 1e-10 * before && after > 0.0) {
                col /= after;
                break;
            }
            for (Eigen::Index r = 0; r < col.size(); ++r) col(r) = normal(rng);
            spectral_bounds::detail::require(attempt < 3, ErrorKind::numerical_breakdown,
                                             "could not extend the Krylov basis");
        }
    }
}

/// Smallest eigenvalues of an SPD matrix: block Krylov on A^{-1} through a
/// sparse LDL^T factorization, Rayleigh-Ritz with full reorthogonalization
/// and thick restarts.
inline std::vector<double> shift_invert_smallest(const SparseMatrix& a, std::size_t count, const EigenOptions& opt)
{
    const Eigen::Index n = a.rows();
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
    spectral_bounds::detail::require(ldlt.info() == Eigen::Success, ErrorKind::numerical_breakdown,
                                     "sparse factorization failed");
    spectral_bounds::detail::require(ldlt.vectorD().minCoeff() > 0.0, ErrorKind::numerical_breakdown,
                                     "matrix is not positive definite");

    const auto want = static_cast<Eigen::Index>(count);
    const Eigen::Index b = std::min<Eigen::Index>(opt.block_size, n);
    const Eigen::Index max_dim = std::min<Eigen::Index>(n, std::max(3 * want + 2 * b, want + 8 * b));
    const Eigen::Index keep = std::min<Eigen::Index>(max_dim - b, want + b);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd q(n, max_dim);
    Eigen::MatrixXd w(n, max_dim);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(max_dim, max_dim);

    Eigen::MatrixXd block(n, b);
    for (Eigen::Index i = 0; i < block.size(); ++i) block.data()[i] = normal(rng);
    Eigen::Index m = 0;
    orthonormalize_block(q, m, block, rng);

    double best_residual = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int iteration = 0; iteration < 1000; ++iteration) {
        const Eigen::Index bk = block.cols();
        q.middleCols(m, bk) = block;
        for (Eigen::Index c = 0; c < bk; ++c) w.col(m + c) = ldlt.solve(block.col(c));
        const Eigen::Index m_new = m + bk;
        h.block(0, m, m_new, bk) = q.leftCols(m_new).transpose() * w.middleCols(m, bk);
        h.block(m, 0, bk, m_new) = h.block(0, m, m_new, bk).transpose().eval();
        m = m_new;

        Eigen::MatrixXd hs = 0.5 * (h.topLeftCorner(m, m) + h.topLeftCorner(m, m).transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hs);
        // largest Ritz values of A^{-1} <-> smallest eigenvalues of A
        const Eigen::Index avail = std::min(want, m);
        Eigen::MatrixXd s = es.eigenvectors().rightCols(avail).rowwise().reverse();
        Eigen::VectorXd theta = es.eigenvalues().tail(avail).reverse();

        if (m >= want) {
            Eigen::MatrixXd ritz = q.leftCols(m) * s;
            Eigen::MatrixXd residuals = w.leftCols(m) * s - ritz * theta.asDiagonal();
            double worst = 0.0;
            for (Eigen::Index c = 0; c < avail; ++c) worst = std::max(worst, residuals.col(c).norm());
            const double rel = worst / theta(0);
            if (rel < 0.5 * best_residual) {
                best_residual = rel;
                stalled = 0;
            } else {
                ++stalled;
            }
            const bool stagnated = stalled >= 30 && best_residual <= opt.stagnation_tol;
            if (rel <= opt.residual_tol || stagnated || m == n) {
                std::vector<double> out;
                for (Eigen::Index c = 0; c < avail; ++c) out.push_back(1.0 / theta(c));
                std::sort(out.begin(), out.end());
                return out;
            }
        }

        if (m + b > max_dim) {
            // thick restart: keep the leading Ritz pairs. Every Ritz residual lies in
            // the span of A^{-1} applied to the last block, so continue from there.
            const Eigen::Index kk = std::min(keep, m);
            Eigen::MatrixXd sk = es.eigenvectors().rightCols(kk).rowwise().reverse();
            // project out the whole current basis first, or the kept block picks up
            // the discarded directions instead of the residuals
            Eigen::MatrixXd next = w.middleCols(m - bk, bk);
            for (int pass = 0; pass < 2; ++pass) next -= q.leftCols(m) * (q.leftCols(m).transpose() * next);
            Eigen::MatrixXd qk = q.leftCols(m) * sk;
            Eigen::MatrixXd wk = w.leftCols(m) * sk;
            q.leftCols(kk) = qk;
            w.leftCols(kk) = wk;
            h.setZero();
            h.topLeftCorner(kk, kk) = q.leftCols(kk).transpose() * w.leftCols(kk);
            m = kk;
            block = next.leftCols(std::min<Eigen::Index>(bk, max_dim - m));
        } else {
            block = w.middleCols(m - bk, bk);
            if (m + bk > max_dim) block = block.leftCols(max_dim - m).eval();
        }
        orthonormalize_block(q, m, block, rng);
    }
    std::ostringstream msg;
    msg << "eigensolver did not converge (best relative residual " << std::scientific << best_residual << ")";
    throw Error(ErrorKind::numerical_breakdown, msg.str());
}

inline std::vector<double> dense_smallest(const SparseMatrix& a, std::size_t count)
{
    Eigen::MatrixXd dense(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
    spectral_bounds::detail::require(es.info() == Eigen::Success, ErrorKind::numerical_breakdown,
                                     "dense eigensolver failed");
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + count);
    return out;
}

} // namespace detail

/// Smallest `count` eigenvalues of a symmetric positive definite matrix, ascending.
/// Dense solve up to order opt.dense_limit, shift-invert block Krylov above.
inline std::vector<double> smallest_eigs(const SparseMatrix& a, std::size_t count, const EigenOptions& opt = {})
{
    detail::require(a.rows() == a.cols(), ErrorKind::invalid_argument, "matrix must be square");
    detail::require(count >= 1 && static_cast<Eigen::Index>(count) <= a.rows(), ErrorKind::invalid_argument,
                    "count must be between 1 and the matrix order");
    const bool dense = opt.path == EigenPath::dense ||
                       (opt.path == EigenPath::automatic && a.rows() <= opt.dense_limit);
    if (dense) {
        auto values = detail::dense_smallest(a, count);
        detail::require(values.front() > 0.0, ErrorKind::numerical_breakdown, "matrix is not positive definite");
        return values;
    }
    return detail::shift_invert_smallest(a, count, opt);
}

/// Single-grid finite-difference table.
inline SpectrumTable fd_spectrum(const geometry::Domain& domain, const OperatorKind& op, int grid, std::size_t count,
                                 const EigenOptions& opt = {})
{
    Provenance prov;
    prov.source = Provenance::Source::fd;
    prov.grids = {grid};
    prov.h = {domain.as_box() ? domain.as_box()->sides[0] / grid : 0.0};
    return SpectrumTable(op, domain, smallest_eigs(fd_matrix(domain, grid, op), count, opt), std::move(prov));
}

/// Per-eigenvalue Richardson extrapolation over geometrically refined grids,
/// assuming O(h^2) stencil error. With three or more grids the observed order
/// is estimated and entries outside [1.5, 2.5] or with non-monotone
/// convergence are flagged (not fatal).
inline SpectrumTable extrapolated_spectrum(const geometry::Domain& domain, const OperatorKind& op,
                                           std::vector<int> grids, std::size_t count, const EigenOptions& opt = {})
{
    detail::require(grids.size() >= 2, ErrorKind::invalid_argument, "extrapolation needs at least two grids");
    for (std::size_t g = 1; g < grids.size(); ++g) {
        detail::require(grids[g] > grids[g - 1], ErrorKind::invalid_argument, "grids must be strictly refining");
    }
    const double ratio = static_cast<double>(grids[1]) / grids[0];
    for (std::size_t g = 2; g < grids.size(); ++g) {
        detail::require(std::abs(static_cast<double>(grids[g]) / grids[g - 1] - ratio) <= 1e-12 * ratio,
                        ErrorKind::invalid_argument, "grids must be geometrically refined");
    }

    std::vector<std::vector<double>> levels;
    for (int g : grids) levels.push_back(smallest_eigs(fd_matrix(domain, g, op), count, opt));

    Provenance prov;
    prov.source = Provenance::Source::fd;
    prov.grids = grids;
    for (int g : grids) prov.h.push_back(domain.as_box()->sides[0] / g);
    prov.extrapolated = true;

    const std::size_t last = levels.size() - 1;
    const double r2 = ratio * ratio;
    std::vector<double> values(count);
    prov.observed_order.assign(count, std::nullopt);
    for (std::size_t i = 0; i < count; ++i) {
        const double fine = levels[last][i];
        const double coarse = levels[last - 1][i];
        values[i] = fine + (fine - coarse) / (r2 - 1.0);
        if (levels.size() >= 3) {
            const double d_coarse = levels[last - 1][i] - levels[last - 2][i];
            const double d_fine = fine - coarse;
            const bool monotone = d_coarse * d_fine > 0.0;
            std::optional<double> order;
            if (monotone) order = std::log(d_coarse / d_fine) / std::log(ratio);
            prov.observed_order[i] = order;
            if (!monotone || *order < 1.5 || *order > 2.5) prov.flagged.push_back(i);
        }
    }
    // extrapolation may break ties unevenly; the table stores an ascending list
    std::sort(values.begin(), values.end());
    return SpectrumTable(op, domain, std::move(values), std::move(prov));
}

struct VerificationRow {
    InequalityId id = InequalityId::li_yau;
    std::size_t k = 1;
    double mean = 0.0;
    double bound = 0.0;
    double margin = 0.0; ///< mean - bound * (1 - slack)
    bool passed = true;
};

struct VerificationReport {
    double slack = 0.0;
    std::vector<VerificationRow> rows;
    std::vector<VerificationRow> violations;
    std::size_t skipped_uncertified = 0;
    std::size_t skipped_out_of_range = 0;
    /// per k (1-based, index k-1): id of the largest certified bound checked at k
    std::vector<std::optional<InequalityId>> tightest;

    bool passed() const { return violations.empty(); }
};

/// Checks cumulative_mean(k) >= bound(k) (1 - slack) for every certified bound
/// whose k is covered by the table. Asymptotic (uncertified) results are skipped.
inline VerificationReport verify(const SpectrumTable& table, const std::vector<BoundResult>& bound_results,
                                 double slack)
{
    detail::require(slack >= 0.0 && slack < 1.0, ErrorKind::invalid_argument, "slack must be in [0, 1)");
    VerificationReport report;
    report.slack = slack;
    report.tightest.assign(table.count(), std::nullopt);
    std::vector<double> tightest_value(table.count(), -std::numeric_limits<double>::infinity());
    for (const auto& b : bound_results) {
        if (!b.certified) {
            ++report.skipped_uncertified;
            continue;
        }
        const auto k = static_cast<std::size_t>(std::llround(b.k));
        if (k < 1 || k > table.count() || static_cast<double>(k) != b.k) {
            ++report.skipped_out_of_range;
            continue;
        }
        VerificationRow row;
        row.id = b.id;
        row.k = k;
        row.mean = table.cumulative_mean(k);
        row.bound = b.value;
        row.margin = row.mean - b.value * (1.0 - slack);
        row.passed = row.margin >= 0.0;
        if (!row.passed) report.violations.push_back(row);
        if (b.value > tightest_value[k - 1]) {
            tightest_value[k - 1] = b.value;
            report.tightest[k - 1] = b.id;
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace spectral_bounds::spectra
