#pragma once

// Second-largest adjacency eigenvalue of the implicit graphs. Bipartite
// adjacency eigenvalues come in +/- pairs equal to the singular values of the
// point-by-line biadjacency B, so lambda1 and lambda2 of the adjacency are
// sigma1 and sigma2 of B. Both routes work on the symmetric PSD operator
// M = B*B^T over the point space (dimension q^n) and report sqrt of its
// eigenvalues: a dense decomposition for small instances and a matrix-free
// block subspace iteration that only touches the neighbor oracle.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adg/algorithms.hpp"
#include "adg/errors.hpp"
#include "adg/graph.hpp"

namespace adg {

inline constexpr std::uint64_t kDenseSpectralLimit = 8192;  // max 2q^n for the dense route
inline constexpr double kSpectralSlack = 1e-8;              // tolerance on the 2*sqrt(q) bound
inline constexpr double kComponentSigmaGap = 1e-6;          // "strictly below q" threshold

enum class SpectralMethod { dense, iterative, automatic };

struct SpectralOptions {
    SpectralMethod method = SpectralMethod::automatic;
    bool per_component = false;      // lambda2 = largest sigma strictly below q
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t budget = kDefaultMemBudget;
    double tol = 1e-10;              // residual threshold, relative to max(1, theta1)
    std::size_t max_iter = 500;
    std::size_t block = 4;           // subspace width (grown as needed per component count)
};

struct SpectralReport {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double bound = 0.0;              // 2*sqrt(q)
    double margin = 0.0;             // bound - lambda2
    std::string method;              // "dense" | "iterative"
    double residual = 0.0;           // iterative only
    bool converged = true;
    std::uint64_t iterations = 0;    // iterative only
    bool component_note = false;     // graph is disconnected
    std::uint64_t components = 1;
    bool per_component = false;
    std::uint64_t dim = 0;           // operator dimension q^n
    std::vector<double> top_sigma;   // leading singular values, descending
};

// y = (B B^T) x over the point space; two oracle sweeps per application.
class BBtOperator {
  public:
    explicit BBtOperator(const ImplicitGraph& g) : g_(&g) {}

    std::uint64_t dim() const { return g_->num_points(); }

    // line_scratch must hold dim() doubles; in/out must not alias.
    void apply(const double* in, double* out, double* line_scratch) {
        const std::uint64_t P = g_->num_points();
        for (std::uint64_t i = 0; i < P; ++i) {
            g_->neighbors(P + i, nb_);
            double s = 0.0;
            for (VertexId pid : nb_) s += in[pid];
            line_scratch[i] = s;
        }
        for (std::uint64_t i = 0; i < P; ++i) {
            g_->neighbors(i, nb_);
            double s = 0.0;
            for (VertexId lid : nb_) s += line_scratch[lid - P];
            out[i] = s;
        }
    }

  private:
    const ImplicitGraph* g_;
    std::vector<VertexId> nb_;
};

namespace detail {

// Cyclic Jacobi for a small symmetric matrix (row-major b x b). Eigenvalues
// descending, matching eigenvectors in the columns of V.
inline void jacobi_eigen(std::vector<double> A, std::size_t b, std::vector<double>& evals,
                         std::vector<double>& V) {
    V.assign(b * b, 0.0);
    for (std::size_t i = 0; i < b; ++i) V[i * b + i] = 1.0;
    for (std::size_t sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = i + 1; j < b; ++j) off += A[i * b + j] * A[i * b + j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < b; ++p) {
            for (std::size_t q = p + 1; q < b; ++q) {
                const double apq = A[p * b + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (A[q * b + q] - A[p * b + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < b; ++k) {
                    const double akp = A[k * b + p], akq = A[k * b + q];
                    A[k * b + p] = c * akp - s * akq;
                    A[k * b + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < b; ++k) {
                    const double apk = A[p * b + k], aqk = A[q * b + k];
                    A[p * b + k] = c * apk - s * aqk;
                    A[q * b + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < b; ++k) {
                    const double vkp = V[k * b + p], vkq = V[k * b + q];
                    V[k * b + p] = c * vkp - s * vkq;
                    V[k * b + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    evals.resize(b);
    std::vector<std::size_t> order(b);
    for (std::size_t i = 0; i < b; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return A[x * b + x] > A[y * b + y]; });
    std::vector<double> Vs(b * b);
    for (std::size_t i = 0; i < b; ++i) {
        evals[i] = A[order[i] * b + order[i]];
        for (std::size_t k = 0; k < b; ++k) Vs[k * b + i] = V[k * b + order[i]];
    }
    V.swap(Vs);
}

// Deterministic start vectors: raw 64-bit draws scaled into [-1, 1).
inline double seeded_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

// Modified Gram-Schmidt with a second pass; rank-deficient columns are
// replaced from the deterministic stream and re-reduced.
inline void orthonormalize(std::vector<double>& X, std::uint64_t dim, std::size_t b,
                           std::mt19937_64& rng) {
    auto col = [&](std::size_t j) { return X.data() + j * dim; };
    for (std::size_t j = 0; j < b; ++j) {
        double* xj = col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                const double* xi = col(i);
                double dot = 0.0;
                for (std::uint64_t r = 0; r < dim; ++r) dot += xi[r] * xj[r];
                for (std::uint64_t r = 0; r < dim; ++r) xj[r] -= dot * xi[r];
            }
        }
        double norm = 0.0;
        for (std::uint64_t r = 0; r < dim; ++r) norm += xj[r] * xj[r];
        norm = std::sqrt(norm);
        if (norm < 1e-150) {
            for (std::uint64_t r = 0; r < dim; ++r) xj[r] = seeded_unit(rng);
            --j;  // redo this column against the ones already fixed
            continue;
        }
        const double inv = 1.0 / norm;
        for (std::uint64_t r = 0; r < dim; ++r) xj[r] *= inv;
    }
}

struct IterationResult {
    std::vector<double> theta;  // Ritz values of M, descending
    double residual = 0.0;      // max over tracked pairs, relative to max(1, theta1)
    bool converged = false;
    std::uint64_t iterations = 0;
};

// Block subspace iteration with full reorthogonalization and Rayleigh-Ritz
// extraction; `track` leading pairs must meet the residual tolerance.
inline IterationResult block_subspace_iteration(BBtOperator& op, std::size_t block,
                                                std::size_t track, double tol,
                                                std::size_t max_iter, std::uint64_t seed,
                                                std::uint64_t budget) {
    const std::uint64_t dim = op.dim();
    const std::size_t b = static_cast<std::size_t>(std::min<std::uint64_t>(block, dim));
    track = std::min(track, b);
    require_budget((3 * b + 2) * dim * 8 + 64, budget, "subspace iteration workspace");

    std::mt19937_64 rng(seed);
    std::vector<double> X(dim * b), Y(dim * b), R(dim), scratch(dim);
    for (double& v : X) v = seeded_unit(rng);
    orthonormalize(X, dim, b, rng);

    std::vector<double> S(b * b), evals, Z;
    IterationResult out;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        out.iterations = it;
        for (std::size_t j = 0; j < b; ++j)
            op.apply(X.data() + j * dim, Y.data() + j * dim, scratch.data());
        // Rayleigh-Ritz on span(X): S = X^T (M X), symmetrized.
        for (std::size_t i = 0; i < b; ++i) {
            for (std::size_t j = i; j < b; ++j) {
                double dot = 0.0;
                const double* xi = X.data() + i * dim;
                const double* yj = Y.data() + j * dim;
                for (std::uint64_t r = 0; r < dim; ++r) dot += xi[r] * yj[r];
                S[i * b + j] = S[j * b + i] = dot;
            }
        }
        jacobi_eigen(S, b, evals, Z);
        const double scale = std::max(1.0, std::abs(evals.empty() ? 0.0 : evals[0]));
        double worst = 0.0;
        for (std::size_t t = 0; t < track; ++t) {
            // residual_t = || (M X - theta_t X) z_t ||
            for (std::uint64_t r = 0; r < dim; ++r) R[r] = 0.0;
            for (std::size_t j = 0; j < b; ++j) {
                const double zj = Z[j * b + t];
                if (zj == 0.0) continue;
                const double* yj = Y.data() + j * dim;
                const double* xj = X.data() + j * dim;
                for (std::uint64_t r = 0; r < dim; ++r)
                    R[r] += zj * (yj[r] - evals[t] * xj[r]);
            }
            double nrm = 0.0;
            for (std::uint64_t r = 0; r < dim; ++r) nrm += R[r] * R[r];
            worst = std::max(worst, std::sqrt(nrm) / scale);
        }
        out.theta = evals;
        out.residual = worst;
        if (worst < tol) {
            out.converged = true;
            return out;
        }
        X.swap(Y);
        orthonormalize(X, dim, b, rng);
    }
    return out;
}

// Every eigenvalue of M = B B^T, descending, by dense decomposition. M is
// assembled directly: each line contributes 1 to every pair of its points.
inline std::vector<double> dense_bbt_spectrum(const ImplicitGraph& g, std::uint64_t budget) {
    const std::uint64_t P = g.num_points();
    require_budget(P * P * 8 * 2 + P * 64, budget, "dense spectral decomposition");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(P),
                                              static_cast<Eigen::Index>(P));
    std::vector<VertexId> nb;
    for (std::uint64_t i = 0; i < P; ++i) {
        g.neighbors(P + i, nb);
        for (VertexId a : nb)
            for (VertexId b2 : nb)
                M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b2)) += 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense eigendecomposition failed");
    std::vector<double> theta(P);
    const auto& ev = es.eigenvalues();  // ascending
    for (std::uint64_t i = 0; i < P; ++i)
        theta[i] = ev[static_cast<Eigen::Index>(P - 1 - i)];
    return theta;
}

inline double sigma_of(double theta) { return std::sqrt(std::max(0.0, theta)); }

}  // namespace detail

// Reports sigma1 and sigma2 of the biadjacency as lambda1 and lambda2. For a
// disconnected graph sigma2 equals q (one Perron value per component); with
// per_component set, lambda2 is instead the largest sigma strictly below
// q - 1e-6, the quantity of interest for each component.
inline SpectralReport lambda2(const ImplicitGraph& g, const SpectralOptions& opts = {}) {
    const std::uint64_t two_qn = g.num_vertices();
    SpectralMethod method = opts.method;
    if (method == SpectralMethod::automatic)
        method = two_qn <= kDenseSpectralLimit ? SpectralMethod::dense : SpectralMethod::iterative;
    if (method == SpectralMethod::dense && two_qn > kDenseSpectralLimit)
        throw size_refusal("dense spectral route limited to 2 q^n <= " +
                           std::to_string(kDenseSpectralLimit));

    SpectralReport rep;
    rep.dim = g.num_points();
    rep.bound = 2.0 * std::sqrt(static_cast<double>(g.q()));
    rep.per_component = opts.per_component;

    const ComponentSummary comps = components(g, opts.budget);
    rep.components = comps.count;
    rep.component_note = comps.count > 1;

    const double q = static_cast<double>(g.q());
    std::vector<double> sigma;  // descending
    if (method == SpectralMethod::dense) {
        rep.method = "dense";
        std::vector<double> theta = detail::dense_bbt_spectrum(g, opts.budget);
        sigma.resize(theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i) sigma[i] = detail::sigma_of(theta[i]);
    } else {
        rep.method = "iterative";
        // Enough Ritz pairs to see past the multiplicity of the Perron value.
        std::size_t need = opts.per_component
                               ? static_cast<std::size_t>(comps.count) + 1
                               : std::size_t{2};
        if (need > 64)
            throw size_refusal("per-component spectral analysis needs block size > 64 here");
        const std::size_t block = std::max(opts.block, need + 2);
        BBtOperator op(g);
        detail::IterationResult it = detail::block_subspace_iteration(
            op, block, need, opts.tol, opts.max_iter, opts.seed, opts.budget);
        rep.residual = it.residual;
        rep.converged = it.converged;
        rep.iterations = it.iterations;
        sigma.resize(it.theta.size());
        for (std::size_t i = 0; i < it.theta.size(); ++i)
            sigma[i] = detail::sigma_of(it.theta[i]);
    }

    rep.top_sigma.assign(sigma.begin(),
                         sigma.begin() + std::min<std::size_t>(sigma.size(), 8));
    rep.lambda1 = sigma.empty() ? 0.0 : sigma[0];
    if (opts.per_component) {
        rep.lambda2 = 0.0;
        for (double s : sigma) {
            if (s < q - kComponentSigmaGap) {
                rep.lambda2 = s;
                break;
            }
        }
    } else {
        rep.lambda2 = sigma.size() > 1 ? sigma[1] : 0.0;
    }
    rep.margin = rep.bound - rep.lambda2;
    return rep;
}

// True iff lambda2 <= 2*sqrt(q) + 1e-8.
inline std::pair<bool, SpectralReport> check_2sqrtq(const ImplicitGraph& g,
                                                    const SpectralOptions& opts = {}) {
    SpectralReport rep = lambda2(g, opts);
    return {rep.lambda2 <= rep.bound + kSpectralSlack, rep};
}

}  // namespace adg
