#include "kronlift/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kronlift/errors.hpp"

namespace kronlift {

std::string_view to_string(CandidateSource source) noexcept
{
    switch (source) {
    case CandidateSource::Direct: return "direct";
    case CandidateSource::Rank1: return "rank1";
    case CandidateSource::NullSearch: return "nullsearch";
    case CandidateSource::Polished: return "polished";
    }
    return "unknown";
}

namespace {

Eigen::Index idx(std::size_t one_based) { return static_cast<Eigen::Index>(one_based - 1); }

void require_lifted_length(const LiftedSystem& lift, const Vector& y, const char* op)
{
    if (static_cast<std::size_t>(y.size()) != lift.m())
        throw DimensionError(std::string(op) + ": y has length " + std::to_string(y.size()) + ", expected "
                             + std::to_string(lift.m()));
}

// ∂ y(x)_nl / ∂x, shape (m − n) × n.
Matrix monomial_jacobian(const LiftedSystem& lift, const Vector& x)
{
    const auto n = static_cast<Eigen::Index>(lift.n());
    Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(lift.m()) - n, n);
    for (const auto& blk : lift.blocks) {
        if (blk.degree == 1)
            continue;
        const auto base = static_cast<Eigen::Index>(blk.offset) - n;
        for (std::size_t p = 1; p <= blk.length; ++p) {
            const auto row = base + idx(p);
            if (blk.degree == 2) {
                const auto [i, j] = lift.pair_map.unindex(p);
                jac(row, idx(i)) += x(idx(j));
                jac(row, idx(j)) += x(idx(i));
            } else {
                const auto t = lift.triple_map->unindex(p);
                const double xi = x(idx(t[0])), xj = x(idx(t[1])), xk = x(idx(t[2]));
                jac(row, idx(t[0])) += xj * xk;
                jac(row, idx(t[1])) += xi * xk;
                jac(row, idx(t[2])) += xi * xj;
            }
        }
    }
    return jac;
}

struct SearchSpace {
    Vector y_particular;
    Matrix basis;
};

// Gauss–Newton on r(t) = y_nl(t) − monomials(x(t)), step halving up to 20
// times, accepting only strict decreases of ‖r‖.
Vector minimise_defect(const LiftedSystem& lift, const SearchSpace& space, Vector t, std::size_t max_iter)
{
    const auto n = static_cast<Eigen::Index>(lift.n());
    const auto nl = static_cast<Eigen::Index>(lift.m()) - n;
    const Matrix basis_lin = space.basis.topRows(n);
    const Matrix basis_nl = space.basis.bottomRows(nl);

    auto lifted = [&](const Vector& tt) -> Vector { return space.y_particular + space.basis * tt; };
    auto defect = [&](const Vector& y) -> Vector {
        return y.tail(nl) - monomial_embedding(lift, y.head(n)).tail(nl);
    };

    Vector y = lifted(t);
    Vector r = defect(y);
    double rnorm = r.norm();
    for (std::size_t it = 0; it < max_iter; ++it) {
        if (rnorm <= 1e-15 * (1.0 + y.tail(nl).norm()))
            break;
        const Matrix jac = basis_nl - monomial_jacobian(lift, y.head(n)) * basis_lin;
        const Vector step = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(jac).solve(-r);
        if (!step.allFinite())
            break;

        auto try_step = [&](const Vector& delta) {
            const Vector t_try = t + delta;
            const Vector y_try = lifted(t_try);
            const Vector r_try = defect(y_try);
            const double norm_try = r_try.norm();
            if (!(norm_try < rnorm))
                return false;
            t = t_try;
            y = y_try;
            r = r_try;
            rnorm = norm_try;
            return true;
        };

        double moved = 0.0;
        double alpha = 1.0;
        for (int halving = 0; halving <= 20 && moved == 0.0; ++halving, alpha *= 0.5)
            if (try_step(alpha * step))
                moved = alpha * step.norm();

        // Near a singular Jacobian the Gauss-Newton direction can be useless;
        // bend it towards steepest descent before giving up.
        if (moved == 0.0) {
            const Matrix jtj = jac.transpose() * jac;
            const Vector grad = jac.transpose() * r;
            double lambda = 1e-6 * std::max(jtj.diagonal().maxCoeff(), 1e-300);
            for (int k = 0; k < 30 && moved == 0.0; ++k, lambda *= 10.0) {
                Matrix damped = jtj;
                damped.diagonal().array() += lambda;
                const Vector delta = damped.llt().solve(-grad);
                if (delta.allFinite() && try_step(delta))
                    moved = delta.norm();
            }
        }
        if (moved <= 1e-15 * (1.0 + t.norm()))
            break;
    }
    return y;
}

} // namespace

double consistency_against(const LiftedSystem& lift, const Vector& y, const Vector& x)
{
    require_lifted_length(lift, y, "consistency");
    const auto nl = static_cast<Eigen::Index>(lift.m() - lift.n());
    const Vector exact = monomial_embedding(lift, x);
    return (y.tail(nl) - exact.tail(nl)).norm() / (1.0 + y.tail(nl).norm());
}

double consistency_score(const LiftedSystem& lift, const Vector& y)
{
    require_lifted_length(lift, y, "consistency_score");
    return consistency_against(lift, y, y.head(static_cast<Eigen::Index>(lift.n())));
}

CandidateSolution make_candidate(const LiftedSystem& lift, const Vector& x, const Vector& parent_y,
                                 CandidateSource source)
{
    CandidateSolution c;
    c.x = x;
    c.source = source;
    c.consistency = consistency_against(lift, parent_y, x);
    c.nonlinear_residual = eval_residual(*lift.origin, x).norm;
    c.parent_y = parent_y;
    return c;
}

std::vector<CandidateSolution> extract_candidates(const LiftedSystem& lift, const Vector& y)
{
    require_lifted_length(lift, y, "extract_candidates");
    const auto n = static_cast<Eigen::Index>(lift.n());
    const Vector direct = y.head(n);

    std::vector<CandidateSolution> out;
    out.push_back(make_candidate(lift, direct, y, CandidateSource::Direct));

    if (const LiftBlock* quad = lift.block(2)) {
        Eigen::MatrixXd X(n, n);
        for (std::size_t p = 1; p <= quad->length; ++p) {
            const auto [i, j] = lift.pair_map.unindex(p);
            const double v = y(static_cast<Eigen::Index>(quad->offset) + idx(p));
            X(idx(i), idx(j)) = v;
            X(idx(j), idx(i)) = v;
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X);
        if (eig.info() == Eigen::Success) {
            const double lambda = eig.eigenvalues()(n - 1);
            Vector cand = std::sqrt(std::max(lambda, 0.0)) * eig.eigenvectors().col(n - 1);
            // Both signs square to the same pair block; list the one agreeing
            // with the degree-1 block first.
            if (direct.dot(cand) < 0.0)
                cand = -cand;
            out.push_back(make_candidate(lift, cand, y, CandidateSource::Rank1));
            if (cand.squaredNorm() > 0.0)
                out.push_back(make_candidate(lift, -cand, y, CandidateSource::Rank1));
        }
    }

    if (const LiftBlock* cube = lift.block(3)) {
        Vector cand(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i + 1);
            const std::size_t p = lift.triple_map->index(k, k, k);
            cand(i) = std::cbrt(y(static_cast<Eigen::Index>(cube->offset) + idx(p)));
        }
        out.push_back(make_candidate(lift, cand, y, CandidateSource::Rank1));
    }
    return out;
}

bool candidate_less(const CandidateSolution& a, const CandidateSolution& b)
{
    if (a.nonlinear_residual != b.nonlinear_residual)
        return a.nonlinear_residual < b.nonlinear_residual;
    if (a.consistency != b.consistency)
        return a.consistency < b.consistency;
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

std::vector<CandidateSolution> rank_and_deduplicate(std::vector<CandidateSolution> cands, double distance)
{
    std::stable_sort(cands.begin(), cands.end(), candidate_less);
    std::vector<CandidateSolution> kept;
    for (auto& c : cands) {
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const CandidateSolution& k) {
            return (k.x - c.x).norm() < distance;
        });
        if (!duplicate)
            kept.push_back(std::move(c));
    }
    return kept;
}

std::vector<CandidateSolution> nullspace_search(const LiftedSystem& lift, const NullSearchOptions& opts)
{
    const SvdFactors f = decompose(lift.P, opts.rank_rtol);
    const auto rank = static_cast<Eigen::Index>(f.report.numerical_rank);
    SearchSpace space;
    const Vector coeffs = (f.U.leftCols(rank).transpose() * lift.b).cwiseQuotient(f.report.singular_values.head(rank));
    space.y_particular = f.V.leftCols(rank) * coeffs;
    if (f.report.nullity == 0)
        return rank_and_deduplicate(extract_candidates(lift, space.y_particular), opts.dedup_distance);
    space.basis = f.V.rightCols(static_cast<Eigen::Index>(f.report.nullity));

    // Starting points are drawn up front so the result is independent of scheduling.
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Vector> starts(opts.starts);
    // Each start is a random point on the monomial variety projected onto the
    // affine solution set, so starts sit at the scale of typical roots.
    for (auto& t : starts) {
        Vector x0(static_cast<Eigen::Index>(lift.n()));
        for (Eigen::Index i = 0; i < x0.size(); ++i)
            x0(i) = normal(rng);
        t = space.basis.transpose() * (monomial_embedding(lift, x0) - space.y_particular);
    }

    const auto n = static_cast<Eigen::Index>(lift.n());
    std::vector<CandidateSolution> found(starts.size());
    const long count = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < count; ++s) {
        const Vector y = minimise_defect(lift, space, starts[static_cast<std::size_t>(s)], opts.max_iter);
        found[static_cast<std::size_t>(s)] = make_candidate(lift, y.head(n), y, CandidateSource::NullSearch);
    }
    return rank_and_deduplicate(std::move(found), opts.dedup_distance);
}

CandidateSolution polish(const PolynomialSystem& sys, const CandidateSolution& cand, const NewtonOptions& opts)
{
    if (!cand.x.allFinite())
        return cand;
    NewtonTrace trace;
    try {
        trace = newton_solve(sys, cand.x, opts);
    } catch (const NumericalFailure&) {
        return cand;
    }
    if (!trace.converged)
        return cand;

    CandidateSolution out;
    out.x = trace.iterates.back().x;
    out.source = CandidateSource::Polished;
    out.nonlinear_residual = eval_residual(sys, out.x).norm;
    if (!sys.is_linear()) {
        const LiftedSystem lift = build_lifted(sys);
        out.parent_y = monomial_embedding(lift, out.x);
        out.consistency = consistency_against(lift, *out.parent_y, out.x);
    }
    return out;
}

} // namespace kronlift
