#include "doctest.h"

#include <cmath>

#include "kronlift/errors.hpp"
#include "kronlift/recovery.hpp"
#include "support.hpp"

using namespace kronlift;
using kronlift::testing::Rng;

namespace {

PolynomialSystem square_eq(double rhs)
{
    PolynomialSystem s;
    s.n = 1;
    s.D = Matrix::Zero(1, 1);
    s.G = Matrix::Constant(1, 1, 1.0);
    s.b = Vector::Constant(1, rhs);
    return s;
}

Vector vec(std::initializer_list<double> v)
{
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index j = 0;
    for (double x : v)
        out(j++) = x;
    return out;
}

CandidateSolution at(const LiftedSystem& l, double x)
{
    const Vector xv = vec({x});
    return make_candidate(l, xv, monomial_embedding(l, xv), CandidateSource::Direct);
}

bool has_near(const std::vector<CandidateSolution>& cands, const Vector& x, double tol)
{
    for (const auto& c : cands)
        if ((c.x - x).norm() <= tol)
            return true;
    return false;
}

} // namespace

TEST_CASE("consistency_score examples")
{
    const LiftedSystem l = build_lifted(square_eq(1.0));
    CHECK(consistency_score(l, vec({2, 4})) == 0.0);
    CHECK(consistency_score(l, vec({2, 5})) == doctest::Approx(1.0 / 6.0));
    CHECK_THROWS_AS(consistency_score(l, vec({1, 2, 3})), DimensionError);

    Rng rng(51);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int degree : {2, 3}) {
            const LiftedSystem lift = build_lifted(random_system(n, degree, n));
            for (int trial = 0; trial < 10; ++trial) {
                const Vector x = rng.vector(static_cast<Eigen::Index>(n));
                CHECK(consistency_score(lift, monomial_embedding(lift, x)) <= 1e-14);
            }
        }
}

TEST_CASE("extract_candidates for x^2 = 1")
{
    const LiftedSystem l = build_lifted(square_eq(1.0));
    const auto cands = extract_candidates(l, vec({0, 1}));
    REQUIRE(cands.size() == 3);
    CHECK(cands[0].source == CandidateSource::Direct);
    CHECK(cands[0].x(0) == 0.0);
    CHECK(cands[0].consistency == doctest::Approx(0.5));
    CHECK(cands[1].source == CandidateSource::Rank1);
    CHECK(cands[2].source == CandidateSource::Rank1);
    CHECK(std::abs(cands[1].x(0)) == doctest::Approx(1.0));
    CHECK(cands[1].x(0) == doctest::Approx(-cands[2].x(0)));
    CHECK(cands[1].consistency <= 1e-15);
    CHECK(cands[2].consistency <= 1e-15);

    // The sign matching the linear block comes first.
    const auto signed_cands = extract_candidates(l, vec({-0.3, 1}));
    CHECK(signed_cands[1].x(0) == doctest::Approx(-1.0));
}

TEST_CASE("extract_candidates on an exact embedding")
{
    Rng rng(52);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int degree : {2, 3}) {
            const LiftedSystem l = build_lifted(random_system(n, degree, 7 * n));
            const Vector x = rng.vector(static_cast<Eigen::Index>(n));
            const auto cands = extract_candidates(l, monomial_embedding(l, x));
            REQUIRE(!cands.empty());
            CHECK(cands[0].x == x);
            CHECK(cands[0].consistency == 0.0);
            // the factorised candidates reproduce x as well
            CHECK(has_near({cands.begin() + 1, cands.end()}, x, 1e-10 * (1.0 + x.norm())));
        }

    // Cube roots keep their sign.
    PolynomialSystem cubic;
    cubic.n = 1;
    cubic.D = Matrix::Zero(1, 1);
    cubic.R = Matrix::Constant(1, 1, 1.0);
    cubic.b = vec({-8});
    const LiftedSystem lc = build_lifted(cubic);
    const auto cc = extract_candidates(lc, vec({0, -8}));
    REQUIRE(cc.size() == 2);
    CHECK(cc[1].x(0) == doctest::Approx(-2.0));
    CHECK(cc[1].nonlinear_residual <= 1e-12);
}

TEST_CASE("candidate residuals are recomputed")
{
    Rng rng(53);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PolynomialSystem sys = random_system(3, 2 + static_cast<int>(seed % 2), seed);
        const LiftedSystem l = build_lifted(sys);
        NullSearchOptions opts;
        opts.seed = seed;
        auto cands = nullspace_search(l, opts);
        const auto extra = extract_candidates(l, rng.vector(static_cast<Eigen::Index>(l.m())));
        cands.insert(cands.end(), extra.begin(), extra.end());
        for (const auto& c : cands) {
            const double direct = testing::loop_residual(sys, c.x).norm();
            CHECK(std::abs(c.nonlinear_residual - direct) <= 1e-14 * (1.0 + direct) * 10.0);
            CHECK(c.consistency >= 0.0);
            if (c.parent_y)
                CHECK(c.consistency == doctest::Approx(consistency_against(l, *c.parent_y, c.x)));
        }
    }
}

TEST_CASE("nullspace_search on scalar equations")
{
    const LiftedSystem one = build_lifted(square_eq(1.0));
    auto cands = nullspace_search(one);
    CHECK(has_near(cands, vec({1}), 1e-8));
    CHECK(has_near(cands, vec({-1}), 1e-8));
    for (const auto& c : cands)
        if (std::abs(std::abs(c.x(0)) - 1.0) <= 1e-6) {
            CHECK(c.nonlinear_residual <= 1e-8);
            CHECK(c.source == CandidateSource::NullSearch);
        }
    for (std::size_t i = 1; i < cands.size(); ++i)
        CHECK(cands[i - 1].nonlinear_residual <= cands[i].nonlinear_residual);

    const LiftedSystem zero = build_lifted(square_eq(0.0));
    cands = nullspace_search(zero);
    REQUIRE(!cands.empty());
    CHECK(std::abs(cands[0].x(0)) <= 1e-4);
    CHECK(cands[0].consistency <= 1e-8);
}

TEST_CASE("nullspace_search recovers planted roots")
{
    for (std::size_t n : {2, 3, 4}) {
        int hits = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Vector root = draw_root(n, seed);
            const LiftedSystem l = build_lifted(random_system(n, 2, seed, root));
            NullSearchOptions opts;
            opts.seed = seed;
            if (has_near(nullspace_search(l, opts), root, 1e-6))
                ++hits;
        }
        CAPTURE(n);
        CHECK(hits >= 90);
    }
}

TEST_CASE("nullspace_search is deterministic and sorted")
{
    const Vector root = draw_root(3, 5);
    const LiftedSystem l = build_lifted(random_system(3, 3, 5, root));
    NullSearchOptions opts;
    opts.seed = 99;
    const auto a = nullspace_search(l, opts);
    const auto b = nullspace_search(l, opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].consistency == b[i].consistency);
        if (i > 0)
            CHECK_FALSE(candidate_less(a[i], a[i - 1]));
        for (std::size_t j = 0; j < i; ++j)
            CHECK((a[i].x - a[j].x).norm() >= 1e-6);
    }
}

TEST_CASE("candidate ordering ties break on x")
{
    const LiftedSystem l = build_lifted(square_eq(1.0));
    CandidateSolution p = at(l, 1.0), m = at(l, -1.0);
    CHECK(candidate_less(m, p));
    CHECK_FALSE(candidate_less(p, m));
    const auto kept = rank_and_deduplicate({p, m, at(l, 1.0 + 1e-9)});
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].x(0) == -1.0);
}

TEST_CASE("polish")
{
    const PolynomialSystem sys = square_eq(1.0);
    const LiftedSystem l = build_lifted(sys);

    CandidateSolution c = polish(sys, at(l, 1.02));
    CHECK(c.source == CandidateSource::Polished);
    CHECK(std::abs(c.x(0) - 1.0) <= 1e-10);
    CHECK(c.consistency == 0.0);
    CHECK(c.nonlinear_residual <= 1e-10);

    c = polish(sys, at(l, 1.0));
    CHECK(std::abs(c.x(0) - 1.0) <= 1e-12);

    c = polish(sys, at(l, -0.9));
    CHECK(std::abs(c.x(0) + 1.0) <= 1e-10);

    // No real root: the input comes back untouched.
    const PolynomialSystem none = square_eq(-1.0);
    const CandidateSolution in = at(build_lifted(none), 0.5);
    const CandidateSolution out = polish(none, in);
    CHECK(out.source == CandidateSource::Direct);
    CHECK(out.x == in.x);
}
