#include "doctest.h"

#include "kronlift/errors.hpp"
#include "kronlift/lift.hpp"
#include "support.hpp"

using namespace kronlift;
using kronlift::testing::Rng;
using kronlift::testing::max_abs;

namespace {

PolynomialSystem scalar(double d, std::optional<double> g, std::optional<double> r, double b)
{
    PolynomialSystem s;
    s.n = 1;
    s.D = Matrix::Constant(1, 1, d);
    if (g)
        s.G = Matrix::Constant(1, 1, *g);
    if (r)
        s.R = Matrix::Constant(1, 1, *r);
    s.b = Vector::Constant(1, b);
    return s;
}

} // namespace

TEST_CASE("scalar lifts")
{
    const LiftedSystem q = build_lifted(scalar(2, 3, {}, 5));
    CHECK(q.m() == 2);
    CHECK(q.P(0, 0) == 2.0);
    CHECK(q.P(0, 1) == 3.0);
    CHECK(q.b(0) == 5.0);

    const LiftedSystem c = build_lifted(scalar(0, {}, 1, 8));
    CHECK(c.m() == 2);
    CHECK(c.P(0, 0) == 0.0);
    CHECK(c.P(0, 1) == 1.0);
    REQUIRE(c.blocks.size() == 2);
    CHECK(c.blocks[0].degree == 1);
    CHECK(c.blocks[1].degree == 3);
    CHECK(c.block(2) == nullptr);
}

TEST_CASE("lift dimensions and block partition")
{
    for (std::size_t n = 1; n <= 6; ++n) {
        const LiftedSystem q = build_lifted(random_system(n, 2, n));
        CHECK(q.m() == n + n * (n + 1) / 2);
        CHECK(q.P.leftCols(static_cast<Eigen::Index>(n)) == random_system(n, 2, n).D);

        PolynomialSystem both = random_system(n, 3, n);
        both.G = Matrix::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * n));
        const LiftedSystem l = build_lifted(both);
        CHECK(l.m() == lifted_width(n, true, true));
        CHECK(l.m() == n + n * (n + 1) / 2 + n * (n + 1) * (n + 2) / 6);
        std::size_t next = 0;
        for (const auto& blk : l.blocks) {
            CHECK(blk.offset == next);
            next += blk.length;
        }
        CHECK(next == l.m());
    }
    CHECK(build_lifted(random_system(2, 2, 3)).P.cols() == 5);
}

TEST_CASE("pair columns fold symmetric G entries")
{
    PolynomialSystem sys;
    sys.n = 2;
    sys.D = Matrix::Zero(2, 2);
    sys.G = Matrix(2, 4);
    *sys.G << 1, 2, 3, 4,
              5, 6, 7, 8;
    sys.b = Vector::Zero(2);
    const LiftedSystem l = build_lifted(sys);
    // pairs (1,1), (1,2), (2,2)
    CHECK(l.P(0, 2) == 1.0);
    CHECK(l.P(0, 3) == 5.0);
    CHECK(l.P(0, 4) == 4.0);
    CHECK(l.P(1, 3) == 13.0);
}

TEST_CASE("degenerate lift")
{
    PolynomialSystem sys;
    sys.n = 2;
    sys.D = Matrix::Identity(2, 2);
    sys.b = Vector::Ones(2);
    CHECK_THROWS_AS(build_lifted(sys), DegenerateLiftError);
}

TEST_CASE("monomial embedding")
{
    const LiftedSystem l = build_lifted(random_system(2, 2, 1));
    Vector x(2);
    x << 2, 3;
    Vector expected(5);
    expected << 2, 3, 4, 6, 9;
    CHECK(monomial_embedding(l, x) == expected);
    CHECK(monomial_embedding(l, Vector::Zero(2)) == Vector::Zero(5));
    CHECK_THROWS_AS(monomial_embedding(l, Vector::Zero(3)), DimensionError);

    const LiftedSystem c = build_lifted(random_system(2, 3, 1));
    Vector yc(6);
    yc << 2, 3, 8, 12, 18, 27;
    CHECK(monomial_embedding(c, x) == yc);
}

TEST_CASE("lift reproduces the polynomial map")
{
    Rng rng(31);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto n = static_cast<std::size_t>(1 + seed % 6);
        PolynomialSystem sys = random_system(n, 2 + static_cast<int>(seed % 2), seed);
        if (seed % 5 == 0 && !sys.G)
            sys.G = rng.matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * n));
        const LiftedSystem l = build_lifted(sys);
        for (int trial = 0; trial < 20; ++trial) {
            const Vector x = rng.vector(static_cast<Eigen::Index>(n));
            const Vector lhs = l.P * monomial_embedding(l, x);
            const Vector rhs = testing::loop_residual(sys, x) + sys.b;
            CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + sys.b.norm()) * (1.0 + std::pow(x.norm(), 3)));
        }
    }
}

TEST_CASE("roots transfer to the lifted system")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Vector root = draw_root(3, seed);
        const PolynomialSystem sys = random_system(3, 2 + static_cast<int>(seed % 2), seed, root);
        const LiftedSystem l = build_lifted(sys);
        CHECK((l.P * monomial_embedding(l, root) - l.b).norm() <= 1e-12 * (1.0 + l.b.norm()));
    }
}
