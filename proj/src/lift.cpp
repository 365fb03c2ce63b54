#include "kronlift/lift.hpp"

#include <algorithm>
#include <array>

#include "kronlift/errors.hpp"

namespace kronlift {

const LiftBlock* LiftedSystem::block(int degree) const noexcept
{
    for (const auto& blk : blocks)
        if (blk.degree == degree)
            return &blk;
    return nullptr;
}

std::size_t lifted_width(std::size_t n, bool quadratic, bool cubic) noexcept
{
    std::size_t m = n;
    if (quadratic)
        m += n * (n + 1) / 2;
    if (cubic)
        m += n * (n + 1) * (n + 2) / 6;
    return m;
}

LiftedSystem build_lifted(const PolynomialSystem& sys)
{
    sys.validate();
    if (sys.is_linear())
        throw DegenerateLiftError("build_lifted: system has no nonlinear block to lift");

    const std::size_t n = sys.n;
    const auto dim = static_cast<Eigen::Index>(n);

    LiftedSystem lift;
    lift.pair_map = PairIndexMap(n);
    lift.origin = std::make_shared<const PolynomialSystem>(sys);
    lift.b = sys.b;
    lift.P = Matrix::Zero(dim, static_cast<Eigen::Index>(lifted_width(n, sys.G.has_value(), sys.R.has_value())));

    std::size_t offset = 0;
    lift.P.leftCols(dim) = sys.D;
    lift.blocks.push_back({1, offset, n});
    offset += n;

    if (sys.G) {
        const Matrix& g = *sys.G;
        const std::size_t count = lift.pair_map.size();
        for (std::size_t p = 1; p <= count; ++p) {
            const auto [i1, j1] = lift.pair_map.unindex(p);
            const auto i = static_cast<Eigen::Index>(i1 - 1);
            const auto j = static_cast<Eigen::Index>(j1 - 1);
            auto col = lift.P.col(static_cast<Eigen::Index>(offset + p - 1));
            col = g.col(i * dim + j);
            if (i != j)
                col += g.col(j * dim + i);
        }
        lift.blocks.push_back({2, offset, count});
        offset += count;
    }

    if (sys.R) {
        const Matrix& r = *sys.R;
        lift.triple_map = TripleIndexMap(n);
        const std::size_t count = lift.triple_map->size();
        for (std::size_t p = 1; p <= count; ++p) {
            std::array<std::size_t, 3> perm = lift.triple_map->unindex(p);
            auto col = lift.P.col(static_cast<Eigen::Index>(offset + p - 1));
            // perm starts sorted, so next_permutation visits each distinct ordering once.
            do {
                const auto a = static_cast<Eigen::Index>(perm[0] - 1);
                const auto b = static_cast<Eigen::Index>(perm[1] - 1);
                const auto c = static_cast<Eigen::Index>(perm[2] - 1);
                col += r.col((a * dim + b) * dim + c);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        lift.blocks.push_back({3, offset, count});
        offset += count;
    }
    return lift;
}

Vector monomial_embedding(const LiftedSystem& lift, const Vector& x)
{
    const std::size_t n = lift.n();
    if (static_cast<std::size_t>(x.size()) != n)
        throw DimensionError("monomial_embedding: x has length " + std::to_string(x.size())
                             + ", expected " + std::to_string(n));
    Vector y(static_cast<Eigen::Index>(lift.m()));
    for (const auto& blk : lift.blocks) {
        const auto base = static_cast<Eigen::Index>(blk.offset);
        for (std::size_t p = 1; p <= blk.length; ++p) {
            const auto at = base + static_cast<Eigen::Index>(p - 1);
            if (blk.degree == 1) {
                y(at) = x(at - base);
            } else if (blk.degree == 2) {
                const auto [i, j] = lift.pair_map.unindex(p);
                y(at) = x(static_cast<Eigen::Index>(i - 1)) * x(static_cast<Eigen::Index>(j - 1));
            } else {
                const auto t = lift.triple_map->unindex(p);
                y(at) = x(static_cast<Eigen::Index>(t[0] - 1)) * x(static_cast<Eigen::Index>(t[1] - 1))
                        * x(static_cast<Eigen::Index>(t[2] - 1));
            }
        }
    }
    return y;
}

} // namespace kronlift
