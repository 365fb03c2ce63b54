#pragma once

// Recovering roots x of the nonlinear system from lifted vectors y.
//
// A lifted vector is consistent when its nonlinear blocks are exactly the
// monomials of its own degree-1 block. Every least-squares solution of
// P·y = b has the form y_p + N·t; the null-space search minimises the
// consistency defect over t, whose zeros are exactly the real roots.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "kronlift/lift.hpp"
#include "kronlift/solvers.hpp"

namespace kronlift {

enum class CandidateSource { Direct, Rank1, NullSearch, Polished };

std::string_view to_string(CandidateSource source) noexcept;

struct CandidateSolution {
    Vector x;
    double consistency = 0.0;        ///< defect of parent_y against the monomials of x
    double nonlinear_residual = 0.0; ///< ‖F(x)‖
    CandidateSource source = CandidateSource::Direct;
    std::optional<Vector> parent_y;
};

/// ‖y_nl − y(x)_nl‖ / (1 + ‖y_nl‖) with x the degree-1 block of y.
double consistency_score(const LiftedSystem& lift, const Vector& y);

/// Same defect, measured against an arbitrary x instead of y's own block.
double consistency_against(const LiftedSystem& lift, const Vector& y, const Vector& x);

/// Builds a candidate with residual and consistency computed from scratch.
CandidateSolution make_candidate(const LiftedSystem& lift, const Vector& x, const Vector& parent_y,
                                 CandidateSource source);

/// Direct read-out, rank-1 factorisation of the quadratic block and
/// cube roots of the cubic diagonal.
std::vector<CandidateSolution> extract_candidates(const LiftedSystem& lift, const Vector& y);

struct NullSearchOptions {
    std::size_t starts = 16;
    std::uint64_t seed = 0;
    std::size_t max_iter = 200;
    double rank_rtol = kDefaultRankRtol;
    double dedup_distance = 1e-6;
};

/// Damped Gauss–Newton on the consistency defect over y_p + N·t from seeded
/// Gaussian starts. Results are deduplicated and ranked; output does not
/// depend on the number of threads.
std::vector<CandidateSolution> nullspace_search(const LiftedSystem& lift, const NullSearchOptions& opts = {});

/// Newton polish from cand.x. Returns the input unchanged unless Newton converges.
CandidateSolution polish(const PolynomialSystem& sys, const CandidateSolution& cand,
                         const NewtonOptions& opts = {});

/// Total order: residual, then consistency, then lexicographic x.
bool candidate_less(const CandidateSolution& a, const CandidateSolution& b);

/// Sorts and drops candidates within `distance` of a better-ranked one.
std::vector<CandidateSolution> rank_and_deduplicate(std::vector<CandidateSolution> cands, double distance = 1e-6);

} // namespace kronlift
