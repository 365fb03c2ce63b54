#pragma once

// Command-line orchestration for `kronlift gen|analyze|solve|compare`.
//
// Reports are JSON on stdout (or a plain-text table with --pretty). Every
// failure prints one JSON line {"error": {"code", "stage", "message"}} on
// stderr and exits with
//   2  usage error
//   3  I/O, parse or input validation error
//   4  numerical failure (including singular or degenerate systems)

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kronlift/errors.hpp"
#include "kronlift/io.hpp"
#include "kronlift/system_model.hpp"

namespace kronlift::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumerical = 4;

int exit_code_for(ErrorKind kind) noexcept;

struct Options {
    std::string method = "nullsearch";
    double ridge = 1e-10;
    std::size_t starts = 16;
    std::uint64_t seed = 0;
    double rank_rtol = 1e-10;
    bool pretty = false;
};

/// Tracks the current pipeline stage and per-stage wall time.
class Pipeline {
public:
    template <typename F>
    decltype(auto) run(const std::string& name, F&& fn);

    const std::string& stage() const noexcept { return stage_; }
    const io::json& timings() const noexcept { return timings_; }

private:
    std::string stage_ = "init";
    io::json timings_ = io::json::object();
};

/// Builds a system from a `{"random": {...}}` or `{"mwr": {...}}` descriptor.
PolynomialSystem generate(const io::json& descriptor, std::uint64_t default_seed);

io::json analyze_report(const PolynomialSystem& sys, const Options& opts, Pipeline& pipe);
io::json solve_report(const PolynomialSystem& sys, const Options& opts, Pipeline& pipe);
io::json compare_report(const PolynomialSystem& sys, const Options& opts, Pipeline& pipe);

/// Human-readable rendering of any report produced above.
std::string render_pretty(const io::json& report);

/// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kronlift::cli

#include <chrono>

namespace kronlift::cli {

template <typename F>
decltype(auto) Pipeline::run(const std::string& name, F&& fn)
{
    stage_ = name;
    const auto start = std::chrono::steady_clock::now();
    struct Record {
        Pipeline& self;
        const std::string& name;
        std::chrono::steady_clock::time_point start;
        ~Record()
        {
            const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
            self.timings_[name] = self.timings_.value(name, 0.0) + ms.count();
        }
    } record{*this, name, start};
    return fn();
}

} // namespace kronlift::cli
