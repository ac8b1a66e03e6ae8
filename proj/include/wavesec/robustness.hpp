// robustness.hpp - closed-form brute-force attempt counts
//
// OTFS: M_a = sigma(N) <= 2*sqrt(N), with Dirichlet average
//       ln(N) + 2*gamma - 1.
// AFDM: M_a = pi*(D*N - theta_max)*(N-1)^2 / (epsilon*N); the paper's
//       form is the epsilon = 1 case. |Delta1| <= epsilon/(2*pi*(N-1)^2)
//       is the acceptable-error bound behind the grid step.

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "wavesec/waveform.hpp"

namespace wavesec {

struct OtfsRobustness {
    std::uint64_t exact; // sigma(n)
    double bound;        // 2*sqrt(n)
    double average;      // ln(n) + 2*gamma - 1
};

OtfsRobustness otfs_ma(std::uint64_t n);

double afdm_ma(std::size_t n, double theta_max, double d_upper, double epsilon);

double delta1_bound(std::size_t n, double epsilon);

// true iff |afdm_ma - afdm_candidates count| <= 1 for the same range
bool consistency_check(std::size_t n, double theta_max, double d_upper, double epsilon);

struct RobustnessReport {
    Waveform waveform = Waveform::kOtfs;
    std::size_t n = 0;
    double ma_exact = 0.0;     // sigma(N) or Eq.-value
    double ma_bound = 0.0;     // OTFS only
    double dirichlet_avg = 0.0; // OTFS only
    double delta1 = 0.0;       // AFDM only
    double theta_max = 0.0;    // AFDM only
    double d_upper = 0.0;      // AFDM only
    double epsilon = 1.0;      // AFDM only
};

RobustnessReport analyze_otfs(std::size_t n);
RobustnessReport analyze_afdm(std::size_t n, double theta_max, double d_upper, double epsilon);

std::string format_report(const RobustnessReport& report);
nlohmann::json report_to_json(const RobustnessReport& report);

} // namespace wavesec
