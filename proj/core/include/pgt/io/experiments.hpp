#pragma once

// Experiment drivers. Each validates its config first (InvalidInput on a bad
// one, before any output exists), runs, and returns the report text; the
// status is 2 only when a checked mode breaches its tolerance. Reports depend
// on the config alone, never on the thread count.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pgt/counting.hpp"
#include "pgt/nf/field.hpp"
#include "pgt/tauberian.hpp"

namespace pgt::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitTolerance = 2;

struct RunResult {
  int status = kExitOk;
  std::string output;
};

// Cartesian product of per-axis values, first axis outermost. Every axis must
// be non-empty and strictly increasing.
std::vector<std::vector<double>> grid_points(const std::vector<std::vector<double>>& axes);

// ------------------------------------------------------------ theta

inline constexpr const char* kThetaLabel = "maximal-order slice of theta_S";

struct ThetaConfig {
  std::vector<std::vector<double>> axes;  // T_1 and T_2 values on the alpha scale
  std::set<long long> S;
  bool allow_small_S = false;
  bool strict = false;  // refuse candidate (unconfirmed) unit systems
  unsigned threads = 1;
};

// theta_S on every grid point against (c / sqrt 3) T_1 T_2; fields failing the
// S-condition contribute nothing. Units are enumerated once per field in the
// box spanned by the largest T values.
RatioReport run_theta(std::span<const nf::FieldRecord> records, const ThetaConfig& config);
RunResult run_theta_experiment(std::span<const nf::FieldRecord> records, const ThetaConfig& config);

// ------------------------------------------------------------ counting

enum class CountKind { kPsi, kPhi, kPhiJ, kPi, kA };
const char* to_string(CountKind k) noexcept;
CountKind count_kind_from_string(const std::string& name);

struct PgtConfig {
  CountKind kind = CountKind::kPsi;
  std::vector<std::vector<double>> axes;
  BoundScale scale = BoundScale::kLog;
  int j = 0;
  std::optional<double> epsilon;  // psi / phi only
  Normalizer normalizer = Normalizer::kProductT;
  double constant = 1.0;
  unsigned threads = 1;
};

RatioReport run_pgt(const Spectrum& spectrum, const PgtConfig& config);
RunResult run_pgt_experiment(const Spectrum& spectrum, const PgtConfig& config);

// ------------------------------------------------------------ tauberian

enum class TauberianMode { kVerdict, kMoment, kSmoothed };
const char* to_string(TauberianMode m) noexcept;
TauberianMode tauberian_mode_from_string(const std::string& name);

struct TauberianConfig {
  TauberianMode mode = TauberianMode::kVerdict;
  int j = 0;
  std::vector<double> ray;      // direction, defaults to (1, ..., 1)
  std::vector<double> radii;    // verdict / smoothed
  double s1 = 1.0;              // kernel half-width
  std::size_t resolution = 1024;
  std::vector<int> ks{0, 1, 2}; // moment
  std::vector<double> ys;       // moment
  double tolerance = 0.02;      // moment: |value / (2 pi f(0)) - 1|
  unsigned threads = 1;
};

// verdict:  radius,B,tail_sup,tail_inf
// moment:  k,y,value,target,rel_deviation (status 2 past the tolerance)
// smoothed: radius,value,target,ratio with target (2 pi f(0))^r
RunResult run_tauberian_experiment(const CountingFunction& source, const TauberianConfig& config);

// ------------------------------------------------------------ dirichlet

struct DirichletConfig {
  std::vector<std::size_t> ranks{1, 2};
  std::vector<int> js{0, 1, 2};
  std::vector<double> offsets{0.5, 1.0, 2.0};  // s_k - theta_k
  double theta = 0.0;                          // real part of every theta_k
  double tolerance = 1e-6;                     // relative
  std::size_t panels = 64;
  unsigned threads = 1;
};

// One row per (rank, j, offset tuple); status 2 if any relative difference
// exceeds the tolerance.
RunResult run_dirichlet_check(const DirichletConfig& config);

// ------------------------------------------------------------ fields

struct EnumerateConfig {
  long long disc_bound = 0;
  std::set<long long> S;
  nf::EnumerationOptions options;
  std::optional<long long> unit_height;  // also search fundamental units
};

// Without unit_height: disc_field,poly_a,poly_b,poly_c,h,minkowski plus a
// split_<p> column per p in S. With it: a field table (fields with unknown h
// or too few units found are listed as comments).
RunResult run_enumerate(const EnumerateConfig& config);

struct UnitsBoxConfig {
  std::array<double, 2> T{};
  bool strict = false;
};

// c0,c1,c2,alpha1,alpha2,rho1,rho2,rho3 for every unit in the box.
RunResult run_units_box(const nf::FieldRecord& record, const UnitsBoxConfig& config);

}  // namespace pgt::io
