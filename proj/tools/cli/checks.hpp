#pragma once

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "calr/geometry.hpp"
#include "calr/solver.hpp"

namespace calr::lab {

enum class CheckStatus { Pass, Fail, Indeterminate };

std::string_view to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Indeterminate;
  double observed = 0.0;
  double threshold = 0.0;
  std::string relation;  // how observed must compare to threshold: "<", "<=", ">", "==", "true"
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  /// Fail if any check fails, else Indeterminate if any is, else Pass.
  CheckStatus status() const;
  /// One-line summary listing the failing (or indeterminate) checks.
  std::string summary() const;
};

struct SuiteOptions {
  double R = 1.0;
  double rho_i = 0.5;  // geometry for the spectrum cross-validation
  double rho_e = 0.8;
  int block_N = 512;
  int single_N = 256;
  double single_rho = 0.5;
  bool flip_inner_block = false;  // mutation sanity: must make criterion 1 fail
  double dipole_omega = 0.7;
  Vec2 dipole_moment{1.0, 0.5};
  int threads = 1;
};

/// Result of one delta sweep of a dipole for the trichotomy checks.
struct TrichotomyCase {
  std::string label;
  double R = 1.0;
  double rho_i = 0.0;
  double rho_e = 0.0;
  double rho0 = 0.0;
  bool inside = false;
  Regime regime;
  std::vector<SweepRecord> records;
  Diagnosis diagnosis;
};

class Suite {
 public:
  explicit Suite(SuiteOptions opts = {});

  static constexpr int kCriteria = 9;
  static std::string_view title(int id);

  /// Throws std::out_of_range for ids outside 1..9.
  CriterionResult run(int id);

  /// Sweeps are cached per (R, rho_i, rho_e, rho0) so criteria 5, 6 and 7 share work.
  const TrichotomyCase& trichotomy_case(double R, double rho_i, double rho_e, double rho0);

 private:
  CriterionResult spectrum_cross_validation();
  CriterionResult exact_identities();
  CriterionResult s_structure();
  CriterionResult solution_correctness();
  CriterionResult trichotomy();
  CriterionResult eccentricity_independence();
  CriterionResult surrogate_equivalence();
  CriterionResult source_machinery();
  CriterionResult asymptotics();

  SuiteOptions opts_;
  std::map<std::tuple<double, double, double, double>, TrichotomyCase> cache_;
};

/// The ladder N = 16, 32, 64 on the confocal pair; errors must fall at least twofold per
/// doubling until they reach 1e-12. Indeterminate if `configured_N` < 64.
Check spectral_convergence_check(const ConfocalGeometry& g, int configured_N);

}  // namespace calr::lab
