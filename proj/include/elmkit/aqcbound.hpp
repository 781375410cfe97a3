#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elmkit/pbpoly.hpp"
#include "elmkit/rational.hpp"
#include "elmkit/spectrum.hpp"

namespace elmkit {

enum class InitialHamiltonian {
  /// scale * sum_j (I - X_j) / 2, ground state the uniform superposition.
  transverse_field,
  /// The zero operator.
  none,
  /// InterpolationProblem::custom_init, used as given.
  custom,
};

/// H(s) = (1 - s) H_init + s H_final for s = t/T in [0, 1], with H_final
/// diagonal in the computational basis.
struct InterpolationProblem {
  BinaryPolynomial h_final;
  std::size_t num_vars = 0;
  InitialHamiltonian init = InitialHamiltonian::transverse_field;
  double tf_scale = 1.0;
  Eigen::MatrixXd custom_init;
  Rational epsilon{1, 10};
  std::size_t grid = 64;
  std::size_t max_qubits = 12;
  std::size_t workers = 0;
};

struct OperatorPair {
  Eigen::MatrixXd h_init;
  Eigen::MatrixXd h_final;
};

/// Dense 2^n x 2^n operators; basis index bit i is variable i. Throws
/// CapExceeded above max_qubits, DomainError for a non-positive epsilon or
/// a malformed custom operator.
OperatorPair build_operators(const InterpolationProblem &problem);

bool is_hermitian(const Eigen::MatrixXd &m, double tolerance = 1e-12);
/// Largest singular value; for symmetric input the largest |eigenvalue|.
double spectral_norm(const Eigen::MatrixXd &m);

struct GapResult {
  double gap = 0.0;
  double argmin = 0.0;  ///< s = t/T of the minimum
  /// g, the final ground-level degeneracy; the tracked gap is
  /// lambda_g(s) - lambda_0(s), which at s = 1 is the classical E_gap.
  std::size_t ground_degeneracy = 1;
  bool degenerate_final = false;
  std::size_t evaluations = 0;
};

/// Minimum of the tracked gap over an evenly spaced grid of s, refined by
/// golden-section search around the best grid point to 1e-6 relative.
GapResult min_interpolated_gap(const InterpolationProblem &problem);
GapResult min_interpolated_gap(const InterpolationProblem &problem,
                               const OperatorPair &ops);

/// Tracked gap of H(s) at one point.
double interpolated_gap(const OperatorPair &ops, double s, std::size_t degeneracy);

struct BoundReport {
  double spectral_norm_diff = 0.0;  ///< ||H_final - H_init||
  double norm_final = 0.0;
  double norm_init = 0.0;
  GapResult gap;
  Rational epsilon{1, 10};
  /// max_s ||H_final - H_init||^2 / (eps * gap(s)^3); infinite for a
  /// closing gap.
  double tight_bound = 0.0;
  /// ||H_final - H_init||^2 / (eps * E_gap^3), the s = 1 term.
  double final_time_term = 0.0;
  /// E_width^2 / (eps * E_gap^3) = R / eps, exact.
  Rational loose_bound;
  /// ||H_final - H_init|| <= E_width, the condition under which the loose
  /// bound dominates the final-time term.
  bool norm_within_width = false;
  bool loose_dominates_final_term = false;
  /// ||A - B|| <= ||A|| + ||B||
  bool triangle_holds = false;
  /// The difference-of-norms form ||A - B|| <= ||A|| - ||B||, recorded
  /// rather than assumed.
  bool difference_form_holds = false;
  std::vector<std::string> notes;
};

/// Throws DomainError if `spectrum` does not describe h_final's diagonal
/// or its landscape is flat.
BoundReport runtime_bounds(const InterpolationProblem &problem,
                           const SpectrumReport &spectrum);

std::string to_string(InitialHamiltonian kind);

} // namespace elmkit
