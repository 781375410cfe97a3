#include "elmkit/aqcbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "elmkit/error.hpp"
#include "elmkit/parallel.hpp"

namespace elmkit {

namespace {

std::vector<double> eigenvalues(const Eigen::MatrixXd &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("eigensolver did not converge");
  const auto &v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

std::size_t final_degeneracy(const Eigen::MatrixXd &h_final) {
  const auto diag = h_final.diagonal();
  const double lowest = diag.minCoeff();
  return static_cast<std::size_t>((diag.array() == lowest).count());
}

} // namespace

OperatorPair build_operators(const InterpolationProblem &problem) {
  const std::size_t n = problem.num_vars;
  if (n > problem.max_qubits)
    throw CapExceeded(std::to_string(n) + " qubits exceed the dense-solver cap of " +
                      std::to_string(problem.max_qubits));
  if (problem.epsilon.num() <= 0)
    throw DomainError("epsilon must be positive");
  const Eigen::Index dim = Eigen::Index{1} << n;

  OperatorPair ops;
  const CompiledPolynomial energy(problem.h_final, n);
  ops.h_final = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x)
    ops.h_final(x, x) = static_cast<double>(energy(static_cast<std::uint64_t>(x)));

  switch (problem.init) {
  case InitialHamiltonian::transverse_field: {
    // (I - X_j)/2 has 1/2 on the diagonal and -1/2 between x and x ^ (1 << j)
    ops.h_init = Eigen::MatrixXd::Zero(dim, dim);
    const double half = problem.tf_scale / 2.0;
    for (Eigen::Index x = 0; x < dim; ++x) {
      ops.h_init(x, x) = half * static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j)
        ops.h_init(x, x ^ (Eigen::Index{1} << j)) = -half;
    }
    break;
  }
  case InitialHamiltonian::none:
    ops.h_init = Eigen::MatrixXd::Zero(dim, dim);
    break;
  case InitialHamiltonian::custom:
    if (problem.custom_init.rows() != dim || problem.custom_init.cols() != dim)
      throw DomainError("custom H_init must be " + std::to_string(dim) + "x" +
                        std::to_string(dim));
    if (!is_hermitian(problem.custom_init, 1e-9))
      throw DomainError("custom H_init is not Hermitian");
    ops.h_init = problem.custom_init;
    break;
  }
  return ops;
}

bool is_hermitian(const Eigen::MatrixXd &m, double tolerance) {
  return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= tolerance;
}

double spectral_norm(const Eigen::MatrixXd &m) {
  if (m.size() == 0)
    return 0.0;
  if (is_hermitian(m)) {
    auto ev = eigenvalues(m);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double interpolated_gap(const OperatorPair &ops, double s, std::size_t degeneracy) {
  const Eigen::MatrixXd h = (1.0 - s) * ops.h_init + s * ops.h_final;
  auto ev = eigenvalues(h);
  if (degeneracy >= ev.size())
    return 0.0;
  return ev[degeneracy] - ev[0];
}

GapResult min_interpolated_gap(const InterpolationProblem &problem) {
  return min_interpolated_gap(problem, build_operators(problem));
}

GapResult min_interpolated_gap(const InterpolationProblem &problem,
                               const OperatorPair &ops) {
  GapResult out;
  out.ground_degeneracy = final_degeneracy(ops.h_final);
  out.degenerate_final = out.ground_degeneracy > 1;
  const std::size_t g = out.ground_degeneracy;
  const std::size_t points = std::max<std::size_t>(problem.grid, 2);

  std::vector<double> gaps(points);
  for_each_range(points, problem.workers, 1,
                 [&](std::uint64_t begin, std::uint64_t end, std::size_t) {
                   for (std::uint64_t i = begin; i < end; ++i)
                     gaps[i] = interpolated_gap(
                         ops, static_cast<double>(i) / static_cast<double>(points - 1), g);
                 });
  out.evaluations = points;
  // first minimum in grid order keeps the result schedule-independent
  auto best = static_cast<std::size_t>(
      std::min_element(gaps.begin(), gaps.end()) - gaps.begin());
  out.gap = gaps[best];
  out.argmin = static_cast<double>(best) / static_cast<double>(points - 1);

  double lo = static_cast<double>(best == 0 ? 0 : best - 1) / static_cast<double>(points - 1);
  double hi = static_cast<double>(std::min(best + 1, points - 1)) /
              static_cast<double>(points - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
  double fa = interpolated_gap(ops, a, g), fb = interpolated_gap(ops, b, g);
  out.evaluations += 2;
  while (hi - lo > 1e-6 * std::max(1e-3, std::abs(0.5 * (lo + hi)))) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = interpolated_gap(ops, a, g);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = interpolated_gap(ops, b, g);
    }
    ++out.evaluations;
  }
  for (auto [s, f] : {std::pair{a, fa}, std::pair{b, fb}})
    if (f < out.gap) {
      out.gap = f;
      out.argmin = s;
    }
  return out;
}

BoundReport runtime_bounds(const InterpolationProblem &problem,
                           const SpectrumReport &spectrum) {
  if (spectrum.n != problem.num_vars)
    throw DomainError("spectrum covers " + std::to_string(spectrum.n) +
                      " variables, problem has " + std::to_string(problem.num_vars));
  if (!spectrum.e_gap || !spectrum.ratio)
    throw DomainError("runtime bounds need a non-flat landscape");
  const OperatorPair ops = build_operators(problem);

  std::map<std::int64_t, std::uint64_t> diag;
  for (Eigen::Index x = 0; x < ops.h_final.rows(); ++x)
    ++diag[static_cast<std::int64_t>(ops.h_final(x, x))];
  std::vector<Level> levels;
  for (const auto &[e, c] : diag)
    levels.push_back({e, c});
  if (levels != spectrum.levels)
    throw DomainError("spectrum does not match the diagonal of H_final");

  BoundReport out;
  out.epsilon = problem.epsilon;
  out.norm_final = spectral_norm(ops.h_final);
  out.norm_init = spectral_norm(ops.h_init);
  out.spectral_norm_diff = spectral_norm(ops.h_final - ops.h_init);
  out.gap = min_interpolated_gap(problem, ops);

  const double eps = problem.epsilon.to_double();
  const double numerator = out.spectral_norm_diff * out.spectral_norm_diff;
  if (out.gap.gap <= 1e-12) {
    out.tight_bound = std::numeric_limits<double>::infinity();
    out.notes.push_back("interpolated gap closes; tight bound is unbounded");
  } else {
    out.tight_bound = numerator / (eps * std::pow(out.gap.gap, 3));
  }
  const double final_gap = static_cast<double>(*spectrum.e_gap);
  out.final_time_term = numerator / (eps * std::pow(final_gap, 3));
  out.loose_bound = *spectrum.ratio / problem.epsilon;

  const double tol = 1e-9 * std::max(1.0, out.spectral_norm_diff);
  out.norm_within_width =
      out.spectral_norm_diff <= static_cast<double>(spectrum.e_width) + tol;
  out.loose_dominates_final_term =
      out.loose_bound.to_double() >= out.final_time_term * (1.0 - 1e-12);
  out.triangle_holds = out.spectral_norm_diff <= out.norm_final + out.norm_init + tol;
  out.difference_form_holds = out.spectral_norm_diff <= out.norm_final - out.norm_init + tol;
  if (!out.difference_form_holds)
    out.notes.push_back("||H_final - H_init|| exceeds ||H_final|| - ||H_init||");
  if (out.gap.degenerate_final)
    out.notes.push_back("final ground level is " +
                        std::to_string(out.gap.ground_degeneracy) +
                        "-fold degenerate; gap tracked to the first level above it");
  if (spectrum.ground_energy() != 0)
    out.notes.push_back("ground energy is not zero; ||H_final|| differs from E_width");
  return out;
}

std::string to_string(InitialHamiltonian kind) {
  switch (kind) {
  case InitialHamiltonian::transverse_field:
    return "transverse";
  case InitialHamiltonian::none:
    return "none";
  case InitialHamiltonian::custom:
    break;
  }
  return "custom";
}

} // namespace elmkit
