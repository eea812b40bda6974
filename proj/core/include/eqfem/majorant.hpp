#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "eqfem/fem.hpp"
#include "eqfem/problems.hpp"

namespace eqfem {

struct MajorantReport {
  double global = 0.0;
  double part_eq = 0.0;    ///< equation residual term
  double part_flux = 0.0;  ///< constitutive relation term
  std::vector<double> eta_sq;
  std::optional<double> combined_error_sq;
  std::optional<double> delta;
  std::optional<double> delta_rel;
  std::optional<double> normalized;
  double f_norm_sq = 0.0;  ///< |f|^2 in the rho^{-1} norm, or |J|^2 in the eps^{-1} norm
};

/// RT0 or continuous P1 vector flux.
using FluxField = std::variant<FeFunction, VectorP1Function>;

/// eta_T^2 = int_T rho^{-1}(f - rho u + div p)^2 + (p - alpha grad u).alpha^{-1}(p - alpha grad u).
MajorantReport majorant_rd(const RdProblem& problem, const FeFunction& u, const FluxField& p, int degree = 10);
/// eta_T^2 = int_T (J - eps E - perp H).eps^{-1}(...) + mu (H - mu^{-1} rot E)^2.
MajorantReport majorant_ec2d(const Ec2dProblem& problem, const FeFunction& e, const FeFunction& h, int degree = 10);

/// Per-element squared combined error against manufactured fields.
std::vector<double> element_errors_rd(const RdProblem& problem, const RdExact& exact, const FeFunction& u,
                                      const FluxField& p, int degree = 10);
std::vector<double> element_errors_ec2d(const Ec2dProblem& problem, const EcExact& exact, const FeFunction& e,
                                        const FeFunction& h, int degree = 10);

double exact_combined_error_rd(const RdProblem& problem, const RdExact& exact, const FeFunction& u,
                               const FluxField& p, int degree = 10);
double exact_combined_error_ec2d(const Ec2dProblem& problem, const EcExact& exact, const FeFunction& e,
                                 const FeFunction& h, int degree = 10);

/// Fills delta = |sqrt(M) - sqrt(E^2)|, delta_rel = delta / sqrt(f_norm_sq) and normalized = sqrt(M / f_norm_sq).
/// With f_norm_sq = 0 the relative and normalized values stay empty.
void equality_report(MajorantReport& report, std::optional<double> combined_error_sq);
/// Sets only the normalized value (majorant-only runs).
void normalize(MajorantReport& report);

/// Analytic approximation pair for the Robin check.
struct AnalyticPair {
  ScalarFn u;
  VectorFn grad_u;
  VectorFn p;
  ScalarFn div_p;
};

struct RobinCheckResult {
  double combined_error_sq = 0.0;
  double boundary_u_sq = 0.0;     ///< |u - u~|^2 on Gamma_R weighted by gamma
  double boundary_flux_sq = 0.0;  ///< |n.(p - p~)|^2 on Gamma_R weighted by gamma^{-1}
  double lhs = 0.0;
  double rhs = 0.0;  ///< mixed majorant
  double difference = 0.0;
};

/// Evaluates both sides of the mixed-boundary equality for analytic fields. The hypotheses
/// (u - u~ = 0 on Gamma_D, n.(p - p~) = 0 on Gamma_N, n.(p - p~) + gamma (u - u~) = 0 on Gamma_R)
/// are checked at boundary quadrature points; a violation throws ContractError.
RobinCheckResult robin_equality_check(const Mesh& mesh, const RdProblem& problem, const RdExact& exact,
                                      const AnalyticPair& approx, int degree = 10, int edge_points = 8);

/// Gauss-Legendre nodes on [0, 1] and weights summing to 1.
struct LineRule {
  std::vector<double> s;
  std::vector<double> w;
};
LineRule gauss_legendre(int points);

}  // namespace eqfem
