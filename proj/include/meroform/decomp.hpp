#pragma once

// Splitting f_{k,D} into an algebraic meromorphic part plus a cusp form, Hecke
// operators on f_{k,D}, and Hecke combinations without cuspidal part.

#include "meroform/fkd.hpp"
#include "meroform/form_expr.hpp"
#include "meroform/numeric.hpp"
#include "meroform/recognize.hpp"
#include "meroform/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace meroform {

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Phi_D = H_D(j) Delta^{h/w} (E4 for D = -3, E6 for D = -4) as an exact form.
FormExpr phi(long long D, Precision prec = Precision());
/// Phi_A for a class with rational j(z_A).
FormExpr phi_class(const mpz_class& jA);

/// (j - jA)^m E4^delta E6^epsilon Delta^M, m = 0..M-1, as polynomials in E4, E6, Delta.
std::vector<FormExpr> psi_basis(int weight, const mpz_class& jA);
/// Order of vanishing of Psi_{m} at z_A.
int psi_order(int weight, const mpz_class& jA, int m);

struct AlgebraicCoefficient {
  BQF cls;         ///< primitive reduced form of discriminant D/g^2
  long g = 1;      ///< content: the class enters f_{k,D} with weight g^-k
  int m = 0;
  int order = 0;   ///< vanishing order of Psi_m at z_A
  Complex raw;     ///< numerical c_m
  HNumber value;   ///< recognised c_m
};

struct RemainderCoeff {
  long r = 0;
  Real value;
  Real error;
};

struct Decomposition {
  int k = 0;
  long long D = 0;
  FormExpr algebraic_part;
  std::vector<AlgebraicCoefficient> coeffs;
  Real consistency_residual;  ///< largest unused Taylor row after the triangular solve
  int cusp_dim = 0;
  std::vector<RemainderCoeff> cusp_remainder;  ///< r = 1..cusp_dim + guard
  bool remainder_zero = false;
  std::string remainder_reason;
  /// max |predicted - computed| / error over r = cusp_dim+1.. when cusp_dim > 0.
  Real membership_ratio;

  std::string to_json() const;
};

struct DecomposeOptions {
  int remainder_terms = 0;   ///< 0: cusp_dim + 5
  FourierOptions fourier;
  bool compute_remainder = true;
};

Decomposition decompose(int k, long long D, Precision prec, const DecomposeOptions& opt = {});

/// Integer combination sum alpha_i f_{k, D_i}.
using FkdCombination = std::map<long long, mpz_class>;  // D -> alpha

/// f_{k,D} | T_n via the prime closed form and the Hecke recursions.
FkdCombination hecke_on_f(int k, long long D, long n);
std::string combination_to_string(int k, const FkdCombination& c);

struct HeckeCombination {
  int k = 0;
  long long D = 0;
  std::vector<long long> lambda;
  Obstruction obstruction;
  FkdCombination combination;
  FormExpr algebraic_part;  ///< sum alpha_i * algebraic part of f_{k,D_i}
  /// sum_n lambda_n T_n applied to the cusp remainder of f_{k,D} (vanishes with the obstruction)
  std::vector<RemainderCoeff> transported_remainder;
  /// sum alpha_i * cusp remainder of f_{k,D_i}
  std::vector<RemainderCoeff> constituent_remainder;
  /// max |coefficient| of (alg_D | phi_lambda) - sum alpha_i alg_i - constituent remainder, over checked terms
  Real transport_mismatch;
  bool remainder_zero = false;
  std::string to_json() const;
};

HeckeCombination hecke_combination(int k, long long D, const std::vector<long long>& lambda, Precision prec,
                                   const DecomposeOptions& opt = {});

}  // namespace meroform
