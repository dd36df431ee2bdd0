#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "multidep/random.hpp"

namespace multidep {

enum class CopulaFamily { independence, clayton, gumbel, frank, normal, student };

// Exchangeable copula: every pair of columns shares the same Kendall tau.
struct CopulaSpec {
  CopulaFamily family = CopulaFamily::independence;
  double tau = 0.0;  // Kendall's tau in [0, 1)
  int dimension = 2;
  int student_df = 3;  // student family only

  // Row label in power tables: "clayton", "student1", "normal", ...
  std::string label() const;
};

// Tokens: independence, clayton, gumbel, frank, normal, student<df> (student
// alone means df=3). Returns family and degrees of freedom.
std::pair<CopulaFamily, int> parse_copula_family(const std::string& token);

// Family parameter hitting a target Kendall tau:
//   clayton  theta = 2 tau / (1 - tau)
//   gumbel   theta = 1 / (1 - tau)
//   normal / student  rho = sin(pi tau / 2)
//   frank    theta solved from tau(theta) = 1 - (4/theta)(1 - D1(theta))
//            by bisection until |tau(theta) - tau| <= 1e-10
double kendall_to_param(CopulaFamily family, double tau);

// First Debye function D1(x) = (1/x) * integral_0^x t/(e^t - 1) dt, x > 0;
// exposed because the frank inversion rests on it.
double debye1(double x);

// N rows of `dimension` columns, each marginally Uniform(0,1), pairwise
// dependence at the spec's tau. normal/student use the equicorrelation factor
// construction (student divides by a chi-square mix) mapped through the cdf;
// clayton/gumbel/frank use Marshall-Olkin frailty sampling with gamma,
// positive-stable, and logarithmic-series frailty. Rows are generated one
// after the other, frailty/factor first, then columns left to right.
Eigen::MatrixXd sample_copula(const CopulaSpec& spec, int rows, RandomStream& stream);

}  // namespace multidep
