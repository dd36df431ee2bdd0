#pragma once

#include <string>
#include <vector>

namespace multidep {

// The marginal laws of the power experiments: uniform, Poisson(1),
// Poisson(20), rounded Pareto, Cauchy, Student t3 with an atom of mass 0.05
// at 0, and Bernoulli(1/2).
enum class MarginalKind { U, P1, P20, RP, CA, SA, B };

MarginalKind parse_marginal(const std::string& token);
std::string marginal_token(MarginalKind kind);
// All seven kinds in their canonical order U, P1, P20, RP, CA, SA, B.
const std::vector<MarginalKind>& all_marginals();

// Quantile map on [0, 1]; nondecreasing in u for every kind.
//   U    u
//   P1   smallest k with Poisson(1) cdf >= u
//   P20  smallest k with Poisson(20) cdf >= u
//   RP   smallest k in N0 with 1 - 1/(k+1)^(1/3) >= u, i.e.
//        ceil((1-u)^-3) - 1
//   CA   tan(pi (u - 1/2))
//   SA   quantile of F(x) = 0.95 F_t3(x) + 0.05 1{x >= 0}; the atom absorbs
//        u in [0.475, 0.525)
//   B    1{u >= 1/2}
double marginal_quantile(MarginalKind kind, double u);

}  // namespace multidep
