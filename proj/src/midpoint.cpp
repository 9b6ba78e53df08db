#include "ncnls/midpoint.hpp"

namespace ncnls {

std::vector<complex> solve_midpoint_increment(const FESpace& space, const MidpointOperator& op,
                                              std::span<const complex> u) {
  if (!op.weight) throw ContractViolation("solve_midpoint_increment: missing weight matrix");
  const SparseComplexMatrix a = linear_combination({
      {1.0 + op.a, space.mass()},
      {complex(0.0, op.b), space.stiffness()},
      {complex(0.0, -op.c), *op.weight},
  });
  const auto mu = space.mass().apply(u);
  const auto su = space.stiffness().apply(u);
  const auto wu = op.weight->apply(u);
  std::vector<complex> rhs(u.size());
  const complex ib(0.0, op.b), ic(0.0, op.c);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -(op.a * mu[i] + ib * su[i] - ic * wu[i]);
  return BandLU<complex>(a).solve(rhs);
}

}  // namespace ncnls
