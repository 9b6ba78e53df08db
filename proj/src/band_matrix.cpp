#include "ncnls/band_lu.hpp"
#include "ncnls/band_matrix.hpp"

namespace ncnls {

namespace {

template <class Dst, class Src, class Coef>
void axpy(std::vector<Dst>& dst, const std::vector<Src>& src, Coef c) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
}

}  // namespace

SparseComplexMatrix linear_combination(std::initializer_list<MatrixTerm> terms) {
  if (terms.size() == 0) throw ContractViolation("linear_combination: no terms");
  const RealBandMatrix& first = terms.begin()->matrix;
  SparseComplexMatrix out(first.size(), first.half_bandwidth(), first.border());
  for (const auto& term : terms) {
    if (!term.matrix.same_shape(first))
      throw ContractViolation("linear_combination: matrices have different patterns");
    if (term.coefficient == complex{}) continue;
    axpy(out.band_data(), term.matrix.band_data(), term.coefficient);
    axpy(out.right_data(), term.matrix.right_data(), term.coefficient);
    axpy(out.bottom_data(), term.matrix.bottom_data(), term.coefficient);
  }
  return out;
}

SparseComplexMatrix to_complex(const RealBandMatrix& a) { return linear_combination({{1.0, a}}); }

std::vector<complex> solve_complex_system(const SparseComplexMatrix& a, std::span<const complex> rhs) {
  if (rhs.size() != a.size()) throw ContractViolation("solve_complex_system: size mismatch");
  return BandLU<complex>(a).solve(rhs);
}

}  // namespace ncnls
