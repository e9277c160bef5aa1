#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace tz {

using ModMatrix = std::vector<std::vector<long>>;

// Howell normal form of the row span over Z/N. Zero rows dropped.
ModMatrix howell_form(ModMatrix rows, long N);

// Some x with A x = b (mod N), or nothing. A is rows x cols.
std::optional<std::vector<long>> solve_mod(const ModMatrix& A, const std::vector<long>& b, long N);

// true iff v lies in the row span represented by a Howell form
bool in_row_span(const ModMatrix& howell, std::vector<long> v, long N);

using BigMatrix = std::vector<std::vector<mpz_class>>;

// Smith form D = P A Q. Only the diagonal and the inverse of P are kept
// (columns of P^{-1} give the new basis of the target).
struct SmithResult {
  std::vector<mpz_class> diag;  // nonnegative, d_i | d_{i+1} not enforced
  BigMatrix p_inverse;          // rows x rows
};
SmithResult smith_normal_form(BigMatrix A);

// Integer kernel basis of A (rows x cols), columns returned as vectors.
std::vector<std::vector<mpz_class>> integer_kernel(BigMatrix A);

// Cyclic decomposition of a finite abelian group given by its elements as
// exponent vectors over Z/orders[i]. Returns generator indices (into elems)
// with their orders; the product of orders equals the group size.
struct CyclicDecomposition {
  std::vector<int> gens;
  std::vector<long> orders;
};
CyclicDecomposition cyclic_decomposition(const std::vector<std::vector<long>>& elems,
                                         const std::vector<long>& moduli);

}  // namespace tz
