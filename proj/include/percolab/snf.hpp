#pragma once

#include <vector>

#include "percolab/numeric.hpp"

namespace percolab {

using IntMatrix = std::vector<std::vector<BigInt>>;

IntMatrix identity_matrix(int n);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

// Exact Smith normal form over Z: U M V = D with U, V unimodular and the
// diagonal of D a divisibility chain d1 | d2 | ... Entry growth is kept in
// check by smallest-pivot selection; intended for small matrices.
struct SmithNormalForm {
  IntMatrix u, d, v;
};

SmithNormalForm smith_normal_form(const IntMatrix& m);

// Smith form of M over Z/modulus (modulus a multiple of |det M|): returns the
// invariant factors of the integer cokernel, each normalized to a positive
// divisor of `modulus` (a zero pivot mod `modulus` means the factor equals
// `modulus`), and the column transform V reduced mod `modulus`. Entries stay
// below the modulus throughout, which keeps large instances tractable; row
// transforms are not tracked (generators only need V).
struct SmithModResult {
  std::vector<BigInt> diag;
  IntMatrix v;  // entries in [0, modulus)
};

SmithModResult smith_normal_form_mod(IntMatrix m, const BigInt& modulus);

}  // namespace percolab
