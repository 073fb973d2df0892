#pragma once

#include <optional>
#include <vector>

#include "gact/cyclotomic.hpp"

namespace gact {

using CVec = std::vector<Cyc>;
using CMat = std::vector<CVec>;  // row-major

CVec cvec_zero(const FieldPtr& f, int n);
CMat cmat_zero(const FieldPtr& f, int rows, int cols);
CMat cmat_identity(const FieldPtr& f, int n);
CMat cmat_mul(const CMat& a, const CMat& b);
CVec cmat_apply(const CMat& a, const CVec& v);
bool cvec_is_zero(const CVec& v);

/// Rank by exact Gaussian elimination.
int cmat_rank(CMat m);

/// Basis of the right kernel {x : m x = 0}.
std::vector<CVec> cmat_kernel(CMat m);

/// Solve m x = b; nullopt when inconsistent.
std::optional<CVec> cmat_solve(CMat m, CVec b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<CMat> cmat_inverse(const CMat& m);

/// One solution of A x = b (mod mod), entries reduced to [0, mod); nullopt
/// when unsolvable. Smith-normal-form based, exact over Z/mod.
std::optional<std::vector<long>> solve_mod(
    const std::vector<std::vector<long>>& a, const std::vector<long>& b,
    long mod);

}  // namespace gact
