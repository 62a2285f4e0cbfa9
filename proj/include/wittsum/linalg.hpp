#ifndef WITTSUM_LINALG_HPP
#define WITTSUM_LINALG_HPP

#include <gmpxx.h>
#include <optional>
#include <vector>

namespace wittsum {

using QMat = std::vector<std::vector<mpq_class>>;
using QVec = std::vector<mpq_class>;
using ZMat = std::vector<std::vector<mpz_class>>;

// least-squares-free exact solve of A x = b (A is rows x cols, possibly
// rectangular); returns one solution when the system is consistent
std::optional<QVec> solve_exact(QMat A, QVec b);

mpq_class det_exact(QMat A);

// Smith normal form of an integer matrix: returns diagonal entries d_1 | d_2 | ...
// together with unimodular row/col transforms L, R such that L * A * R = D.
struct Smith {
    std::vector<mpz_class> diag;
    ZMat left;  // rows x rows
    ZMat right; // cols x cols
};
Smith smith_normal_form(ZMat A);

ZMat zmat_mul(const ZMat& A, const ZMat& B);
ZMat zmat_identity(int n);
// inverse of a unimodular integer matrix (det = +-1)
ZMat zmat_inverse_unimodular(const ZMat& A);
mpz_class zmat_det(ZMat A);

} // namespace wittsum

#endif
