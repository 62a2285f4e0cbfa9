#include "wittsum/linalg.hpp"

#include "wittsum/util.hpp"

namespace wittsum {

std::optional<QVec> solve_exact(QMat A, QVec b) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    require(b.size() == rows, "LengthMismatch", "solve_exact: rhs length");

    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        mpq_class inv = 1 / A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            mpq_class f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    QVec x(cols, mpq_class(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

mpq_class det_exact(QMat A) {
    const size_t n = A.size();
    mpq_class det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            det = -det;
        }
        det *= A[c][c];
        mpq_class inv = 1 / A[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (A[i][c] == 0) continue;
            mpq_class f = A[i][c] * inv;
            for (size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return det;
}

ZMat zmat_identity(int n) {
    ZMat I(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

ZMat zmat_mul(const ZMat& A, const ZMat& B) {
    const size_t n = A.size(), m = B[0].size(), k = B.size();
    ZMat C(n, std::vector<mpz_class>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

mpz_class zmat_det(ZMat A) {
    // Bareiss fraction-free elimination
    const size_t n = A.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t c = 0; c + 1 < n; ++c) {
        size_t piv = c;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            sign = -sign;
        }
        for (size_t i = c + 1; i < n; ++i)
            for (size_t j = c + 1; j < n; ++j) {
                mpz_class t = A[i][j] * A[c][c] - A[i][c] * A[c][j];
                mpz_divexact(A[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = A[c][c];
    }
    return sign > 0 ? A[n - 1][n - 1] : mpz_class(-A[n - 1][n - 1]);
}

ZMat zmat_inverse_unimodular(const ZMat& A) {
    const int n = static_cast<int>(A.size());
    // adjugate over Q would do, but Gauss over Q and a final integrality
    // check is simpler and the matrices are at most 3x3 here
    QMat M(n, QVec(2 * n, mpq_class(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[i][j] = mpq_class(A[i][j]);
        M[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && M[piv][c] == 0) ++piv;
        require(piv < n, "NotUnimodular", "singular matrix in zmat_inverse_unimodular");
        std::swap(M[piv], M[c]);
        mpq_class inv = 1 / M[c][c];
        for (int j = 0; j < 2 * n; ++j) M[c][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0) continue;
            mpq_class f = M[i][c];
            for (int j = 0; j < 2 * n; ++j) M[i][j] -= f * M[c][j];
        }
    }
    ZMat out(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpq_class v = M[i][n + j];
            require(v.get_den() == 1, "NotUnimodular", "non-integer inverse entry");
            out[i][j] = v.get_num();
        }
    return out;
}

namespace {

void row_swap(ZMat& A, ZMat& L, size_t i, size_t j) {
    std::swap(A[i], A[j]);
    std::swap(L[i], L[j]);
}

void col_swap(ZMat& A, ZMat& R, size_t i, size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : R) std::swap(row[i], row[j]);
}

void row_addmul(ZMat& A, ZMat& L, size_t dst, size_t src, const mpz_class& f) {
    for (size_t j = 0; j < A[dst].size(); ++j) A[dst][j] += f * A[src][j];
    for (size_t j = 0; j < L[dst].size(); ++j) L[dst][j] += f * L[src][j];
}

void col_addmul(ZMat& A, ZMat& R, size_t dst, size_t src, const mpz_class& f) {
    for (auto& row : A) row[dst] += f * row[src];
    for (auto& row : R) row[dst] += f * row[src];
}

void row_negate(ZMat& A, ZMat& L, size_t i) {
    for (auto& v : A[i]) v = -v;
    for (auto& v : L[i]) v = -v;
}

} // namespace

Smith smith_normal_form(ZMat A) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    ZMat L = zmat_identity(static_cast<int>(rows));
    ZMat R = zmat_identity(static_cast<int>(cols));
    Smith out;

    size_t t = 0;
    while (t < rows && t < cols) {
        // find a nonzero pivot at or below/right of (t,t)
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows && pi == rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (A[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break; // rest is zero
        if (pi != t) row_swap(A, L, pi, t);
        if (pj != t) col_swap(A, R, pj, t);

        // euclidean reduction until column t and row t are clear
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < rows; ++i) {
                if (A[i][t] == 0) continue;
                mpz_class q = A[i][t] / A[t][t]; // truncated division is fine
                if (q != 0) row_addmul(A, L, i, t, -q);
                if (A[i][t] != 0) {
                    row_swap(A, L, i, t);
                    dirty = true;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (A[t][j] == 0) continue;
                mpz_class q = A[t][j] / A[t][t];
                if (q != 0) col_addmul(A, R, j, t, -q);
                if (A[t][j] != 0) {
                    col_swap(A, R, j, t);
                    dirty = true;
                }
            }
        }
        if (A[t][t] < 0) row_negate(A, L, t);
        ++t;
    }

    // enforce the divisibility chain d_i | d_{i+1}
    for (size_t i = 0; t > 0 && i + 1 < t;) {
        if (A[i + 1][i + 1] % A[i][i] == 0) {
            ++i;
            continue;
        }
        // stack the two diagonal entries into a 2x2 block and redo it
        col_addmul(A, R, i, i + 1, 1);
        // now column i has entries A[i][i], A[i+1][i+1]; clear with row ops
        bool dirty = true;
        while (dirty) {
            dirty = false;
            if (A[i + 1][i] != 0) {
                mpz_class q = A[i + 1][i] / A[i][i];
                if (q != 0) row_addmul(A, L, i + 1, i, -q);
                if (A[i + 1][i] != 0) {
                    row_swap(A, L, i + 1, i);
                    dirty = true;
                }
            }
            if (A[i][i + 1] != 0) {
                mpz_class q = A[i][i + 1] / A[i][i];
                if (q != 0) col_addmul(A, R, i + 1, i, -q);
                if (A[i][i + 1] != 0) {
                    col_swap(A, R, i + 1, i);
                    dirty = true;
                }
            }
        }
        if (A[i][i] < 0) row_negate(A, L, i);
        if (A[i + 1][i + 1] < 0) row_negate(A, L, i + 1);
        i = 0; // chain may be disturbed upstream, restart scan
    }

    for (size_t i = 0; i < t; ++i) out.diag.push_back(A[i][i]);
    out.left = std::move(L);
    out.right = std::move(R);
    return out;
}

} // namespace wittsum
