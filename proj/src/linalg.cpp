#include "modlim/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace modlim {

IntMatrix IntMatrix::identity(std::size_t k) {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw InputError("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::column_vector(const std::vector<Int>& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

std::vector<Int> IntMatrix::col(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    std::vector<Int> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void IntMatrix::set_col(std::size_t j, const std::vector<Int>& v) {
    if (v.size() != rows_) throw InputError("set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InputError("matrix product: dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Int& b = rhs.at(k, j);
                if (b != 0) out.at(i, j) += a * b;
            }
        }
    }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("matrix sum: dimension mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("matrix difference: dimension mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * c;
    return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw InputError("apply: vector length mismatch");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (at(i, j) != 0 && v[j] != 0) acc += at(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

IntMatrix IntMatrix::reduced_mod(const Int& n) const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        Int r = data_[i] % n;
        if (r < 0) r += n;
        out.data_[i] = r;
    }
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) throw InputError("hstack: row mismatch");
    IntMatrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, a.cols_ + j) = b.at(i, j);
    }
    return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.cols_) throw InputError("vstack: column mismatch");
    IntMatrix out(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) out.at(a.rows_ + i, j) = b.at(i, j);
    return out;
}

IntMatrix IntMatrix::block_diag(const std::vector<IntMatrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
    IntMatrix out(r, c);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(ro + i, co + j) = b.at(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return out;
}

IntMatrix IntMatrix::kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << "[";
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (i) os << ",";
        os << data_[i];
    }
    os << "]";
    return os.str();
}

Int positive_gcd(const Int& a, const Int& b) {
    Int g = boost::multiprecision::gcd(a, b);
    return g < 0 ? Int(-g) : g;
}

std::vector<Modulus> divisors_of(Modulus n) {
    std::vector<Modulus> out;
    for (Modulus d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

EgcdResult egcd(const Int& a, const Int& b) {
    // Iterative extended Euclid; normalizes g >= 0.
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

namespace {

// Elementary operations with two-sided bookkeeping. Row ops act as
// S <- E S (U <- E U, U_inv <- U_inv E^-1), column ops as S <- S F
// (V <- V F, V_inv <- F^-1 V_inv).
struct SnfWork {
    IntMatrix s, u, u_inv, v, v_inv;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < s.cols(); ++c) std::swap(s.at(i, c), s.at(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (std::size_t r = 0; r < u_inv.rows(); ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < s.rows(); ++r) std::swap(s.at(r, i), s.at(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (std::size_t c = 0; c < v_inv.cols(); ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }
    // row_i += q * row_j
    void add_row(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < s.cols(); ++c) s.at(i, c) += q * s.at(j, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) += q * u.at(j, c);
        for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv.at(r, j) -= q * u_inv.at(r, i);
    }
    // col_j += q * col_i
    void add_col(std::size_t j, std::size_t i, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < s.rows(); ++r) s.at(r, j) += q * s.at(r, i);
        for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, j) += q * v.at(r, i);
        for (std::size_t c = 0; c < v_inv.cols(); ++c) v_inv.at(i, c) -= q * v_inv.at(j, c);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < s.cols(); ++c) s.at(i, c) = -s.at(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }
};

// Smallest nonzero absolute value in S[t.., t..], ties broken by lowest
// (row, col). Returns false when the trailing block is zero.
bool find_pivot(const IntMatrix& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < s.rows(); ++i) {
        for (std::size_t j = t; j < s.cols(); ++j) {
            const Int& x = s.at(i, j);
            if (x == 0) continue;
            Int a = x < 0 ? Int(-x) : x;
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    }
    return found;
}

// Quotient with minimal-magnitude remainder, |a - q*b| <= |b|/2.
// Keeps intermediate entries small during elimination.
Int balanced_quotient(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0) {
        Int ar = r < 0 ? Int(-r) : r;
        Int ab = b < 0 ? Int(-b) : b;
        if (2 * ar > ab) {
            if ((r < 0) == (b < 0)) ++q; else --q;
        }
    }
    return q;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SnfWork w{m, IntMatrix::identity(rows), IntMatrix::identity(rows),
              IntMatrix::identity(cols), IntMatrix::identity(cols)};

    const std::size_t steps = std::min(rows, cols);
    std::size_t t = 0;
    while (t < steps) {
        std::size_t pi = t, pj = t;
        if (!find_pivot(w.s, t, pi, pj)) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        // one reduction pass against the current global-minimum pivot;
        // any surviving remainder sends us back to pivot selection
        bool reduced_fully = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (w.s.at(i, t) == 0) continue;
            w.add_row(i, t, -balanced_quotient(w.s.at(i, t), w.s.at(t, t)));
            if (w.s.at(i, t) != 0) reduced_fully = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (w.s.at(t, j) == 0) continue;
            w.add_col(j, t, -balanced_quotient(w.s.at(t, j), w.s.at(t, t)));
            if (w.s.at(t, j) != 0) reduced_fully = false;
        }
        if (!reduced_fully) continue;

        // divisibility sweep: the pivot must divide the trailing block
        bool restart = false;
        for (std::size_t i = t + 1; i < rows && !restart; ++i) {
            for (std::size_t j = t + 1; j < cols && !restart; ++j) {
                if (w.s.at(i, j) % w.s.at(t, t) != 0) {
                    w.add_row(t, i, 1);
                    restart = true;
                }
            }
        }
        if (restart) continue;

        if (w.s.at(t, t) < 0) w.negate_row(t);
        ++t;
    }

    SnfResult out{std::move(w.s), std::move(w.u), std::move(w.v),
                  std::move(w.u_inv), std::move(w.v_inv), 0};
    const std::size_t d = std::min(out.S.rows(), out.S.cols());
    for (std::size_t i = 0; i < d; ++i)
        if (out.S.at(i, i) != 0) ++out.rank;
    return out;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("determinant: square matrix required");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    Int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

SmithSolver::SmithSolver(IntMatrix b) : b_(std::move(b)), f_(smith_normal_form(b_)) {
    const std::size_t cols = b_.cols();
    kernel_ = IntMatrix(cols, cols - f_.rank);
    for (std::size_t j = f_.rank; j < cols; ++j)
        for (std::size_t i = 0; i < cols; ++i)
            kernel_.at(i, j - f_.rank) = f_.V.at(i, j);
}

std::optional<std::vector<Int>> SmithSolver::solve(const std::vector<Int>& rhs) const {
    if (rhs.size() != b_.rows()) throw InputError("solve: rhs length mismatch");
    std::vector<Int> c = f_.U.apply(rhs);
    std::vector<Int> w(b_.cols(), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < f_.rank) {
            const Int& d = f_.S.at(i, i);
            if (c[i] % d != 0) return std::nullopt;
            w[i] = c[i] / d;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return f_.V.apply(w);
}

namespace {

IntMatrix with_mod_block(const IntMatrix& m, Modulus n) {
    return IntMatrix::hstack(m, IntMatrix::identity(m.rows()).scaled(Int(n)));
}

}  // namespace

IntMatrix compress_columns(const IntMatrix& g, const Modulus n) {
    if (n < 2) throw InputError("compress_columns: modulus must be >= 2");
    const std::size_t rows = g.rows();
    if (rows == 0) return IntMatrix(0, 0);
    SnfResult f = smith_normal_form(with_mod_block(g, n));
    std::vector<std::vector<Int>> kept;
    for (std::size_t i = 0; i < rows; ++i) {
        const Int& d = f.S.at(i, i);
        if (d == n) continue;  // contributes nothing beyond n*Z^rows
        std::vector<Int> c(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            Int x = (f.U_inv.at(r, i) * d) % n;
            if (x < 0) x += n;
            c[r] = x;
        }
        kept.push_back(std::move(c));
    }
    IntMatrix out(rows, kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j) out.set_col(j, kept[j]);
    return out;
}

IntMatrix preimage_generators(const IntMatrix& m, const IntMatrix& target, const Modulus n) {
    if (n < 2) throw InputError("preimage_generators: modulus must be >= 2");
    const std::size_t c = m.cols();
    if (m.rows() == 0) return IntMatrix::identity(c).reduced_mod(Int(n));
    IntMatrix b = m;
    if (target.cols() > 0) {
        if (target.rows() != m.rows()) throw InputError("preimage_generators: row mismatch");
        b = IntMatrix::hstack(b, target);
    }
    b = with_mod_block(b, n);
    SmithSolver solver(std::move(b));
    const IntMatrix& k = solver.kernel();
    IntMatrix proj(c, k.cols());
    for (std::size_t j = 0; j < k.cols(); ++j)
        for (std::size_t i = 0; i < c; ++i) proj.at(i, j) = k.at(i, j);
    return compress_columns(proj, n);
}

IntMatrix kernel_mod(const IntMatrix& m, const Modulus n) {
    return preimage_generators(m, IntMatrix(m.rows(), 0), n);
}

std::optional<std::vector<Int>> solve_mod(const IntMatrix& m, const std::vector<Int>& b,
                                          const Modulus n) {
    if (n < 2) throw InputError("solve_mod: modulus must be >= 2");
    if (b.size() != m.rows()) throw InputError("solve_mod: rhs length mismatch");
    SmithSolver solver(with_mod_block(m, n));
    auto z = solver.solve(b);
    if (!z) return std::nullopt;
    std::vector<Int> x(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) {
        Int r = (*z)[i] % n;
        if (r < 0) r += n;
        x[i] = r;
    }
    return x;
}

bool span_membership(const IntMatrix& m, const std::vector<Int>& v, const Modulus n) {
    return solve_mod(m, v, n).has_value();
}

}  // namespace modlim
