#pragma once

// Exact integer matrix arithmetic: Smith normal form, kernels and linear
// solving over Z and over Z/n (by lifting to Z with an appended n*I block).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modlim/errors.hpp"

namespace modlim {

using Int = boost::multiprecision::cpp_int;
using Modulus = std::int64_t;

/// Dense row-major matrix with arbitrary-precision integer entries.
/// Immutable by convention once handed to the algebra layer.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t k);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix column_vector(const std::vector<Int>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Int> col(std::size_t j) const;
    std::vector<Int> row(std::size_t i) const;
    void set_col(std::size_t j, const std::vector<Int>& v);

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix scaled(const Int& c) const;
    bool operator==(const IntMatrix& rhs) const = default;

    /// M * v, with v a column vector of length cols().
    std::vector<Int> apply(const std::vector<Int>& v) const;

    IntMatrix transpose() const;
    /// Entry-wise reduction into [0, n).
    IntMatrix reduced_mod(const Int& n) const;
    bool is_zero() const;

    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix block_diag(const std::vector<IntMatrix>& blocks);
    static IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

    /// Compact textual form, used for debugging and as a cache key.
    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

struct EgcdResult {
    Int g, u, v;  // g = gcd(a,b) >= 0 and u*a + v*b = g
};
EgcdResult egcd(const Int& a, const Int& b);

/// Smith normal form U*M*V = S with U, V unimodular, S diagonal,
/// diagonal entries nonnegative and each dividing the next (zeros last).
/// U_inv and V_inv are maintained alongside so that callers can change
/// basis in both directions without inverting anything.
struct SnfResult {
    IntMatrix S, U, V, U_inv, V_inv;
    std::size_t rank = 0;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Fraction-free determinant (Bareiss). Square input required.
Int determinant(const IntMatrix& m);

/// Reusable integer linear system B*z = b built on one Smith decomposition.
class SmithSolver {
public:
    explicit SmithSolver(IntMatrix b);

    /// A particular integer solution of B*z = b, if any.
    std::optional<std::vector<Int>> solve(const std::vector<Int>& rhs) const;

    /// Columns form a basis of the integer kernel of B.
    const IntMatrix& kernel() const { return kernel_; }
    const SnfResult& factorization() const { return f_; }
    const IntMatrix& matrix() const { return b_; }

private:
    IntMatrix b_;
    SnfResult f_;
    IntMatrix kernel_;
};

// --- arithmetic over Z/n (n >= 2), via the integer lift -------------------

/// Columns generate { x in (Z/n)^cols : M x = 0 (mod n) }.
IntMatrix kernel_mod(const IntMatrix& m, const Modulus n);

/// Some x with M x = b (mod n), entries reduced into [0, n).
std::optional<std::vector<Int>> solve_mod(const IntMatrix& m,
                                          const std::vector<Int>& b,
                                          const Modulus n);

/// True iff v lies in the column span of M over Z/n.
bool span_membership(const IntMatrix& m, const std::vector<Int>& v, const Modulus n);

/// Columns generate { x : M x in span(target) (mod n) }, pruned to at most
/// rows(M-domain) columns. target may have zero columns.
IntMatrix preimage_generators(const IntMatrix& m, const IntMatrix& target,
                              const Modulus n);

/// Canonical small generating set of span(g) + n*Z^rows, entries in [0, n).
IntMatrix compress_columns(const IntMatrix& g, const Modulus n);

Int positive_gcd(const Int& a, const Int& b);
std::vector<Modulus> divisors_of(Modulus n);

}  // namespace modlim
