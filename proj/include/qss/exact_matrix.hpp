#pragma once

#include <complex>
#include <vector>

#include "qss/rational.hpp"

namespace qss {

// Dense matrix over Q(i), row-major. Subspaces throughout the library are
// represented as column spans of these; reduced column echelon form is the
// canonical basis, so two subspaces are equal iff their canonical matrices are.
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static ExactMatrix identity(int n);
    static ExactMatrix zero(int rows, int cols) { return ExactMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    GaussianRational& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const GaussianRational& at(int r, int c) const {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }

    bool is_zero() const;
    ExactMatrix transpose() const;
    ExactMatrix conjugate() const;
    ExactMatrix adjoint() const { return conjugate().transpose(); }

    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    ExactMatrix scaled(const GaussianRational& c) const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<std::complex<double>> to_complex() const;

  private:
    int rows_, cols_;
    std::vector<GaussianRational> data_;
};

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b);

// In-place reduced row echelon form; returns pivot column indices (rank = their count).
std::vector<int> rref_in_place(ExactMatrix& m);

int exact_rank(const ExactMatrix& m);

// Basis of the right kernel {x : m x = 0}, one column per basis vector
// (cols(m) x nullity), in reduced column echelon form.
ExactMatrix exact_kernel(const ExactMatrix& m);

// Reduced column echelon form with zero columns dropped: the canonical basis
// of the column span. An all-zero matrix yields rows x 0.
ExactMatrix column_span_basis(const ExactMatrix& m);

// span(a) subseteq span(b)? Both are bases/spanning sets living in the same ambient dim.
bool span_contains(const ExactMatrix& b, const ExactMatrix& a);

// Canonical basis of span(a) + span(b) and of span(a) cap span(b).
ExactMatrix span_sum(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix span_intersection(const ExactMatrix& a, const ExactMatrix& b);

// Rows spanning {y : y a = 0} (left annihilator of the column span), as a matrix
// whose rows are the functionals; (cols annihilated) = ambient - rank.
ExactMatrix left_annihilator(const ExactMatrix& a);

// Orthogonal complement of the column span w.r.t. the standard Hermitian form:
// basis of {x : a^H x = 0}.
ExactMatrix orthogonal_complement(const ExactMatrix& a);

// Solve m x = rhs (single column); returns true and writes x if consistent.
bool exact_solve(const ExactMatrix& m, const ExactMatrix& rhs, ExactMatrix& x);

}  // namespace qss
