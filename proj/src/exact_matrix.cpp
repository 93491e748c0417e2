#include "qss/exact_matrix.hpp"

#include <stdexcept>

namespace qss {

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

bool ExactMatrix::is_zero() const {
    for (const auto& v : data_)
        if (!v.is_zero()) return false;
    return true;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

ExactMatrix ExactMatrix::conjugate() const {
    ExactMatrix t(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(r, c) = at(r, c).conj();
    return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    ExactMatrix p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const GaussianRational& a = at(r, k);
            if (a.is_zero()) continue;
            for (int c = 0; c < o.cols_; ++c) {
                if (o.at(k, c).is_zero()) continue;
                p.at(r, c) += a * o.at(k, c);
            }
        }
    return p;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    ExactMatrix s = *this;
    for (size_t i = 0; i < data_.size(); ++i) s.data_[i] += o.data_[i];
    return s;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    ExactMatrix s = *this;
    for (size_t i = 0; i < data_.size(); ++i) s.data_[i] -= o.data_[i];
    return s;
}

ExactMatrix ExactMatrix::scaled(const GaussianRational& c) const {
    ExactMatrix s = *this;
    for (auto& v : s.data_) v *= c;
    return s;
}

std::vector<std::complex<double>> ExactMatrix::to_complex() const {
    std::vector<std::complex<double>> out(data_.size());
    for (size_t i = 0; i < data_.size(); ++i)
        out[i] = {data_[i].re_double(), data_[i].im_double()};
    return out;
}

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    ExactMatrix m(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
        for (int c = 0; c < b.cols(); ++c) m.at(r, a.cols() + c) = b.at(r, c);
    }
    return m;
}

ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack col mismatch");
    ExactMatrix m(a.rows() + b.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) m.at(a.rows() + r, c) = b.at(r, c);
    return m;
}

std::vector<int> rref_in_place(ExactMatrix& m) {
    std::vector<int> pivots;
    int lead = 0;
    for (int c = 0; c < m.cols() && lead < m.rows(); ++c) {
        int p = -1;
        for (int r = lead; r < m.rows(); ++r)
            if (!m.at(r, c).is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != lead)
            for (int cc = 0; cc < m.cols(); ++cc) std::swap(m.at(p, cc), m.at(lead, cc));
        GaussianRational inv = GaussianRational(1) / m.at(lead, c);
        for (int cc = c; cc < m.cols(); ++cc) m.at(lead, cc) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == lead || m.at(r, c).is_zero()) continue;
            GaussianRational f = m.at(r, c);
            for (int cc = c; cc < m.cols(); ++cc) m.at(r, cc) -= f * m.at(lead, cc);
        }
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

int exact_rank(const ExactMatrix& m) {
    ExactMatrix w = m;
    return static_cast<int>(rref_in_place(w).size());
}

ExactMatrix exact_kernel(const ExactMatrix& m) {
    ExactMatrix w = m;
    std::vector<int> pivots = rref_in_place(w);
    int n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    ExactMatrix k(n, static_cast<int>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        int fc = free_cols[j];
        k.at(fc, static_cast<int>(j)) = GaussianRational(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            k.at(pivots[pi], static_cast<int>(j)) = -w.at(static_cast<int>(pi), fc);
    }
    return k;
}

ExactMatrix column_span_basis(const ExactMatrix& m) {
    ExactMatrix t = m.transpose();
    std::vector<int> pivots = rref_in_place(t);
    ExactMatrix basis(m.rows(), static_cast<int>(pivots.size()));
    for (size_t j = 0; j < pivots.size(); ++j)
        for (int r = 0; r < m.rows(); ++r) basis.at(r, static_cast<int>(j)) = t.at(static_cast<int>(j), r);
    return basis;
}

bool span_contains(const ExactMatrix& b, const ExactMatrix& a) {
    if (a.rows() != b.rows()) throw std::invalid_argument("span_contains ambient mismatch");
    if (a.cols() == 0) return true;
    int rb = exact_rank(b);
    return exact_rank(hstack(b, a)) == rb;
}

ExactMatrix span_sum(const ExactMatrix& a, const ExactMatrix& b) {
    return column_span_basis(hstack(a, b));
}

ExactMatrix span_intersection(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("span_intersection ambient mismatch");
    if (a.cols() == 0 || b.cols() == 0) return ExactMatrix(a.rows(), 0);
    ExactMatrix stacked = hstack(a, b.scaled(GaussianRational(-1)));
    ExactMatrix k = exact_kernel(stacked);
    ExactMatrix xa(a.cols(), k.cols());
    for (int r = 0; r < a.cols(); ++r)
        for (int c = 0; c < k.cols(); ++c) xa.at(r, c) = k.at(r, c);
    return column_span_basis(a * xa);
}

ExactMatrix left_annihilator(const ExactMatrix& a) {
    return exact_kernel(a.transpose()).transpose();
}

ExactMatrix orthogonal_complement(const ExactMatrix& a) {
    return column_span_basis(exact_kernel(a.adjoint()));
}

bool exact_solve(const ExactMatrix& m, const ExactMatrix& rhs, ExactMatrix& x) {
    if (rhs.cols() != 1 || rhs.rows() != m.rows()) throw std::invalid_argument("exact_solve shape");
    ExactMatrix aug = hstack(m, rhs);
    std::vector<int> pivots = rref_in_place(aug);
    for (int c : pivots)
        if (c == m.cols()) return false;
    x = ExactMatrix(m.cols(), 1);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        x.at(pivots[pi], 0) = aug.at(static_cast<int>(pi), m.cols());
    return true;
}

}  // namespace qss
