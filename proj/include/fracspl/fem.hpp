#pragma once

// P1 finite elements on a uniform 1D mesh with piecewise-constant conductivity.
// Everything is symmetric tridiagonal after Dirichlet elimination, so matrices
// are stored as (diag, off) pairs and solved by LDL^T.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracspl {

struct Mesh1D {
    double length;
    std::size_t element_count;
    std::vector<double> conductivity;  // one k_e > 0 per element

    Mesh1D(double L, std::size_t M, std::vector<double> k) : length(L), element_count(M), conductivity(std::move(k)) {
        if (!(L > 0.0)) throw std::domain_error("Mesh1D: length must be positive");
        if (M < 2) throw std::domain_error("Mesh1D: need at least two elements");
        if (conductivity.size() != M) throw std::invalid_argument("Mesh1D: one conductivity per element");
        for (double ke : conductivity)
            if (!(ke > 0.0)) throw std::domain_error("Mesh1D: conductivity must be uniformly positive");
    }

    static Mesh1D uniform(double L, std::size_t M, double k_bar) {
        return Mesh1D(L, M, std::vector<double>(M, k_bar));
    }

    double h() const { return length / static_cast<double>(element_count); }
    std::size_t interior_count() const { return element_count - 1; }
    double node(std::size_t i) const { return static_cast<double>(i) * h(); }
    double min_conductivity() const {
        double k = conductivity[0];
        for (double ke : conductivity) k = std::min(k, ke);
        return k;
    }
};

/// Symmetric tridiagonal matrix on the interior nodes.
struct TriDiag {
    std::vector<double> diag;
    std::vector<double> off;  // size diag.size() - 1

    std::size_t dim() const { return diag.size(); }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            double s = diag[i] * x[i];
            if (i > 0) s += off[i - 1] * x[i - 1];
            if (i + 1 < dim()) s += off[i] * x[i + 1];
            y[i] = s;
        }
        return y;
    }

    double quad(const std::vector<double>& x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) s += diag[i] * x[i] * x[i];
        for (std::size_t i = 0; i + 1 < dim(); ++i) s += 2.0 * off[i] * x[i] * x[i + 1];
        return s;
    }

    friend TriDiag operator+(const TriDiag& a, const TriDiag& b) {
        TriDiag r = a;
        for (std::size_t i = 0; i < r.diag.size(); ++i) r.diag[i] += b.diag[i];
        for (std::size_t i = 0; i < r.off.size(); ++i) r.off[i] += b.off[i];
        return r;
    }

    TriDiag scaled(double s) const {
        TriDiag r = *this;
        for (double& d : r.diag) d *= s;
        for (double& o : r.off) o *= s;
        return r;
    }
};

/// LDL^T factorization of an SPD tridiagonal matrix.
class TriDiagFactor {
  public:
    explicit TriDiagFactor(const TriDiag& A) : d_(A.diag.size()), l_(A.off.size()) {
        d_[0] = A.diag[0];
        if (!(d_[0] > 0.0)) throw std::runtime_error("TriDiagFactor: matrix not positive definite");
        for (std::size_t i = 1; i < d_.size(); ++i) {
            l_[i - 1] = A.off[i - 1] / d_[i - 1];
            d_[i] = A.diag[i] - l_[i - 1] * A.off[i - 1];
            if (!(d_[i] > 0.0)) throw std::runtime_error("TriDiagFactor: matrix not positive definite");
        }
    }

    std::vector<double> solve(std::vector<double> b) const {
        for (std::size_t i = 1; i < d_.size(); ++i) b[i] -= l_[i - 1] * b[i - 1];
        for (std::size_t i = 0; i < d_.size(); ++i) b[i] /= d_[i];
        for (std::size_t i = d_.size() - 1; i-- > 0;) b[i] -= l_[i] * b[i + 1];
        return b;
    }

  private:
    std::vector<double> d_;
    std::vector<double> l_;
};

/// Assembled interior matrices: mass, k-weighted stiffness, unit-conductivity
/// laplacian (for H^1 norms), and the elliptic form K + a*M.
struct FemSystem {
    Mesh1D mesh;
    double a;
    TriDiag mass;
    TriDiag stiffness;
    TriDiag laplacian;
    TriDiag elliptic;

    double l2_sq(const std::vector<double>& x) const { return mass.quad(x); }
    double h1_sq(const std::vector<double>& x) const { return mass.quad(x) + laplacian.quad(x); }
    double grad_sq(const std::vector<double>& x) const { return laplacian.quad(x); }
    double k_grad_sq(const std::vector<double>& x) const { return stiffness.quad(x); }
};

inline FemSystem assemble(const Mesh1D& mesh, double a) {
    if (!(a >= 0.0)) throw std::domain_error("assemble: a must be nonnegative");
    const std::size_t n = mesh.interior_count();
    const double h = mesh.h();
    TriDiag mass{std::vector<double>(n, 4.0 * h / 6.0), std::vector<double>(n ? n - 1 : 0, h / 6.0)};
    TriDiag stiff{std::vector<double>(n), std::vector<double>(n ? n - 1 : 0)};
    TriDiag lap{std::vector<double>(n), std::vector<double>(n ? n - 1 : 0)};
    for (std::size_t i = 0; i < n; ++i) {
        const double kl = mesh.conductivity[i];
        const double kr = mesh.conductivity[i + 1];
        stiff.diag[i] = (kl + kr) / h;
        lap.diag[i] = 2.0 / h;
        if (i + 1 < n) {
            stiff.off[i] = -kr / h;
            lap.off[i] = -1.0 / h;
        }
    }
    TriDiag elliptic = stiff + mass.scaled(a);
    return FemSystem{mesh, a, std::move(mass), std::move(stiff), std::move(lap), std::move(elliptic)};
}

// small vector helpers
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace fracspl
