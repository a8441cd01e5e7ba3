// Pfaffian of a real skew-symmetric matrix by Parlett-Reid elimination.
#include <cmath>
#include <cstddef>

#include "tcent/freefermion.hpp"
#include "tcent/util.hpp"

namespace tcent {

double pfaffian(Eigen::MatrixXd a) {
    const auto n = a.rows();
    if (a.cols() != n) throw DomainError("pfaffian: matrix must be square");
    if (n % 2 != 0) return 0.0;
    if (n == 0) return 1.0;
    double pf = 1.0;
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        // Pivot: largest |a(i, k)| for i > k keeps the elimination stable.
        Eigen::Index p = k + 1;
        double best = std::abs(a(k + 1, k));
        for (Eigen::Index i = k + 2; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                p = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (p != k + 1) {
            a.row(p).swap(a.row(k + 1));
            a.col(p).swap(a.col(k + 1));
            pf = -pf;
        }
        pf *= a(k, k + 1); // superdiagonal of the tridiagonal factor
        if (k + 2 < n) {
            const auto m = n - (k + 2);
            // Rank-2 update zeroing column k below row k+1 while preserving
            // skew symmetry of the trailing block.
            Eigen::VectorXd tau = a.block(k + 2, k, m, 1) / a(k + 1, k);
            Eigen::VectorXd col = a.block(k + 2, k + 1, m, 1);
            a.block(k + 2, k + 2, m, m) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

} // namespace tcent
