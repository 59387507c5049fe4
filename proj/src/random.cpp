#include "qsegre/random.hpp"

namespace qsegre {

Vector gaussian_vector(Index dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) {
        v[i] = Complex{normal(rng), normal(rng)};
    }
    return v;
}

StateVector haar_state(int qubits, Rng& rng) {
    return StateVector::from_amplitudes(gaussian_vector(Index{1} << qubits, rng), true);
}

ProjectivePoint random_point(Index proj_dim, Rng& rng) {
    return ProjectivePoint(gaussian_vector(proj_dim + 1, rng));
}

Matrix haar_unitary(Index dim, Rng& rng) {
    Matrix g(dim, dim);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            g(i, j) = Complex{normal(rng), normal(rng)};
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the diagonal phases so the distribution is Haar.
    for (Index i = 0; i < dim; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= (d == Complex{0.0, 0.0}) ? Complex{1.0, 0.0} : d / std::abs(d);
    }
    return q;
}

} // namespace qsegre
