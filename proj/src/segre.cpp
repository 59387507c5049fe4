#include "qsegre/segre.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "qsegre/observables.hpp"
#include "qsegre/random.hpp"

namespace qsegre {

// ---------------------------------------------------------------------------
// Shapes and minors
// ---------------------------------------------------------------------------

SegreShape::SegreShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ShapeMismatchError("shape needs at least one factor");
    for (int k : dims_) {
        if (k < 1) throw ShapeMismatchError("projective dimensions must be positive");
    }
}

SegreShape SegreShape::qubit_composition(const std::vector<int>& parts) {
    std::vector<int> dims;
    dims.reserve(parts.size());
    for (int m : parts) {
        if (m < 1 || m > 26) throw ShapeMismatchError("qubit block sizes must be in 1..26");
        dims.push_back((1 << m) - 1);
    }
    return SegreShape(std::move(dims));
}

Index SegreShape::target_dim() const {
    Index product = 1;
    for (int k : dims_) product *= k + 1;
    return product - 1;
}

std::vector<MinorIndex> enumerate_minors(int k, int ell) {
    std::vector<MinorIndex> out;
    for (Index j = 0; j < k + 1; ++j) {
        for (Index r = j + 1; r < k + 1; ++r) {
            for (Index s = 0; s < ell + 1; ++s) {
                for (Index t = s + 1; t < ell + 1; ++t) {
                    out.push_back(MinorIndex{{j, r}, {s, t}});
                }
            }
        }
    }
    return out;
}

std::int64_t minor_count(int k, int ell) {
    return std::int64_t{k} * (k + 1) * ell * (ell + 1) / 4;
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

Vector kronecker(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

ProjectivePoint segre_embed(const ProjectivePoint& a, const ProjectivePoint& b) {
    return ProjectivePoint(kronecker(a.coords(), b.coords()));
}

ProjectivePoint generalized_segre_embed(const std::vector<ProjectivePoint>& points,
                                        const SegreShape& shape) {
    if (points.size() != shape.factors()) {
        throw ShapeMismatchError("point count does not match the shape");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != shape.dims()[i]) {
            throw ShapeMismatchError("point " + std::to_string(i + 1) +
                                     " does not live in P^" + std::to_string(shape.dims()[i]));
        }
    }
    Vector acc = points.front().coords();
    for (std::size_t i = 1; i < points.size(); ++i) {
        acc = kronecker(acc, points[i].coords());
    }
    return ProjectivePoint(std::move(acc));
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Matrix reshape_rows(const Vector& v, Index rows) {
    return Eigen::Map<const RowMajor>(v.data(), rows, v.size() / rows);
}

double worst_minor_of(const Matrix& m) {
    double worst = 0.0;
    for (Index j = 0; j + 1 < m.rows(); ++j) {
        for (Index k = j + 1; k < m.rows(); ++k) {
            for (Index s = 0; s + 1 < m.cols(); ++s) {
                for (Index t = s + 1; t < m.cols(); ++t) {
                    worst = std::max(worst, std::abs(m(j, s) * m(k, t) - m(j, t) * m(k, s)));
                }
            }
        }
    }
    return worst;
}

struct Rank1Split {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    Vector left;  // unit row-space factor
    Vector right; // unit column-space factor, M ~ sigma1 * left * right^T
};

Rank1Split rank1_split(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Rank1Split split;
    split.sigma1 = svd.singularValues()[0];
    split.sigma2 = svd.singularValues().size() > 1 ? svd.singularValues()[1] : 0.0;
    split.left = svd.matrixU().col(0);
    split.right = svd.matrixV().col(0).conjugate();
    return split;
}

/// Rotates the global phase so the first nonvanishing entry is real positive.
Vector canonical_phase(Vector v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            break;
        }
    }
    return v;
}

MembershipResult membership_unit(const Vector& unit, std::span<const int> dims, double epsilon) {
    if (dims.size() == 1) return MembershipResult{true, 0.0};
    const Matrix block = reshape_rows(unit, dims[0] + 1);
    const double worst = worst_minor_of(block);
    if (dims.size() == 2) return MembershipResult{worst < epsilon, worst};
    if (worst >= epsilon) return MembershipResult{false, worst};
    const Rank1Split split = rank1_split(block);
    MembershipResult rest = membership_unit(split.right, dims.subspan(1), epsilon);
    rest.worst_minor = std::max(rest.worst_minor, worst);
    return rest;
}

} // namespace

MembershipResult membership(const ProjectivePoint& z, const SegreShape& shape, double epsilon) {
    if (z.coords().size() != shape.target_dim() + 1) {
        throw ShapeMismatchError("point has " + std::to_string(z.coords().size()) +
                                 " coordinates, shape target needs " +
                                 std::to_string(shape.target_dim() + 1));
    }
    return membership_unit(z.unit(), shape.dims(), epsilon);
}

// ---------------------------------------------------------------------------
// Hypercube
// ---------------------------------------------------------------------------

Hypercube hypercube(int n) {
    if (n < 2) throw Error("hypercube needs at least 2 qubits");
    if (n > 16) throw TooLargeError("hypercube with 2^" + std::to_string(n - 1) + " vertices");
    Hypercube cube;
    cube.n = n;
    const unsigned width = static_cast<unsigned>(n - 1);
    const unsigned count = 1U << width;
    for (unsigned mask = 0; mask < count; ++mask) {
        cube.vertices.push_back(HypercubeVertex{mask, n - 1});
    }
    for (unsigned mask = 0; mask < count; ++mask) {
        for (int j = 1; j <= n - 1; ++j) {
            const unsigned bit = 1U << (j - 1);
            if ((mask & bit) == 0) {
                cube.edges.push_back(HypercubeEdge{HypercubeVertex{mask, n - 1},
                                                   HypercubeVertex{mask | bit, n - 1}, j});
            }
        }
    }
    return cube;
}

std::vector<std::vector<int>> maximal_paths(int n) {
    if (n < 2) throw Error("hypercube needs at least 2 qubits");
    if (n > 9) throw TooLargeError("(n-1)! paths is too many beyond n = 9");
    std::vector<int> labels(static_cast<std::size_t>(n - 1));
    std::iota(labels.begin(), labels.end(), 1);
    std::vector<std::vector<int>> paths;
    do {
        paths.push_back(labels);
    } while (std::next_permutation(labels.begin(), labels.end()));
    return paths;
}

ProjectivePoint embed_along_path(const std::vector<ProjectivePoint>& points,
                                 const std::vector<int>& order) {
    const int n = static_cast<int>(points.size());
    if (static_cast<int>(order.size()) != n - 1) {
        throw ShapeMismatchError("path must contract every boundary exactly once");
    }
    struct Part {
        ProjectivePoint point;
        int first, last; // original slots, 1-based
    };
    std::vector<Part> parts;
    parts.reserve(points.size());
    for (int i = 0; i < n; ++i) {
        parts.push_back(Part{points[static_cast<std::size_t>(i)], i + 1, i + 1});
    }
    for (int label : order) {
        bool merged = false;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            if (parts[i].last == label && parts[i + 1].first == label + 1) {
                parts[i] = Part{segre_embed(parts[i].point, parts[i + 1].point), parts[i].first,
                                parts[i + 1].last};
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                merged = true;
                break;
            }
        }
        if (!merged) {
            throw ShapeMismatchError("boundary " + std::to_string(label) +
                                     " contracted twice in path");
        }
    }
    return parts.front().point;
}

SegreShape vertex_shape(const HypercubeVertex& v, int n) {
    if (v.width != n - 1) throw ShapeMismatchError("vertex width does not match qubit count");
    std::vector<int> cuts;
    for (int i = 1; i <= n - 1; ++i) {
        if (!v.bit(i)) cuts.push_back(i);
    }
    return SegreShape::qubit_composition(composition_from_cuts(cuts, n));
}

bool lives_in_vertex(const ProjectivePoint& z, const HypercubeVertex& v, int n, double epsilon) {
    return membership(z, vertex_shape(v, n), epsilon).member;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

std::vector<int> composition_from_cuts(const std::vector<int>& cuts, int n) {
    std::vector<int> parts;
    int previous = 0;
    for (int cut : cuts) {
        if (cut <= previous || cut > n - 1) {
            throw ShapeMismatchError("cut positions must be strictly increasing in 1..n-1");
        }
        parts.push_back(cut - previous);
        previous = cut;
    }
    parts.push_back(n - previous);
    return parts;
}

StateVector tensor_product(const std::vector<StateVector>& factors) {
    if (factors.empty()) throw Error("tensor product of no factors");
    Vector acc = factors.front().amps();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        acc = kronecker(acc, factors[i].amps());
    }
    return StateVector::from_amplitudes(acc, true);
}

namespace {

/// Peels the leading blocks of the composition one rank-1 split at a time.
/// Fills factors/spans when out parameters are given; returns false as soon
/// as a split is not rank one within epsilon.
bool peel_composition(const Vector& amps, const std::vector<int>& parts, double epsilon_rank,
                      std::vector<StateVector>* factors,
                      std::vector<std::pair<int, int>>* spans) {
    Vector current = amps;
    int start = 1;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        const int m = parts[i];
        const Matrix block = reshape_rows(current, Index{1} << m);
        const Rank1Split split = rank1_split(block);
        if (split.sigma2 > epsilon_rank * split.sigma1) return false;
        if (factors) {
            factors->push_back(StateVector::from_amplitudes(canonical_phase(split.left), true));
            spans->push_back({start, start + m - 1});
        }
        start += m;
        current = split.right;
    }
    if (factors) {
        factors->push_back(StateVector::from_amplitudes(canonical_phase(current), true));
        spans->push_back({start, start + parts.back() - 1});
    }
    return true;
}

} // namespace

Classification classify(const StateVector& psi, double epsilon_j, double epsilon_rank) {
    const int n = psi.qubits();
    if (n < 2) throw BadCutError(1, n);

    Classification out;
    out.values.reserve(static_cast<std::size_t>(n - 1));
    unsigned witness_mask = 0;
    for (int ell = 1; ell <= n - 1; ++ell) {
        const double value = observable_purity(psi, ell);
        out.values.push_back(value);
        if (value < epsilon_j) {
            out.vanishing.push_back(ell);
        } else {
            witness_mask |= 1U << (ell - 1);
        }
    }
    out.q = 1 + static_cast<int>(out.vanishing.size());
    out.witness = HypercubeVertex{witness_mask, n - 1};
    if (out.q == 1) return out;

    const std::vector<int> parts = composition_from_cuts(out.vanishing, n);
    DecompositionTree tree;
    if (!peel_composition(psi.amps(), parts, epsilon_rank, &tree.factors, &tree.spans)) {
        throw InconsistentCutsError("vanishing cuts do not yield rank-1 factors; "
                                    "epsilon is likely mistuned");
    }
    Vector product = tree.factors.front().amps();
    for (std::size_t i = 1; i < tree.factors.size(); ++i) {
        product = kronecker(product, tree.factors[i].amps());
    }
    const Complex overlap = product.dot(psi.amps());
    if (std::abs(overlap) < 0.5) {
        throw InconsistentCutsError("extracted factors do not reconstruct the state");
    }
    tree.phase = overlap / std::abs(overlap);
    tree.residual = (psi.amps() - tree.phase * product).norm();
    if (tree.residual >= 1e-8) {
        throw InconsistentCutsError("factorization residual " + std::to_string(tree.residual) +
                                    " exceeds 1e-8");
    }
    out.tree = std::move(tree);
    return out;
}

ExhaustiveClassification exhaustive_classify(const StateVector& psi, double epsilon_rank) {
    const int n = psi.qubits();
    if (n < 2) throw BadCutError(1, n);
    if (n > 12) throw TooLargeError("exhaustive classification is guarded to n <= 12");

    const unsigned all = 1U << (n - 1);
    for (int popc = n - 1; popc >= 1; --popc) {
        for (unsigned mask = 0; mask < all; ++mask) {
            if (std::popcount(mask) != popc) continue;
            std::vector<int> cuts;
            for (int i = 1; i <= n - 1; ++i) {
                if ((mask >> (i - 1)) & 1U) cuts.push_back(i);
            }
            const std::vector<int> parts = composition_from_cuts(cuts, n);
            if (peel_composition(psi.amps(), parts, epsilon_rank, nullptr, nullptr)) {
                return ExhaustiveClassification{popc + 1, parts, cuts};
            }
        }
    }
    return ExhaustiveClassification{1, {n}, {}};
}

AgreementReport classify_agreement(int n, int trials_per_shape, std::uint64_t seed,
                                   double epsilon_j, double epsilon_rank) {
    if (n < 2 || n > 12) throw TooLargeError("agreement sweep is guarded to 2 <= n <= 12");
    Rng rng(seed);
    AgreementReport report;
    const unsigned all = 1U << (n - 1);
    for (unsigned mask = 0; mask < all; ++mask) {
        std::vector<int> cuts;
        for (int i = 1; i <= n - 1; ++i) {
            if ((mask >> (i - 1)) & 1U) cuts.push_back(i);
        }
        const std::vector<int> parts = composition_from_cuts(cuts, n);
        for (int trial = 0; trial < trials_per_shape; ++trial) {
            std::vector<StateVector> factors;
            factors.reserve(parts.size());
            for (int m : parts) factors.push_back(haar_state(m, rng));
            const StateVector psi = tensor_product(factors);
            ++report.states_tested;
            try {
                const Classification direct = classify(psi, epsilon_j, epsilon_rank);
                const ExhaustiveClassification brute = exhaustive_classify(psi, epsilon_rank);
                const bool consistent = direct.q == brute.q && direct.vanishing == brute.cuts &&
                                        brute.cuts == cuts;
                if (!consistent) ++report.disagreements;
            } catch (const Error&) {
                ++report.disagreements;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Triple-product intersection check
// ---------------------------------------------------------------------------

namespace {

int pair_dim(int a, int b) { return (a + 1) * (b + 1) - 1; }

/// Random point whose bipartite reshape is entangled by a clear margin.
ProjectivePoint entangled_point(int k, int ell, Rng& rng) {
    const SegreShape shape({k, ell});
    for (int attempt = 0; attempt < 100; ++attempt) {
        ProjectivePoint p = random_point(shape.target_dim(), rng);
        if (membership(p, shape, 1e-8).worst_minor > 0.05) return p;
    }
    throw Error("failed to sample an entangled point");
}

} // namespace

TripleIntersectionReport triple_intersection_check(int trials, const std::array<int, 3>& dims,
                                                   std::uint64_t seed) {
    const auto [k1, k2, k3] = dims;
    const SegreShape triple({k1, k2, k3});
    if (triple.target_dim() > 63) {
        throw TooLargeError("triple check is guarded to target dimension <= 63");
    }
    const SegreShape left({k1, pair_dim(k2, k3)});
    const SegreShape right({pair_dim(k1, k2), k3});
    constexpr double kEps = 1e-8;

    Rng rng(seed);
    TripleIntersectionReport report;
    report.trials = trials;
    std::vector<ProjectivePoint> pool;

    // (a) Triple products lie in both bipartite images (and the triple one).
    for (int t = 0; t < trials; ++t) {
        const std::vector<ProjectivePoint> points{random_point(k1, rng), random_point(k2, rng),
                                                  random_point(k3, rng)};
        const ProjectivePoint z = generalized_segre_embed(points, triple);
        const bool ok = membership(z, left, kEps).member && membership(z, right, kEps).member &&
                        membership(z, triple, kEps).member;
        (ok ? report.product_pass : report.product_fail)++;
        pool.push_back(z);
    }

    // (b) One-sided bipartite products (entangled remainder) are not in the
    // other image, hence not in the intersection.
    for (int t = 0; t < trials; ++t) {
        ProjectivePoint z = (t % 2 == 0)
                                ? segre_embed(random_point(k1, rng), entangled_point(k2, k3, rng))
                                : segre_embed(entangled_point(k1, k2, rng), random_point(k3, rng));
        const bool in_left = membership(z, left, kEps).member;
        const bool in_right = membership(z, right, kEps).member;
        const bool in_triple = membership(z, triple, kEps).member;
        const bool ok = (t % 2 == 0 ? in_left && !in_right : in_right && !in_left) && !in_triple;
        (ok ? report.one_sided_pass : report.one_sided_fail)++;
        pool.push_back(std::move(z));
    }

    // (c) Everything detected in both images must pass the triple test.
    for (int t = 0; t < trials; ++t) {
        pool.push_back(random_point(triple.target_dim(), rng));
    }
    for (const ProjectivePoint& z : pool) {
        if (membership(z, left, kEps).member && membership(z, right, kEps).member) {
            ++report.intersection_detected;
            (membership(z, triple, kEps).member ? report.intersection_pass
                                                : report.intersection_fail)++;
        }
    }
    return report;
}

} // namespace qsegre
