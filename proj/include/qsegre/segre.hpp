#pragma once

#include <array>
#include <bit>
#include <optional>
#include <utility>
#include <vector>

#include "qsegre/state.hpp"

namespace qsegre {

/// Second singular value below kRankEpsilon * sigma1 counts as rank one.
inline constexpr double kRankEpsilon = 1e-8;

/// Threshold on projective_distance below which two points are the same.
inline constexpr double kProjectiveTolerance = 1e-10;

/// Target of a product-of-projective-spaces embedding: factor dimensions
/// (k1,...,kq) mapping into P^N with N = (k1+1)...(kq+1) - 1.
class SegreShape {
public:
    explicit SegreShape(std::vector<int> dims);

    /// Shape for a split of qubits into contiguous blocks of sizes `parts`:
    /// each block of m qubits contributes a factor P^(2^m - 1).
    static SegreShape qubit_composition(const std::vector<int>& parts);

    const std::vector<int>& dims() const { return dims_; }
    std::size_t factors() const { return dims_.size(); }
    Index target_dim() const;

private:
    std::vector<int> dims_;
};

/// Rows (j,k) and columns (s,t) of one 2x2 minor A_js*A_kt - A_jt*A_ks.
struct MinorIndex {
    std::pair<Index, Index> rows; // j < k
    std::pair<Index, Index> cols; // s < t
};

/// Every 2x2 minor position of a (k+1) x (ell+1) matrix.
std::vector<MinorIndex> enumerate_minors(int k, int ell);

/// Closed-form count k(k+1)ell(ell+1)/4 of those minors.
std::int64_t minor_count(int k, int ell);

/// Pairwise coordinate products in lexicographic order: P^k x P^l into
/// P^((k+1)(l+1)-1). Scaling either input scales the output.
ProjectivePoint segre_embed(const ProjectivePoint& a, const ProjectivePoint& b);

/// Iterated coordinate products of all factors, lexicographic order.
ProjectivePoint generalized_segre_embed(const std::vector<ProjectivePoint>& points,
                                        const SegreShape& shape);

/// Membership of [z] in the image of the shape's embedding.
///
/// Bipartite shapes test every 2x2 minor of the reshaped coordinates against
/// epsilon (z is scale-normalized to unit norm first). Shapes with more
/// factors peel the leading factor by a rank-1 split and recurse on the
/// trailing one; worst_minor carries the largest minor met at any stage.
struct MembershipResult {
    bool member = false;
    double worst_minor = 0.0;
};

MembershipResult membership(const ProjectivePoint& z, const SegreShape& shape, double epsilon);

// ---------------------------------------------------------------------------
// Hypercube of contractions
// ---------------------------------------------------------------------------

/// Vertex (v_1,...,v_{n-1}) of the contraction hypercube. Bit i set means the
/// boundary after qubit i has been contracted; the initial vertex is all
/// zeros and the final vertex all ones.
struct HypercubeVertex {
    unsigned mask = 0;
    int width = 0; // n - 1

    int degree() const { return std::popcount(mask); }
    bool bit(int i) const { return ((mask >> (i - 1)) & 1U) != 0; } // i in 1..width
};

/// Directed edge [label]: contracts one boundary, raising the degree by one.
struct HypercubeEdge {
    HypercubeVertex from;
    HypercubeVertex to;
    int label = 0;
};

struct Hypercube {
    int n = 0;
    std::vector<HypercubeVertex> vertices; // 2^(n-1), ordered by mask
    std::vector<HypercubeEdge> edges;      // (n-1) * 2^(n-2)
};

Hypercube hypercube(int n);

/// All maximal directed paths from the initial to the final vertex, as
/// orderings of the edge labels 1..n-1. There are (n-1)! of them.
std::vector<std::vector<int>> maximal_paths(int n);

/// Applies the contractions of `order` one edge at a time to per-qubit points
/// (pairwise segre_embed of the parts adjacent to each contracted boundary).
/// Every order yields the same point as generalized_segre_embed.
ProjectivePoint embed_along_path(const std::vector<ProjectivePoint>& points,
                                 const std::vector<int>& order);

/// Qubit-block shape of a vertex: blocks are the maximal runs joined by its
/// set bits, split at every zero bit.
SegreShape vertex_shape(const HypercubeVertex& v, int n);

/// True when z is in the image of the remaining contractions of v, i.e. when
/// z splits at every zero bit of v simultaneously.
bool lives_in_vertex(const ProjectivePoint& z, const HypercubeVertex& v, int n, double epsilon);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Extracted tensor factorization psi ~ phase * f_1 (x) ... (x) f_q over
/// contiguous qubit blocks. Factor phases are canonical (first nonvanishing
/// amplitude real positive); the unit-modulus global phase makes the product
/// reconstruct psi with the stated residual.
struct DecompositionTree {
    std::vector<std::pair<int, int>> spans; // 1-based inclusive qubit ranges
    std::vector<StateVector> factors;
    Complex phase{1.0, 0.0};
    double residual = 0.0;
};

struct Classification {
    int q = 1;
    std::vector<double> values;   // cut observables, purity engine
    std::vector<int> vanishing;   // cuts with value < epsilon_j
    HypercubeVertex witness;      // degree n-q vertex the state lives in
    std::optional<DecompositionTree> tree; // engaged exactly when q > 1
};

/// Partition count from the vanishing cut observables, plus the factorization
/// at those cuts. Throws InconsistentCutsError when a vanishing cut fails to
/// produce a rank-1 split within epsilon_rank (a sign epsilon_j is mistuned).
Classification classify(const StateVector& psi, double epsilon_j = 1e-9,
                        double epsilon_rank = kRankEpsilon);

/// Brute force over all 2^(n-1) ordered compositions of n, testing each by
/// recursive rank-1 reshapes only -- fully independent of the cut
/// observables. Returns the finest composition containing [psi].
struct ExhaustiveClassification {
    int q = 1;
    std::vector<int> parts; // m_1,...,m_q summing to n
    std::vector<int> cuts;  // boundaries after qubits m_1, m_1+m_2, ...
};

ExhaustiveClassification exhaustive_classify(const StateVector& psi,
                                             double epsilon_rank = kRankEpsilon);

/// Seeded sweep checking classify against exhaustive_classify on constructed
/// products for every composition shape (Haar factors per block; the trivial
/// composition doubles as fully Haar-random input).
struct AgreementReport {
    int states_tested = 0;
    int disagreements = 0;
};

AgreementReport classify_agreement(int n, int trials_per_shape, std::uint64_t seed,
                                   double epsilon_j = 1e-9,
                                   double epsilon_rank = kRankEpsilon);

// ---------------------------------------------------------------------------
// Triple-product intersection check
// ---------------------------------------------------------------------------

/// Randomized check that the triple embedding image equals the intersection
/// of the two bipartite images for factor dimensions (k1,k2,k3):
///   (a) triple products belong to both bipartite images,
///   (b) one-sided bipartite products (entangled remainder) miss the other
///       image, so they are not in the intersection,
///   (c) every pooled point numerically detected in both images passes the
///       triple membership test.
struct TripleIntersectionReport {
    int trials = 0;
    int product_pass = 0, product_fail = 0;
    int one_sided_pass = 0, one_sided_fail = 0;
    int intersection_detected = 0, intersection_pass = 0, intersection_fail = 0;

    bool ok() const { return product_fail == 0 && one_sided_fail == 0 && intersection_fail == 0; }
};

TripleIntersectionReport triple_intersection_check(int trials, const std::array<int, 3>& dims,
                                                   std::uint64_t seed);

// ---------------------------------------------------------------------------
// Small helpers shared with the CLI and tests
// ---------------------------------------------------------------------------

/// Kronecker product of coordinate vectors (first factor slowest).
Vector kronecker(const Vector& a, const Vector& b);

StateVector tensor_product(const std::vector<StateVector>& factors);

/// Block sizes of the composition splitting at the given sorted cuts.
std::vector<int> composition_from_cuts(const std::vector<int>& cuts, int n);

} // namespace qsegre
