#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qsegre/errors.hpp"
#include "qsegre/state.hpp"
#include "qsegre/types.hpp"

namespace qsegre {

/// Scalar kept in exact form until the final conversion to a complex double:
/// a sum of terms (num/den) * sqrt(s) * zeta^r with zeta = exp(2*pi*i/12).
/// The twelfth roots cover products of the imaginary unit with w = exp(2*pi*i/3).
///
/// Terms are normalized (reduced fractions, square factors pulled out of the
/// radical, zeta exponent folded into the sign) and like terms are combined,
/// so e.g. |01> - |01> cancels to an exactly empty sum.
class ExactScalar {
public:
    struct Term {
        std::int64_t num = 0;
        std::int64_t den = 1;      // > 0
        std::int64_t sqrt_arg = 1; // >= 1, square-free after normalization
        int root12 = 0;            // 0..5; zeta^(r+6) = -zeta^r folds into num
    };

    ExactScalar() = default; // zero

    static ExactScalar integer(std::int64_t v);
    static ExactScalar rational(std::int64_t num, std::int64_t den);
    static ExactScalar sqrt_of(std::int64_t arg);
    static ExactScalar imaginary_unit();
    /// w^p with w = exp(2*pi*i/3).
    static ExactScalar omega_power(int p);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    ExactScalar operator+(const ExactScalar& other) const;
    ExactScalar operator-(const ExactScalar& other) const;
    ExactScalar operator*(const ExactScalar& other) const;
    /// Defined when the divisor reduces to a single term; throws Error otherwise.
    ExactScalar operator/(const ExactScalar& other) const;
    ExactScalar negated() const;

    Complex to_complex() const;

    /// True when the minus sign can be pulled out in front (every term negative).
    bool sign_extractable_negative() const;

    /// Grammar-compatible rendering, e.g. "sqrt(2)/2", "(1+w)", "-3/4*i*w^2".
    std::string render() const;

private:
    void push_term(Term t);
    std::vector<Term> terms_;
};

/// Parsed Dirac-notation expression.
struct KetNode {
    enum class Kind { Sum, Scale, Tensor, BasisKet, NamedKet };

    Kind kind;
    std::vector<std::shared_ptr<const KetNode>> children; // Sum, Tensor
    ExactScalar coefficient;                              // Scale
    std::shared_ptr<const KetNode> child;                 // Scale
    std::string bits;                                     // BasisKet
    char named = 0;                                       // NamedKet: '+' or '-'
};

class KetExpression {
public:
    explicit KetExpression(std::shared_ptr<const KetNode> root) : root_(std::move(root)) {}
    const KetNode& root() const { return *root_; }
    std::shared_ptr<const KetNode> root_ptr() const { return root_; }

private:
    std::shared_ptr<const KetNode> root_;
};

/// Parses an ASCII state expression.
///
///   expr   := term { ("+"|"-") term }
///   term   := [ coeff ] factor { factor }
///   factor := ket | "(" expr ")"
///   ket    := "|" (bitstring | "+" | "-") ">"
///   coeff  := scalar { "*" scalar } | scalar "/" scalar
///   scalar := integer | "sqrt(" integer ")" | "i" | "w" ["^" integer]
///           | "(" coeff { ("+"|"-") coeff } ")"
///
/// Tensor products are written by juxtaposition, "*" or "(x)"; whitespace is
/// insignificant. |+> and |-> stand for (|0> +- |1>)/sqrt(2).
KetExpression parse(std::string_view text);

/// Assembles the amplitudes of the expression. With normalize (the default
/// convention) the result is rescaled to unit norm; otherwise the norm must
/// already be 1 within 1e-9.
StateVector evaluate(const KetExpression& expr, bool normalize = true);

/// Canonical pretty-printer; parse(render(e)) evaluates to the same state.
std::string render(const KetExpression& expr);

/// Reorders the tensor factors of a state. perm[k-1] is the new position of
/// original qubit k (1-based); applying a permutation and then its inverse is
/// the identity.
StateVector permute_qubits(const StateVector& psi, const std::vector<int>& perm);

} // namespace qsegre
