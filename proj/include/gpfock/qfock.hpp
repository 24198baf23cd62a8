#ifndef GPFOCK_QFOCK_HPP
#define GPFOCK_QFOCK_HPP

#include <Eigen/Dense>
#include <vector>

#include "gpfock/budget.hpp"

namespace gpfock {

// Number of inversions of a permutation of {0..n-1}.
long long inversions(const std::vector<int>& perm);

// Gram matrix of the q-deformed inner product on the n-fold tensor power of
// R^dim: the sum over all permutations of q^(inversions) times the matrix
// permuting the tensor factors. Symmetric, positive semidefinite, and
// strictly positive for |q| < 1.
Eigen::MatrixXd tensor_gram(int dim, int level, double q,
                            const Budget& budget = Budget::from_env());

// Truncated q-deformed Fock space over R^dim: tensor levels 0..cap with the
// deformed inner product <x, y>_q = <T_n x, y> per level. Coefficients are
// always stored in the plain tensor basis; the deformation enters only
// through the Gram matrices.
class FockSpace {
public:
    FockSpace(double q, int dim, int cap, const Budget& budget = Budget::from_env());

    double q() const { return q_; }
    int dim() const { return dim_; }
    int cap() const { return cap_; }
    int level_dim(int n) const;
    int offset(int n) const { return offsets_.at(n); }
    int total_dim() const { return total_; }
    const Eigen::MatrixXd& gram(int n) const { return gram_.at(n); }

private:
    double q_;
    int dim_;
    int cap_;
    int total_;
    std::vector<int> offsets_;
    std::vector<Eigen::MatrixXd> gram_;
};

// Vector with one dense coefficient block per level.
class FockVector {
public:
    explicit FockVector(const FockSpace& space);
    static FockVector vacuum(const FockSpace& space);

    int dim() const { return dim_; }
    int cap() const { return cap_; }
    Eigen::VectorXd& level(int n) { return levels_.at(n); }
    const Eigen::VectorXd& level(int n) const { return levels_.at(n); }

private:
    int dim_;
    int cap_;
    std::vector<Eigen::VectorXd> levels_;
};

double q_inner(const FockSpace& space, const FockVector& x, const FockVector& y);
double q_norm(const FockSpace& space, const FockVector& x);

// Dense operator on the stacked levels. `raise` bounds how far the operator
// can move mass up the levels; inputs supported on levels <= exact_input are
// mapped without truncation loss.
class FockOperator {
public:
    FockOperator(const FockSpace& space, Eigen::MatrixXd matrix, int raise, int exact_input);

    static FockOperator identity(const FockSpace& space);
    static FockOperator zero(const FockSpace& space);

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    int raise() const { return raise_; }
    int exact_input() const { return exact_input_; }
    int cap() const { return cap_; }

    FockVector apply(const FockVector& x) const;
    FockOperator compose(const FockOperator& rhs) const;  // this after rhs
    FockOperator plus(const FockOperator& rhs, double scale = 1.0) const;
    FockOperator scaled(double factor) const;

private:
    int dim_;
    int cap_;
    int raise_;
    int exact_input_;
    Eigen::MatrixXd matrix_;
};

// Left creation by a level-1 vector: maps a level-n tensor mu to xi (x) mu.
// The top level truncates to zero.
FockOperator creation(const FockSpace& space, const Eigen::VectorXd& xi);

// Its q-adjoint, implemented directly from the annihilation formula
//   mu_1 (x) ... (x) mu_n  |->  sum_k q^(k-1) <mu_k, xi> mu_1 ... ^mu_k ... mu_n.
FockOperator annihilation(const FockSpace& space, const Eigen::VectorXd& xi);

// Field operator: creation plus annihilation of the same real vector.
// Self-adjoint for the deformed inner product on truncation-exact levels.
FockOperator field_operator(const FockSpace& space, const Eigen::VectorXd& xi);

// Wick word of a simple tensor, the unique algebra element mapping the
// vacuum to that tensor. Built by the recursion
//   W(xi (x) v) = s(xi) W(v) - sum_k q^(k-1) <v_k, xi> W(v with v_k removed),
// and checked against its defining property on the vacuum.
FockOperator wick(const FockSpace& space, const std::vector<Eigen::VectorXd>& factors);

// Linear extension of the Wick word to an arbitrary level-n coefficient
// vector in the plain tensor basis.
FockOperator wick(const FockSpace& space, int level, const Eigen::VectorXd& coeffs);

// <vacuum, s(xi)^power vacuum>_q for a unit vector xi. Odd powers vanish.
double vacuum_moment(const FockSpace& space, const Eigen::VectorXd& xi, int power);

// Independent combinatorial evaluation of the same moment: the sum of
// q^(crossings) over all perfect matchings of {1..power} points on a line.
double pair_partition_oracle(double q, int power);

// Functorial second quantization of a level-1 contraction: the block-diagonal
// direct sum of its tensor powers, with the scalar 1 at level 0. Orthogonal
// inputs yield q-isometries; a scaled finite-rank projection c P yields
// singular values c^n on the range of P^(x n), the compact decay profile.
FockOperator second_quantize(const FockSpace& space, const Eigen::MatrixXd& contraction);

// Orthogonal splitting of the coordinates into two leading/trailing ranges.
struct Splitting {
    int first_dim = 0;
    int second_dim = 0;
};

Eigen::MatrixXd rotation_matrix(const Splitting& split, double t);

// Second quantization of the rotation mixing the two summands of an
// H (+) H splitting by angle t.
FockOperator rotation_deformation(const FockSpace& space, const Splitting& split, double t);

// Second quantization of the orthogonal projection onto the first summand;
// realizes the conditional expectation onto the sub-Fock-space over the first
// summand. Idempotent and q-self-adjoint.
FockOperator conditional_projection(const FockSpace& space, const Splitting& split);

// Level plus coefficients of a tensor defining a Wick word.
struct WickWordSpec {
    int level = 0;
    Eigen::VectorXd coeffs;
};

// Smallest number of second-summand factors over the support of the
// coefficient vector; -1 for the zero vector. Used to certify that a Wick
// word has at least k factors in the second summand.
int min_second_summand_factors(const FockSpace& space, const Splitting& split,
                               const WickWordSpec& spec);

struct PhiMapResult {
    FockVector image;      // E(x a y) applied to the vacuum
    double off_band_mass;  // squared q-norm outside the admissible band
    double norm_ratio;     // q-norm of the image over the q-norm of a vacuum
    int band_lo = 0;
    int band_hi = 0;
};

// Compressed multiplication a |-> E(x a y) evaluated on the vacuum, where x
// and y are Wick words of mixed tensors and a is the Wick word of a level-n
// first-summand tensor. Exact when level(x) + level(a) + level(y) <= cap.
PhiMapResult phi_map(const FockSpace& space, const Splitting& split, const WickWordSpec& x,
                     const WickWordSpec& y, const WickWordSpec& a);

}  // namespace gpfock

#endif
