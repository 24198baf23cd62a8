#include "gpfock/qfock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

namespace gpfock {

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("GPFOCK_MAX_MATRIX_BYTES")) {
        try {
            b.max_matrix_bytes = static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw input_error("GPFOCK_MAX_MATRIX_BYTES is not a byte count");
        }
    }
    return b;
}

void Budget::check_matrix(std::size_t rows, std::size_t cols) const {
    if (rows * cols * sizeof(double) > max_matrix_bytes)
        throw budget_error("matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " doubles exceeds the byte budget");
}

void Budget::check_items(long long count, const char* what) const {
    if (count > max_items)
        throw budget_error(std::string(what) + " exceeds the item budget (" +
                           std::to_string(count) + " > " + std::to_string(max_items) + ")");
}

long long inversions(const std::vector<int>& perm) {
    long long count = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++count;
    return count;
}

namespace {

long long int_pow(int base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// Hand-rolled Kronecker product with big-endian index convention: the first
// tensor factor owns the most significant digit.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::vector<int> decode_index(long long index, int dim, int level) {
    std::vector<int> tuple(level);
    for (int t = level - 1; t >= 0; --t) {
        tuple[t] = static_cast<int>(index % dim);
        index /= dim;
    }
    return tuple;
}

long long encode_index(const std::vector<int>& tuple, int dim) {
    long long index = 0;
    for (int digit : tuple) index = index * dim + digit;
    return index;
}

}  // namespace

Eigen::MatrixXd tensor_gram(int dim, int level, double q, const Budget& budget) {
    if (dim < 1) throw input_error("dim must be >= 1");
    if (level < 0) throw input_error("level must be >= 0");
    if (q < -1.0 || q > 1.0) throw input_error("q must lie in [-1, 1]");

    if (level > 16) throw budget_error("Gram matrix level above 16 is out of scope");
    long long size = 1;
    for (int i = 0; i < level; ++i) {
        size *= dim;
        if (size > (1LL << 31)) throw budget_error("Gram matrix dimension out of range");
    }
    budget.check_matrix(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
    long long factorial = 1;
    for (int i = 2; i <= level; ++i) {
        factorial *= i;
        budget.check_items(factorial, "Gram matrix build");
    }
    if (factorial > budget.max_items / size)  // factorial * size without overflow
        throw budget_error("Gram matrix build exceeds the item budget");

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(size, size);
    std::vector<int> perm(level);
    for (int i = 0; i < level; ++i) perm[i] = i;
    do {
        const double weight = std::pow(q, static_cast<double>(inversions(perm)));
        for (long long col = 0; col < size; ++col) {
            const std::vector<int> in = decode_index(col, dim, level);
            std::vector<int> out(level);
            for (int t = 0; t < level; ++t) out[perm[t]] = in[t];
            gram(encode_index(out, dim), col) += weight;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return gram;
}

FockSpace::FockSpace(double q, int dim, int cap, const Budget& budget)
    : q_(q), dim_(dim), cap_(cap) {
    if (dim < 1) throw input_error("dim must be >= 1");
    if (cap < 0) throw input_error("cap must be >= 0");
    if (q < -1.0 || q > 1.0) throw input_error("q must lie in [-1, 1]");
    offsets_.resize(cap + 1);
    long long total = 0;
    long long block = 1;
    for (int n = 0; n <= cap; ++n) {
        offsets_[n] = static_cast<int>(total);
        total += block;
        block *= dim;
        if (total > (1LL << 31)) throw budget_error("Fock space dimension out of range");
    }
    total_ = static_cast<int>(total);
    budget.check_matrix(static_cast<std::size_t>(total_), static_cast<std::size_t>(total_));
    gram_.reserve(cap + 1);
    for (int n = 0; n <= cap; ++n) gram_.push_back(tensor_gram(dim, n, q, budget));
}

int FockSpace::level_dim(int n) const {
    if (n < 0 || n > cap_) throw input_error("level out of range");
    return static_cast<int>(int_pow(dim_, n));
}

FockVector::FockVector(const FockSpace& space) : dim_(space.dim()), cap_(space.cap()) {
    levels_.reserve(cap_ + 1);
    for (int n = 0; n <= cap_; ++n) levels_.push_back(Eigen::VectorXd::Zero(space.level_dim(n)));
}

FockVector FockVector::vacuum(const FockSpace& space) {
    FockVector v(space);
    v.level(0)(0) = 1.0;
    return v;
}

double q_inner(const FockSpace& space, const FockVector& x, const FockVector& y) {
    if (x.dim() != space.dim() || x.cap() != space.cap() || y.dim() != space.dim() ||
        y.cap() != space.cap())
        throw input_error("vectors from mismatched spaces");
    double sum = 0.0;
    for (int n = 0; n <= space.cap(); ++n)
        sum += (space.gram(n) * x.level(n)).dot(y.level(n));
    return sum;
}

double q_norm(const FockSpace& space, const FockVector& x) {
    return std::sqrt(std::max(0.0, q_inner(space, x, x)));
}

FockOperator::FockOperator(const FockSpace& space, Eigen::MatrixXd matrix, int raise,
                           int exact_input)
    : dim_(space.dim()),
      cap_(space.cap()),
      raise_(raise),
      exact_input_(exact_input),
      matrix_(std::move(matrix)) {
    if (matrix_.rows() != space.total_dim() || matrix_.cols() != space.total_dim())
        throw input_error("operator matrix has the wrong shape for this space");
}

FockOperator FockOperator::identity(const FockSpace& space) {
    return FockOperator(space, Eigen::MatrixXd::Identity(space.total_dim(), space.total_dim()), 0,
                        space.cap());
}

FockOperator FockOperator::zero(const FockSpace& space) {
    return FockOperator(space, Eigen::MatrixXd::Zero(space.total_dim(), space.total_dim()), 0,
                        space.cap());
}

FockVector FockOperator::apply(const FockVector& x) const {
    if (x.dim() != dim_ || x.cap() != cap_) throw input_error("vector from a mismatched space");
    Eigen::VectorXd stacked(matrix_.cols());
    Eigen::Index pos = 0;
    for (int n = 0; n <= cap_; ++n) {
        stacked.segment(pos, x.level(n).size()) = x.level(n);
        pos += x.level(n).size();
    }
    const Eigen::VectorXd mapped = matrix_ * stacked;
    FockVector out = x;
    pos = 0;
    for (int n = 0; n <= cap_; ++n) {
        out.level(n) = mapped.segment(pos, out.level(n).size());
        pos += out.level(n).size();
    }
    return out;
}

FockOperator FockOperator::compose(const FockOperator& rhs) const {
    if (rhs.dim_ != dim_ || rhs.cap_ != cap_) throw input_error("operators on mismatched spaces");
    FockOperator out = *this;
    out.matrix_ = matrix_ * rhs.matrix_;
    out.raise_ = std::clamp(raise_ + rhs.raise_, -cap_ - 1, cap_ + 1);
    out.exact_input_ = std::min(rhs.exact_input_, exact_input_ - rhs.raise_);
    return out;
}

FockOperator FockOperator::plus(const FockOperator& rhs, double scale) const {
    if (rhs.dim_ != dim_ || rhs.cap_ != cap_) throw input_error("operators on mismatched spaces");
    FockOperator out = *this;
    out.matrix_ = matrix_ + scale * rhs.matrix_;
    out.raise_ = std::max(raise_, rhs.raise_);
    out.exact_input_ = std::min(exact_input_, rhs.exact_input_);
    return out;
}

FockOperator FockOperator::scaled(double factor) const {
    FockOperator out = *this;
    out.matrix_ *= factor;
    return out;
}

FockOperator creation(const FockSpace& space, const Eigen::VectorXd& xi) {
    if (xi.size() != space.dim()) throw input_error("creation vector must live at level 1");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(space.total_dim(), space.total_dim());
    for (int n = 0; n + 1 <= space.cap(); ++n) {
        const int block = space.level_dim(n);
        for (int j = 0; j < space.dim(); ++j) {
            if (xi(j) == 0.0) continue;
            for (int col = 0; col < block; ++col)
                m(space.offset(n + 1) + j * block + col, space.offset(n) + col) += xi(j);
        }
    }
    return FockOperator(space, std::move(m), 1, space.cap() - 1);
}

FockOperator annihilation(const FockSpace& space, const Eigen::VectorXd& xi) {
    if (xi.size() != space.dim()) throw input_error("annihilation vector must live at level 1");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(space.total_dim(), space.total_dim());
    const double q = space.q();
    for (int n = 1; n <= space.cap(); ++n) {
        const long long block = space.level_dim(n);
        for (long long col = 0; col < block; ++col) {
            const std::vector<int> tuple = decode_index(col, space.dim(), n);
            double weight = 1.0;
            for (int k = 0; k < n; ++k) {
                const double coeff = weight * xi(tuple[k]);
                if (coeff != 0.0) {
                    std::vector<int> rest = tuple;
                    rest.erase(rest.begin() + k);
                    m(space.offset(n - 1) + encode_index(rest, space.dim()),
                      space.offset(n) + col) += coeff;
                }
                weight *= q;
            }
        }
    }
    return FockOperator(space, std::move(m), -1, space.cap());
}

FockOperator field_operator(const FockSpace& space, const Eigen::VectorXd& xi) {
    return creation(space, xi).plus(annihilation(space, xi));
}

namespace {

FockOperator wick_of_mask(const FockSpace& space, const std::vector<Eigen::VectorXd>& factors,
                          unsigned mask, std::map<unsigned, FockOperator>& memo) {
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    if (mask == 0) return memo.emplace(0u, FockOperator::identity(space)).first->second;

    std::vector<int> positions;
    for (std::size_t p = 0; p < factors.size(); ++p)
        if (mask & (1u << p)) positions.push_back(static_cast<int>(p));

    const int head = positions.front();
    const unsigned tail_mask = mask & ~(1u << head);
    FockOperator result =
        field_operator(space, factors[head]).compose(wick_of_mask(space, factors, tail_mask, memo));
    double weight = 1.0;
    for (std::size_t t = 1; t < positions.size(); ++t) {
        const double pairing = factors[positions[t]].dot(factors[head]);
        if (pairing != 0.0) {
            const unsigned sub = tail_mask & ~(1u << positions[t]);
            result = result.plus(wick_of_mask(space, factors, sub, memo), -weight * pairing);
        }
        weight *= space.q();
    }
    return memo.emplace(mask, std::move(result)).first->second;
}

void check_defining_property(const FockSpace& space, const FockOperator& op, int level,
                             const Eigen::VectorXd& coeffs) {
    const FockVector image = op.apply(FockVector::vacuum(space));
    for (int n = 0; n <= space.cap(); ++n) {
        const Eigen::VectorXd expected =
            (n == level) ? coeffs : Eigen::VectorXd::Zero(space.level_dim(n));
        if ((image.level(n) - expected).cwiseAbs().maxCoeff() > 1e-12)
            throw std::logic_error("Wick word fails its defining property on the vacuum");
    }
}

}  // namespace

FockOperator wick(const FockSpace& space, const std::vector<Eigen::VectorXd>& factors) {
    const int level = static_cast<int>(factors.size());
    if (level > space.cap())
        throw input_error("tensor level " + std::to_string(level) +
                          " too high for exactness; required cap " + std::to_string(level));
    if (level > 20) throw input_error("tensor rank too large");
    for (const auto& f : factors)
        if (f.size() != space.dim()) throw input_error("factors must live at level 1");

    std::map<unsigned, FockOperator> memo;
    FockOperator op = wick_of_mask(space, factors, (1u << level) - 1u, memo);

    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.level_dim(level));
    std::vector<int> tuple(level, 0);
    for (long long idx = 0; idx < space.level_dim(level); ++idx) {
        const std::vector<int> t = decode_index(idx, space.dim(), level);
        double c = 1.0;
        for (int k = 0; k < level; ++k) c *= factors[k](t[k]);
        coeffs(idx) = c;
    }
    check_defining_property(space, op, level, coeffs);
    return op;
}

FockOperator wick(const FockSpace& space, int level, const Eigen::VectorXd& coeffs) {
    if (level < 0 || level > space.cap())
        throw input_error("tensor level " + std::to_string(level) +
                          " too high for exactness; required cap " + std::to_string(level));
    if (coeffs.size() != space.level_dim(level))
        throw input_error("coefficient vector has the wrong length for this level");
    if (level == 0) return FockOperator::identity(space).scaled(coeffs(0));

    FockOperator op(space, Eigen::MatrixXd::Zero(space.total_dim(), space.total_dim()), level,
                    space.cap() - level);
    for (long long idx = 0; idx < coeffs.size(); ++idx) {
        if (coeffs(idx) == 0.0) continue;
        std::vector<Eigen::VectorXd> factors;
        for (int digit : decode_index(idx, space.dim(), level))
            factors.push_back(Eigen::VectorXd::Unit(space.dim(), digit));
        op = op.plus(wick(space, factors), coeffs(idx));
    }
    check_defining_property(space, op, level, coeffs);
    return op;
}

double vacuum_moment(const FockSpace& space, const Eigen::VectorXd& xi, int power) {
    if (power < 0) throw input_error("power must be nonnegative");
    if (power % 2 == 1) return 0.0;  // odd moments vanish by symmetry
    if (power > space.cap())
        throw input_error("power exceeds the truncation cap " + std::to_string(space.cap()));
    if (std::abs(xi.norm() - 1.0) > 1e-8) throw input_error("moment vector must be a unit vector");
    const FockOperator field = field_operator(space, xi);
    FockVector v = FockVector::vacuum(space);
    for (int i = 0; i < power; ++i) v = field.apply(v);
    return q_inner(space, v, FockVector::vacuum(space));
}

namespace {

void enumerate_matchings(std::vector<int>& partner, int points, double q, double& total) {
    int first = -1;
    for (int i = 0; i < points; ++i)
        if (partner[i] < 0) {
            first = i;
            break;
        }
    if (first < 0) {
        long long crossings = 0;
        for (int a = 0; a < points; ++a) {
            if (partner[a] < a) continue;
            for (int c = a + 1; c < partner[a]; ++c)
                if (partner[c] > partner[a]) ++crossings;
        }
        total += std::pow(q, static_cast<double>(crossings));
        return;
    }
    for (int j = first + 1; j < points; ++j) {
        if (partner[j] >= 0) continue;
        partner[first] = j;
        partner[j] = first;
        enumerate_matchings(partner, points, q, total);
        partner[first] = partner[j] = -1;
    }
}

}  // namespace

double pair_partition_oracle(double q, int power) {
    if (power < 0) throw input_error("power must be nonnegative");
    if (power % 2 == 1) return 0.0;
    if (power > 16) throw input_error("pair partition enumeration limited to 16 points");
    if (power == 0) return 1.0;
    std::vector<int> partner(power, -1);
    double total = 0.0;
    enumerate_matchings(partner, power, q, total);
    return total;
}

FockOperator second_quantize(const FockSpace& space, const Eigen::MatrixXd& contraction) {
    if (contraction.rows() != space.dim() || contraction.cols() != space.dim())
        throw input_error("contraction must act on level 1");
    const double norm = contraction.jacobiSvd().singularValues()(0);
    if (norm > 1.0 + 1e-9)
        throw input_error("contraction norm " + std::to_string(norm) + " exceeds 1");

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(space.total_dim(), space.total_dim());
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(1, 1);
    m(0, 0) = 1.0;
    for (int n = 1; n <= space.cap(); ++n) {
        power = kron(contraction, power);
        m.block(space.offset(n), space.offset(n), space.level_dim(n), space.level_dim(n)) = power;
    }
    return FockOperator(space, std::move(m), 0, space.cap());
}

Eigen::MatrixXd rotation_matrix(const Splitting& split, double t) {
    if (split.first_dim < 1 || split.first_dim != split.second_dim)
        throw input_error("rotation requires a splitting into two summands of equal dimension");
    const int d = split.first_dim;
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    r.topLeftCorner(d, d) = std::cos(t) * Eigen::MatrixXd::Identity(d, d);
    r.topRightCorner(d, d) = -std::sin(t) * Eigen::MatrixXd::Identity(d, d);
    r.bottomLeftCorner(d, d) = std::sin(t) * Eigen::MatrixXd::Identity(d, d);
    r.bottomRightCorner(d, d) = std::cos(t) * Eigen::MatrixXd::Identity(d, d);
    return r;
}

namespace {

void check_splitting(const FockSpace& space, const Splitting& split) {
    if (split.first_dim < 0 || split.second_dim < 0 ||
        split.first_dim + split.second_dim != space.dim())
        throw input_error("splitting does not partition the coordinates of this space");
}

}  // namespace

FockOperator rotation_deformation(const FockSpace& space, const Splitting& split, double t) {
    check_splitting(space, split);
    if (split.first_dim != split.second_dim)
        throw input_error("rotation requires two summands of equal dimension");
    return second_quantize(space, rotation_matrix(split, t));
}

FockOperator conditional_projection(const FockSpace& space, const Splitting& split) {
    check_splitting(space, split);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(space.dim(), space.dim());
    for (int i = 0; i < split.first_dim; ++i) p(i, i) = 1.0;
    return second_quantize(space, p);
}

int min_second_summand_factors(const FockSpace& space, const Splitting& split,
                               const WickWordSpec& spec) {
    check_splitting(space, split);
    if (spec.coeffs.size() != space.level_dim(spec.level))
        throw input_error("coefficient vector has the wrong length for this level");
    int best = -1;
    for (long long idx = 0; idx < spec.coeffs.size(); ++idx) {
        if (spec.coeffs(idx) == 0.0) continue;
        int count = 0;
        for (int digit : decode_index(idx, space.dim(), spec.level))
            if (digit >= split.first_dim) ++count;
        if (best < 0 || count < best) best = count;
    }
    return best;
}

PhiMapResult phi_map(const FockSpace& space, const Splitting& split, const WickWordSpec& x,
                     const WickWordSpec& y, const WickWordSpec& a) {
    check_splitting(space, split);
    const int required = x.level + a.level + y.level;
    if (required > space.cap())
        throw input_error("cap too small for an exact compression; required cap " +
                          std::to_string(required));
    if (std::abs(space.q()) >= 1.0)
        throw input_error("compression decay is meaningful only for |q| < 1");

    for (const WickWordSpec* side : {&x, &y}) {
        const int k = min_second_summand_factors(space, split, *side);
        if (k < 1)
            throw input_error(
                "side words need at least one second-summand factor in every tensor");
    }
    WickWordSpec a_checked = a;
    for (long long idx = 0; idx < a_checked.coeffs.size(); ++idx) {
        if (a_checked.coeffs(idx) == 0.0) continue;
        for (int digit : decode_index(idx, space.dim(), a.level))
            if (digit >= split.first_dim)
                throw input_error("the compressed word must live over the first summand");
    }

    const FockOperator x_op = wick(space, x.level, x.coeffs);
    const FockOperator y_op = wick(space, y.level, y.coeffs);
    const FockOperator a_op = wick(space, a.level, a.coeffs);
    const FockOperator expectation = conditional_projection(space, split);

    const FockVector vacuum = FockVector::vacuum(space);
    const FockVector xay = x_op.apply(a_op.apply(y_op.apply(vacuum)));

    PhiMapResult out{expectation.apply(xay), 0.0, 0.0, 0, 0};
    out.band_lo = std::max(0, a.level - (x.level + y.level));
    out.band_hi = std::min(space.cap(), a.level + x.level + y.level);
    for (int n = 0; n <= space.cap(); ++n) {
        if (n >= out.band_lo && n <= out.band_hi) continue;
        out.off_band_mass += (space.gram(n) * out.image.level(n)).dot(out.image.level(n));
    }
    const double denom = q_norm(space, a_op.apply(vacuum));
    out.norm_ratio = denom > 0.0 ? q_norm(space, out.image) / denom : 0.0;
    return out;
}

}  // namespace gpfock
