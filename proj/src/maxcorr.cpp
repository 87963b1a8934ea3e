#include "entrates/maxcorr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "entrates/errors.hpp"
#include "entrates/parallel.hpp"

namespace entrates::maxcorr {

namespace {

constexpr double kRankCutoff = 1e-12;
constexpr double kDropWeight = 1e-14;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// p H(y / |y|) in nats for an unnormalized member y with p = |y|^2.
double member_cost(const Complex* y, std::size_t d) {
  double n = 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double t = std::norm(y[j]);
    n += t;
    if (t > 0.0) s -= t * std::log(t);
  }
  if (n <= 0.0) return 0.0;
  return s + n * std::log(n);
}

// Members stored as rows of a K x d matrix; left Givens rotations keep
// sum_k y_k y_k^dagger fixed.
class EnsembleDescent {
 public:
  EnsembleDescent(ComplexMatrix rows, double tol_nats, std::size_t max_sweeps)
      : y_(std::move(rows)), k_(y_.rows()), d_(y_.cols()), tol_(tol_nats), max_sweeps_(max_sweeps), cost_(k_) {
    for (std::size_t k = 0; k < k_; ++k) cost_[k] = member_cost(&y_(k, 0), d_);
    scratch_a_.resize(d_);
    scratch_b_.resize(d_);
  }

  double total() const {
    double t = 0.0;
    for (double c : cost_) t += c;
    return t;
  }

  void run() {
    double current = total();
    for (sweeps_ = 0; sweeps_ < max_sweeps_;) {
      ++sweeps_;
      for (std::size_t k = 0; k < k_; ++k)
        for (std::size_t l = k + 1; l < k_; ++l) improve_pair(k, l);
      const double next = total();
      const double gain = current - next;
      current = next;
      if (gain < tol_) {
        converged_ = true;
        break;
      }
    }
  }

  bool converged() const { return converged_; }
  const ComplexMatrix& rows() const { return y_; }

 private:
  // Rotation exp of the generator with complex angle z = alpha + i beta acting on (y_k, y_l).
  void rotate(std::size_t k, std::size_t l, double alpha, double beta, Complex* out_k, Complex* out_l) const {
    const double theta = std::hypot(alpha, beta);
    double c = 1.0;
    Complex se{0.0, 0.0};  // sin(theta) * z / |z|
    if (theta > 0.0) {
      c = std::cos(theta);
      const double sinc = std::sin(theta) / theta;
      se = Complex{alpha * sinc, beta * sinc};
    }
    const Complex* yk = &y_(k, 0);
    const Complex* yl = &y_(l, 0);
    for (std::size_t j = 0; j < d_; ++j) {
      out_k[j] = c * yk[j] - se * yl[j];
      out_l[j] = std::conj(se) * yk[j] + c * yl[j];
    }
  }

  double pair_cost(std::size_t k, std::size_t l, double alpha, double beta) {
    rotate(k, l, alpha, beta, scratch_a_.data(), scratch_b_.data());
    return member_cost(scratch_a_.data(), d_) + member_cost(scratch_b_.data(), d_);
  }

  void improve_pair(std::size_t k, std::size_t l) {
    if (cost_[k] == 0.0 && cost_[l] == 0.0 && row_empty(k) && row_empty(l)) return;
    const double f0 = cost_[k] + cost_[l];
    constexpr double h = 1e-4;
    const double fpx = pair_cost(k, l, h, 0.0);
    const double fmx = pair_cost(k, l, -h, 0.0);
    const double fpy = pair_cost(k, l, 0.0, h);
    const double fmy = pair_cost(k, l, 0.0, -h);
    const double fpp = pair_cost(k, l, h, h);
    const double fmm = pair_cost(k, l, -h, -h);
    const double fpm = pair_cost(k, l, h, -h);
    const double fmp = pair_cost(k, l, -h, h);

    double best_f = f0;
    double best_a = 0.0;
    double best_b = 0.0;
    const auto consider = [&](double f, double a, double b) {
      if (f < best_f) {
        best_f = f;
        best_a = a;
        best_b = b;
      }
    };
    consider(fpx, h, 0.0);
    consider(fmx, -h, 0.0);
    consider(fpy, 0.0, h);
    consider(fmy, 0.0, -h);
    consider(fpp, h, h);
    consider(fmm, -h, -h);
    consider(fpm, h, -h);
    consider(fmp, -h, h);

    const double gx = (fpx - fmx) / (2.0 * h);
    const double gy = (fpy - fmy) / (2.0 * h);
    const double hxx = (fpx - 2.0 * f0 + fmx) / (h * h);
    const double hyy = (fpy - 2.0 * f0 + fmy) / (h * h);
    const double hxy = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    const double gnorm = std::hypot(gx, gy);

    if (gnorm > 0.0) {
      double dx = 0.0;
      double dy = 0.0;
      const double det = hxx * hyy - hxy * hxy;
      if (hxx > 0.0 && det > 0.0) {
        dx = -(hyy * gx - hxy * gy) / det;
        dy = -(hxx * gy - hxy * gx) / det;
      } else {
        const double curvature = std::max({std::abs(hxx) + std::abs(hxy), std::abs(hyy) + std::abs(hxy), 1e-3});
        const double step = std::min(0.25, gnorm / curvature);
        dx = -gx / gnorm * step;
        dy = -gy / gnorm * step;
      }
      const double len = std::hypot(dx, dy);
      constexpr double kMaxAngle = std::numbers::pi / 4.0;
      if (len > kMaxAngle) {
        dx *= kMaxAngle / len;
        dy *= kMaxAngle / len;
      }
      double t = 1.0;
      for (int i = 0; i < 30; ++i, t *= 0.5) {
        const double f = pair_cost(k, l, t * dx, t * dy);
        if (f < f0) {
          consider(f, t * dx, t * dy);
          break;
        }
      }
    }

    if (best_f < f0) {
      rotate(k, l, best_a, best_b, scratch_a_.data(), scratch_b_.data());
      std::copy(scratch_a_.begin(), scratch_a_.end(), &y_(k, 0));
      std::copy(scratch_b_.begin(), scratch_b_.end(), &y_(l, 0));
      cost_[k] = member_cost(&y_(k, 0), d_);
      cost_[l] = member_cost(&y_(l, 0), d_);
    }
  }

  bool row_empty(std::size_t k) const {
    for (std::size_t j = 0; j < d_; ++j)
      if (y_(k, j) != Complex{}) return false;
    return true;
  }

  ComplexMatrix y_;
  std::size_t k_;
  std::size_t d_;
  double tol_;
  std::size_t max_sweeps_;
  std::vector<double> cost_;
  std::vector<Complex> scratch_a_;
  std::vector<Complex> scratch_b_;
  std::size_t sweeps_ = 0;
  bool converged_ = false;
};

// Columns of a K x r complex Gaussian matrix, orthonormalized (Haar distributed).
ComplexMatrix random_isometry(std::size_t k, std::size_t r, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(k, r);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex{re, im};
    }
  for (std::size_t j = 0; j < r; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < j; ++p) {
        Complex dot{};
        for (std::size_t i = 0; i < k; ++i) dot += std::conj(g(i, p)) * g(i, j);
        for (std::size_t i = 0; i < k; ++i) g(i, j) -= dot * g(i, p);
      }
    double n = 0.0;
    for (std::size_t i = 0; i < k; ++i) n += std::norm(g(i, j));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < k; ++i) g(i, j) /= n;
  }
  return g;
}

struct WeightedBasis {
  ComplexMatrix w;  // d x r, column i = sqrt(lambda_i) e_i
  std::size_t rank;
};

WeightedBasis weighted_eigenbasis(const DensityMatrix& rho) {
  const auto es = hermitian_eigensystem(rho.matrix());
  std::size_t r = 0;
  while (r < es.values.size() && es.values[r] > kRankCutoff) ++r;
  WeightedBasis out{ComplexMatrix(rho.dim(), r), r};
  for (std::size_t i = 0; i < r; ++i) {
    const double s = std::sqrt(es.values[i]);
    for (std::size_t j = 0; j < rho.dim(); ++j) out.w(j, i) = s * es.vectors(j, i);
  }
  return out;
}

// Row k of the result is y_k = sum_i mixer(k, i) w(:, i).
ComplexMatrix mix_rows(const ComplexMatrix& mixer, const ComplexMatrix& w) {
  ComplexMatrix y(mixer.rows(), w.rows());
  for (std::size_t k = 0; k < mixer.rows(); ++k)
    for (std::size_t i = 0; i < mixer.cols(); ++i) {
      const Complex m = mixer(k, i);
      if (m == Complex{}) continue;
      for (std::size_t j = 0; j < w.rows(); ++j) y(k, j) += m * w(j, i);
    }
  return y;
}

Decomposition decomposition_from_rows(const ComplexMatrix& y) {
  Decomposition out;
  for (std::size_t k = 0; k < y.rows(); ++k) {
    double p = 0.0;
    for (std::size_t j = 0; j < y.cols(); ++j) p += std::norm(y(k, j));
    if (p < kDropWeight) continue;
    const double s = std::sqrt(p);
    ComplexMatrix x(y.cols(), 1);
    for (std::size_t j = 0; j < y.cols(); ++j) x(j, 0) = y(k, j) / s;
    fix_gauge(x);
    out.members.push_back({p, std::move(x)});
  }
  return out;
}

struct Candidate {
  double cost = std::numeric_limits<double>::infinity();  // nats
  ComplexMatrix rows;
  bool converged = false;
};

}  // namespace

MaxCorrSpec::MaxCorrSpec(ComplexMatrix a_matrix) : a_(std::move(a_matrix)) {
  try {
    DensityMatrix check(a_);
  } catch (const Error& e) {
    throw ValidationError(std::string("MaxCorrSpec: invalid a-matrix: ") + e.what());
  }
}

MaxCorrSpec doubled(const MaxCorrSpec& spec) { return MaxCorrSpec(tensor(spec.a_matrix(), spec.a_matrix())); }

ComplexMatrix Decomposition::reconstruct() const {
  if (members.empty()) return {};
  const std::size_t d = members.front().vector.rows();
  ComplexMatrix m(d, d);
  for (const auto& mem : members) m += mem.weight * ComplexMatrix::outer(mem.vector);
  return m;
}

double Decomposition::total_weight() const {
  double t = 0.0;
  for (const auto& m : members) t += m.weight;
  return t;
}

double Decomposition::average_diag_entropy() const {
  double v = 0.0;
  for (const auto& m : members) v += m.weight * shannon_diag(m.vector);
  return v;
}

BipartiteState build_maxcorr(const MaxCorrSpec& spec) {
  const std::size_t d = spec.dim();
  ComplexMatrix m(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i * d + i, j * d + j) = spec.a_matrix()(i, j);
  return BipartiteState(d, d, DensityMatrix(std::move(m)));
}

DensityMatrix single_system_state(const MaxCorrSpec& spec) { return DensityMatrix(spec.a_matrix()); }

void fix_gauge(ComplexMatrix& column) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < column.rows(); ++i) {
    const double m = std::abs(column(i, 0));
    if (m > mag + 1e-12) {
      mag = m;
      best = i;
    }
  }
  if (mag <= 0.0) return;
  const Complex phase = std::conj(column(best, 0)) / mag;
  for (std::size_t i = 0; i < column.rows(); ++i) column(i, 0) *= phase;
  column(best, 0) = mag;
}

std::size_t numerical_rank(const DensityMatrix& rho) { return weighted_eigenbasis(rho).rank; }

Decomposition decomposition_from_isometry(const DensityMatrix& rho_prime, const ComplexMatrix& mixer) {
  const auto basis = weighted_eigenbasis(rho_prime);
  if (mixer.cols() != basis.rank)
    throw ValidationError("decomposition_from_isometry: mixer has " + std::to_string(mixer.cols()) +
                          " columns, rank is " + std::to_string(basis.rank));
  if (mixer.rows() < basis.rank) throw ValidationError("decomposition_from_isometry: fewer members than rank");
  const ComplexMatrix gram = mixer.adjoint() * mixer;
  if (max_abs_diff(gram, ComplexMatrix::identity(basis.rank)) > tol::kStructural)
    throw ValidationError("decomposition_from_isometry: mixer columns are not orthonormal");
  return decomposition_from_rows(mix_rows(mixer, basis.w));
}

EofResult reduced_eof(const MaxCorrSpec& spec, const OptimizerConfig& config) {
  if (config.restarts < 1) throw ValidationError("reduced_eof: restarts must be >= 1");
  const auto rho = single_system_state(spec);
  const auto basis = weighted_eigenbasis(rho);
  const std::size_t r = basis.rank;
  const std::size_t k = config.members > 0 ? config.members : r * r;
  if (k < r) throw ValidationError("reduced_eof: members (" + std::to_string(k) + ") below rank " + std::to_string(r));
  const double tol_nats = config.tol * std::log(2.0);

  // Candidate 0 starts from the eigen-ensemble; candidate i >= 1 from Haar restart i - 1.
  const std::size_t total = config.restarts + 1;
  std::vector<Candidate> results(total);

  const auto run_one = [&](std::size_t idx) {
    ComplexMatrix mixer;
    if (idx == 0) {
      mixer = ComplexMatrix(k, r);
      for (std::size_t i = 0; i < r; ++i) mixer(i, i) = 1.0;
    } else {
      std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(idx - 1)));
      mixer = random_isometry(k, r, rng);
    }
    EnsembleDescent descent(mix_rows(mixer, basis.w), tol_nats, config.max_sweeps);
    descent.run();
    results[idx] = Candidate{descent.total(), descent.rows(), descent.converged()};
  };

  parallel_for(total, config.threads, run_one);

  // Lowest cost wins; ties go to the lowest index so the result does not depend on scheduling.
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (results[i].cost < results[best].cost) best = i;

  Decomposition decomposition = decomposition_from_rows(results[best].rows);
  const double value = std::clamp(decomposition.average_diag_entropy(), 0.0, std::log2(static_cast<double>(spec.dim())));
  return EofResult{value, std::move(decomposition), config.restarts, results[best].converged};
}

AdditivityReport additivity_check(const MaxCorrSpec& spec, const OptimizerConfig& config) {
  if (spec.dim() * spec.dim() > 16)
    throw ValidationError("additivity_check: dim^2 = " + std::to_string(spec.dim() * spec.dim()) + " exceeds 16");
  const double e1 = reduced_eof(spec, config).value;
  const double e2 = reduced_eof(doubled(spec), config).value;
  const double gap = e2 - 2.0 * e1;
  return AdditivityReport{e1, e2, gap, gap >= -1e-6 && gap <= config.additivity_slack};
}

}  // namespace entrates::maxcorr
