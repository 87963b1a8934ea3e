#include "entrates/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "entrates/maxcorr.hpp"
#include "entrates/measures.hpp"
#include "entrates/rates.hpp"
#include "entrates/scans.hpp"

namespace entrates::selftest {

namespace {

struct Check {
  std::string name;
  std::function<std::string()> body;  // empty string on success, else the failure detail
};

maxcorr::MaxCorrSpec random_spec(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(d, d);
  for (auto& z : g.entries()) z = Complex{normal(rng), normal(rng)};
  ComplexMatrix a = g * g.adjoint();
  a *= 1.0 / a.trace().real();
  return maxcorr::MaxCorrSpec(a);
}

std::string closed_form_vs_wootters() {
  for (int i = 1; i < 200; ++i) {
    const measures::BellMixtureParam p(0.5 + 0.5 * i / 200.0);
    const double f = measures::f_bell_mixture(p);
    const double w = measures::wootters_eof_2x2(measures::bell_mixture_state(p)).eof;
    if (std::abs(f - w) > 1e-9) return "p=" + std::to_string(p.p());
    if (!(measures::d_bell_mixture(p) < f)) return "D >= F at p=" + std::to_string(p.p());
  }
  return {};
}

std::string reduced_eof_vs_wootters() {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 10; ++i) {
    const auto spec = random_spec(rng, 2);
    const double v = maxcorr::reduced_eof(spec).value;
    const double w = measures::wootters_eof_2x2(maxcorr::build_maxcorr(spec)).eof;
    if (std::abs(v - w) > 1e-5) return "spec " + std::to_string(i) + ": " + std::to_string(v) + " vs " + std::to_string(w);
  }
  return {};
}

std::string decomposition_reconstruction() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 50; ++i) {
    const auto spec = random_spec(rng, 2 + static_cast<std::size_t>(i % 3));
    const auto rho = maxcorr::single_system_state(spec);
    const std::size_t r = maxcorr::numerical_rank(rho);
    const std::size_t k = r + static_cast<std::size_t>(i % 4);
    ComplexMatrix g(k, r);
    for (auto& z : g.entries()) z = Complex{normal(rng), normal(rng)};
    // Gram-Schmidt on columns.
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t p = 0; p < j; ++p) {
        Complex dot{};
        for (std::size_t t = 0; t < k; ++t) dot += std::conj(g(t, p)) * g(t, j);
        for (std::size_t t = 0; t < k; ++t) g(t, j) -= dot * g(t, p);
      }
      double n = 0.0;
      for (std::size_t t = 0; t < k; ++t) n += std::norm(g(t, j));
      for (std::size_t t = 0; t < k; ++t) g(t, j) /= std::sqrt(n);
    }
    const auto dec = maxcorr::decomposition_from_isometry(rho, g);
    if (max_abs_diff(dec.reconstruct(), rho.matrix()) > 1e-8) return "isometry " + std::to_string(i);
  }
  return {};
}

std::string fig3_positive() {
  const auto grid = scans::fig3_scan({0.5, 1.0}, {0.01, 0.5}, 0.01);
  for (const auto& row : grid.rows) {
    const double q = *row[0];
    if (q > 0.5 + 1e-9 && q < 1.0 - 1e-9 && !(*row[4] > 0.0))
      return "q=" + std::to_string(q) + " a2=" + std::to_string(*row[1]);
  }
  return {};
}

std::string gerakol_region() {
  const measures::BellMixtureParam p(0.99), q(0.7);
  const auto w = rates::gerakol_witness(measures::d_bell_mixture(p), measures::f_bell_mixture(p),
                                        measures::d_bell_mixture(q), measures::f_bell_mixture(q));
  return w.holds ? std::string{} : "f(0.99, 0.7) <= 0";
}

}  // namespace

bool run(std::ostream& out) {
  const std::vector<Check> checks{
      {"closed-form-vs-wootters", closed_form_vs_wootters},
      {"reduced-eof-vs-wootters", reduced_eof_vs_wootters},
      {"decomposition-reconstruction", decomposition_reconstruction},
      {"fig3-positive", fig3_positive},
      {"gerakol-region", gerakol_region},
  };
  std::size_t failed = 0;
  for (const auto& c : checks) {
    std::string detail;
    try {
      detail = c.body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      out << "PASS " << c.name << "\n";
    } else {
      ++failed;
      out << "FAIL " << c.name << " (" << detail << ")\n";
    }
  }
  out << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
  return failed == 0;
}

}  // namespace entrates::selftest
